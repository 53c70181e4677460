//! Primes of `K` with their valuation, residue and lift maps.
//!
//! For a prime `P = (p, g(θ))` with `x⁴ − 5x² + 5 ≡ g^e·h (mod p)`, put
//! `τ = h(θ)·g(θ)^{e−1}`. Then `v_P(τ) = e − 1` and `v_Q(τ) ≥ e_Q` at the
//! other primes `Q | p`, so for `p`-integral `x`: `x ∈ P` iff `xτ/p` is
//! `p`-integral, and that step lowers `v_P` by exactly one. Integrality is
//! coordinate-wise because `Z[θ]` is maximal.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::finite::{Fq, ResidueField};
use super::{bigint_val, q, rational_mod, rational_val, Field, QuarticElt, Rational};
use crate::arith::{inv_mod, legendre, mul_mod, sqrt_mod};
use crate::{Error, Result};

/// Valuation of zero.
pub const VAL_INF: i64 = i64::MAX;

/// A discrete valuation on a field `F` with its residue field. This is all
/// Tate's algorithm needs.
pub trait Local<F: Field> {
    fn residue_field(&self) -> &ResidueField;
    fn valuation(&self, x: &F) -> i64;
    fn residue(&self, x: &F) -> Result<Fq>;
    fn lift(&self, r: &Fq) -> F;
    fn uniformizer(&self) -> F;
    fn name(&self) -> String;

    fn characteristic(&self) -> u64 {
        self.residue_field().characteristic()
    }

    /// `lift(residue(x))`, a representative with small coordinates.
    fn reduce(&self, x: &F) -> Result<F> {
        Ok(self.lift(&self.residue(x)?))
    }

    /// Lift of the residue of `1/x`.
    fn residue_inverse(&self, x: &F) -> Result<F> {
        let r = self.residue(x)?;
        let inv = self
            .residue_field()
            .inv(&r)
            .ok_or_else(|| Error::Precondition(format!("{x} is not a unit at {}", self.name())))?;
        Ok(self.lift(&inv))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeLabel {
    /// The prime above 2: `e = 2`, `f = 2`.
    P2,
    /// The prime above 5: `e = 4`, `f = 1`.
    P5,
    /// 3 is inert: `f = 4`, `q = 81`.
    P3,
    /// A degree-one prime `(p, θ − r)`.
    Split { p: u64, root: u64 },
    /// An inert prime other than 3.
    Inert(u64),
    /// A degree-two prime `(p, θ² − u)`.
    Quadratic { p: u64, u: u64 },
}

impl fmt::Display for PrimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeLabel::P2 => f.write_str("P2"),
            PrimeLabel::P5 => f.write_str("P5"),
            PrimeLabel::P3 => f.write_str("P3"),
            PrimeLabel::Split { p, root } => write!(f, "({p}, θ-{root})"),
            PrimeLabel::Inert(p) => write!(f, "({p})"),
            PrimeLabel::Quadratic { p, u } => write!(f, "({p}, θ²-{u})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PrimeLocalization {
    pub label: PrimeLabel,
    pub p: u64,
    pub e: u32,
    pub f: u32,
    field: ResidueField,
    tau: QuarticElt,
    uniformizer: QuarticElt,
}

impl PartialEq for PrimeLocalization {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label
    }
}

const MINPOLY: [i64; 5] = [5, 0, -5, 0, 1];

fn minpoly_mod(p: u64) -> Vec<u64> {
    MINPOLY.iter().map(|&c| (c as i128).rem_euclid(p as i128) as u64).collect()
}

/// Exact division of polynomials over `F_p` (low degree first).
fn poly_div_exact(num: &[u64], den: &[u64], p: u64) -> Vec<u64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let lead_inv = inv_mod(den[dd], p);
    let mut quo = vec![0u64; num.len() - dd];
    for k in (dd..num.len()).rev() {
        let c = mul_mod(r[k], lead_inv, p);
        quo[k - dd] = c;
        for j in 0..=dd {
            let t = mul_mod(c, den[j], p);
            r[k - dd + j] = (r[k - dd + j] + p - t) % p;
        }
    }
    debug_assert!(r.iter().all(|&c| c == 0), "division not exact");
    quo
}

fn quartic_from_poly(c: &[u64]) -> QuarticElt {
    let mut coeffs = [0i64; 4];
    for (i, &x) in c.iter().enumerate().take(4) {
        coeffs[i] = x as i64;
    }
    QuarticElt::from_ints(coeffs)
}

impl PrimeLocalization {
    fn build(label: PrimeLabel, p: u64, e: u32, g: Vec<u64>, uniformizer: QuarticElt) -> Self {
        let f = (g.len() - 1) as u32;
        let mut ge = vec![1u64];
        for _ in 0..e {
            ge = poly_mul_fp(&ge, &g, p);
        }
        let h = poly_div_exact(&minpoly_mod(p), &ge, p);
        let g_theta = quartic_from_poly(&g);
        let tau = quartic_from_poly(&h) * g_theta.pow(e - 1);
        PrimeLocalization { label, p, e, f, field: ResidueField::new(p, g), tau, uniformizer }
    }

    pub fn p2() -> Self {
        PrimeLocalization::build(PrimeLabel::P2, 2, 2, vec![1, 1, 1], p2_uniformizer())
    }

    pub fn p5() -> Self {
        PrimeLocalization::build(PrimeLabel::P5, 5, 4, vec![0, 1], QuarticElt::theta())
    }

    pub fn p3() -> Self {
        PrimeLocalization::build(PrimeLabel::P3, 3, 1, minpoly_mod(3), QuarticElt::from_i64(3))
    }

    /// All primes of `K` above the rational prime `p`.
    pub fn above(p: u64) -> Result<Vec<Self>> {
        if !crate::arith::is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        match p {
            2 => return Ok(vec![Self::p2()]),
            3 => return Ok(vec![Self::p3()]),
            5 => return Ok(vec![Self::p5()]),
            _ => {}
        }
        let pi = QuarticElt::from_i64(p as i64);
        if legendre(5, p) == -1 {
            return Ok(vec![Self::build(PrimeLabel::Inert(p), p, 1, minpoly_mod(p), pi)]);
        }
        let s = sqrt_mod(5, p).unwrap();
        let half = inv_mod(2, p);
        let up = mul_mod((5 + s) % p, half, p);
        let um = mul_mod((5 + p - s) % p, half, p);
        let mut out = Vec::new();
        if legendre(up as i128, p) == 1 {
            let mut roots = Vec::new();
            for u in [up, um] {
                let r = sqrt_mod(u, p).unwrap();
                roots.push(r);
                roots.push((p - r) % p);
            }
            roots.sort_unstable();
            for r in roots {
                let g = vec![(p - r) % p, 1];
                out.push(Self::build(PrimeLabel::Split { p, root: r }, p, 1, g, pi.clone()));
            }
        } else {
            let mut us = [up, um];
            us.sort_unstable();
            for u in us {
                let g = vec![(p - u) % p, 0, 1];
                out.push(Self::build(PrimeLabel::Quadratic { p, u }, p, 1, g, pi.clone()));
            }
        }
        Ok(out)
    }

    /// Residue field size `Nm(P) = p^f`.
    pub fn norm(&self) -> u128 {
        self.field.size()
    }

    pub fn tau(&self) -> &QuarticElt {
        &self.tau
    }

    pub fn is_p_integral(&self, z: &QuarticElt) -> bool {
        let p = BigInt::from(self.p);
        z.c.iter().all(|c| (c.denom() % &p).is_positive())
    }

    fn min_coordinate_val(&self, z: &QuarticElt) -> i64 {
        z.c.iter().map(|c| rational_val(c, self.p)).min().unwrap()
    }

    fn scale_by_p_power(&self, z: &QuarticElt, k: i64) -> QuarticElt {
        let pk = BigInt::from(self.p).pow(k.unsigned_abs() as u32);
        let factor = if k >= 0 { Rational::from_integer(pk) } else { Rational::new(BigInt::one(), pk) };
        z.scale(&factor)
    }

    fn residue_integral(&self, z: &QuarticElt) -> Fq {
        let coeffs: Vec<u64> = z.c.iter().map(|c| rational_mod(c, self.p).unwrap()).collect();
        self.field.from_coeffs(&coeffs)
    }

    /// `v_P(p)`; the valuation of a rational `r` is `e·v_p(r)`.
    pub fn e(&self) -> u32 {
        self.e
    }
}

impl Local<QuarticElt> for PrimeLocalization {
    fn residue_field(&self) -> &ResidueField {
        &self.field
    }

    fn valuation(&self, z: &QuarticElt) -> i64 {
        if z.is_zero() {
            return VAL_INF;
        }
        if let Some(r) = z.as_rational() {
            return self.e as i64 * rational_val(r, self.p);
        }
        let m = self.min_coordinate_val(z);
        let mut y = self.scale_by_p_power(z, -m);
        let inv_p = super::qf(1, self.p as i64);
        let mut v = 0;
        loop {
            let w = (y.clone() * &self.tau).scale(&inv_p);
            if !self.is_p_integral(&w) {
                break;
            }
            y = w;
            v += 1;
        }
        m * self.e as i64 + v
    }

    fn residue(&self, z: &QuarticElt) -> Result<Fq> {
        if self.is_p_integral(z) {
            return Ok(self.residue_integral(z));
        }
        if self.valuation(z) < 0 {
            return Err(Error::NotIntegral(self.label.to_string_lossy()));
        }
        // only possible when several primes lie above p, hence e = 1
        let k = -self.min_coordinate_val(z);
        let y = self.scale_by_p_power(z, k);
        let w = self.scale_by_p_power(&(y * self.tau.pow(k as u32)), -k);
        debug_assert!(self.is_p_integral(&w));
        let t = self.field.pow(&self.residue_integral(&self.tau), k as u128);
        Ok(self.field.div(&self.residue_integral(&w), &t).unwrap())
    }

    fn lift(&self, r: &Fq) -> QuarticElt {
        quartic_from_poly(&r[..self.field.degree()])
    }

    fn uniformizer(&self) -> QuarticElt {
        self.uniformizer.clone()
    }

    fn name(&self) -> String {
        format!("{}", self.label)
    }
}

impl PrimeLabel {
    fn to_string_lossy(self) -> String {
        format!("{self}")
    }
}

fn poly_mul_fp(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    out
}

/// Smallest-height element of `Z[θ]` with `|Nm| = 4`, hence a generator of
/// `P2` whose inverse has only 2 in its denominators.
pub fn p2_uniformizer() -> QuarticElt {
    let mut best: Option<(i64, [i64; 4])> = None;
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            for c in -2i64..=2 {
                for d in -2i64..=2 {
                    let coeffs = [a, b, c, d];
                    let height: i64 = coeffs.iter().map(|x| x.abs()).sum();
                    if best.is_some_and(|(h, _)| h <= height) {
                        continue;
                    }
                    let n = QuarticElt::from_ints(coeffs).norm();
                    if n.abs() == q(4) {
                        best = Some((height, coeffs));
                    }
                }
            }
        }
    }
    QuarticElt::from_ints(best.expect("an element of norm ±4 exists").1)
}

/// `Q` with the `p`-adic valuation; used to test Tate's algorithm against
/// curves with known reduction data.
#[derive(Clone, Debug)]
pub struct RationalPrime {
    p: u64,
    field: ResidueField,
}

impl RationalPrime {
    pub fn new(p: u64) -> Self {
        RationalPrime { p, field: ResidueField::prime(p) }
    }
}

impl Local<Rational> for RationalPrime {
    fn residue_field(&self) -> &ResidueField {
        &self.field
    }

    fn valuation(&self, x: &Rational) -> i64 {
        rational_val(x, self.p)
    }

    fn residue(&self, x: &Rational) -> Result<Fq> {
        rational_mod(x, self.p)
            .map(|r| self.field.from_u64(r))
            .ok_or_else(|| Error::NotIntegral(format!("{}", self.p)))
    }

    fn lift(&self, r: &Fq) -> Rational {
        q(r[0] as i64)
    }

    fn uniformizer(&self) -> Rational {
        q(self.p as i64)
    }

    fn name(&self) -> String {
        format!("{}", self.p)
    }
}

/// `v_p` of the norm, for checking `Σ_{P|p} f_P·v_P(z) = v_p(Nm z)`.
pub fn norm_valuation(z: &QuarticElt, p: u64) -> i64 {
    let n = z.norm();
    bigint_val(n.numer(), p) - bigint_val(n.denom(), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::strategies::*;
    use proptest::prelude::*;

    #[test]
    fn ramified_primes() {
        let p2 = PrimeLocalization::p2();
        let p5 = PrimeLocalization::p5();
        let p3 = PrimeLocalization::p3();
        assert_eq!((p2.e, p2.f, p2.norm()), (2, 2, 4));
        assert_eq!((p5.e, p5.f, p5.norm()), (4, 1, 5));
        assert_eq!((p3.e, p3.f, p3.norm()), (1, 4, 81));
        assert_eq!(p2.valuation(&QuarticElt::from_i64(2)), 2);
        assert_eq!(p5.valuation(&QuarticElt::theta()), 1);
        assert_eq!(p5.valuation(&QuarticElt::sqrt5()), 2);
        assert_eq!(p2.valuation(&p2.uniformizer()), 1);
        assert_eq!(p2.uniformizer().norm().abs(), q(4));
        let gamma = QuarticElt::from_ints([-5, -1, 2, 0]);
        assert_eq!(p3.valuation(&gamma), 0);
        assert_eq!(p3.residue(&QuarticElt::from_i64(5)).unwrap(), p3.residue_field().from_u64(2));
        assert_eq!(p5.residue(&QuarticElt::theta()).unwrap(), [0; 4]);
        assert_eq!(p2.valuation(&QuarticElt::zero()), VAL_INF);
    }

    #[test]
    fn splitting_types() {
        // 11: 5 is a square, (5±4)/2 = 2, 7 are non-squares mod 11: two quadratic primes
        let above11 = PrimeLocalization::above(11).unwrap();
        assert_eq!(above11.len(), 2);
        assert!(above11.iter().all(|p| p.f == 2));
        // 41 splits completely (41 ≡ 1 mod 20)
        assert_eq!(PrimeLocalization::above(41).unwrap().len(), 4);
        // 7 is inert
        assert_eq!(PrimeLocalization::above(7).unwrap()[0].f, 4);
        for p in crate::arith::primes_up_to(200) {
            let ps = PrimeLocalization::above(p).unwrap();
            let total: u32 = ps.iter().map(|pp| pp.e * pp.f).sum();
            assert_eq!(total, 4, "p = {p}");
        }
    }

    proptest! {
        #[test]
        fn norm_valuation_formula(z in quartic()) {
            prop_assume!(!z.is_zero());
            for p in [2u64, 3, 5, 11, 29, 31, 41] {
                let ps = PrimeLocalization::above(p).unwrap();
                let sum: i64 = ps.iter().map(|pp| pp.f as i64 * pp.valuation(&z)).sum();
                prop_assert_eq!(sum, norm_valuation(&z, p));
            }
        }

        #[test]
        fn valuation_axioms(a in quartic(), b in quartic()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            for pp in [PrimeLocalization::p2(), PrimeLocalization::p5()].into_iter()
                .chain(PrimeLocalization::above(41).unwrap()) {
                let (va, vb) = (pp.valuation(&a), pp.valuation(&b));
                prop_assert_eq!(pp.valuation(&(a.clone() * &b)), va + vb);
                let s = a.clone() + &b;
                if !s.is_zero() {
                    prop_assert!(pp.valuation(&s) >= va.min(vb));
                }
            }
        }

        #[test]
        fn residue_is_a_ring_map(a in integral_quartic(), b in integral_quartic()) {
            for pp in [PrimeLocalization::p2(), PrimeLocalization::p3(), PrimeLocalization::p5()].into_iter()
                .chain(PrimeLocalization::above(11).unwrap())
                .chain(PrimeLocalization::above(41).unwrap()) {
                let k = pp.residue_field().clone();
                let (ra, rb) = (pp.residue(&a).unwrap(), pp.residue(&b).unwrap());
                prop_assert_eq!(pp.residue(&(a.clone() + &b)).unwrap(), k.add(&ra, &rb));
                prop_assert_eq!(pp.residue(&(a.clone() * &b)).unwrap(), k.mul(&ra, &rb));
                prop_assert_eq!(pp.residue(&pp.lift(&ra)).unwrap(), ra);
                prop_assert_eq!(pp.valuation(&a) > 0, k.is_zero(&ra));
            }
        }

        #[test]
        fn residue_of_non_p_integral_units(a in integral_quartic(), b in integral_quartic()) {
            // a/b with b ∉ P but b possibly in other primes above 41
            for pp in PrimeLocalization::above(41).unwrap() {
                prop_assume!(!b.is_zero());
                if pp.valuation(&b) != 0 { continue; }
                let x = a.clone() * b.inv().unwrap();
                let k = pp.residue_field().clone();
                let expect = k.div(&pp.residue(&a).unwrap(), &pp.residue(&b).unwrap()).unwrap();
                prop_assert_eq!(pp.residue(&x).unwrap(), expect);
            }
        }
    }
}
