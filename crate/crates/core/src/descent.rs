//! The quintic form `φ`, its factorization over `Q(√5)`, the elementary
//! divisibility lemmas, and classification and search of putative solutions.

use alloc::format;
use alloc::vec::Vec;

use num_integer::Roots;

use crate::arith::{self, gcd, primes_up_to, Factorization};
use crate::check::{Check, Claim};
use crate::fields::{Field, QuadElt, ResidueField};
use crate::{Error, Result};

/// Default bound for trial division of `φ(a,b)`.
pub const DEFAULT_TRIAL_BOUND: u64 = 100_000;

/// `φ(a,b) = a⁴ − a³b + a²b² − ab³ + b⁴ = (a⁵ + b⁵)/(a + b)`.
pub fn phi(a: i64, b: i64) -> i128 {
    let (a, b) = (a as i128, b as i128);
    let (a2, b2) = (a * a, b * b);
    a2 * a2 - a2 * a * b + a2 * b2 - a * b * b2 + b2 * b2
}

/// `(φ₁(a,b), φ₂(a,b))` with `φ₁ = a² + ωab + b²` and `φ₂ = a² + ω̄ab + b²`.
pub fn phi12(a: i64, b: i64) -> (QuadElt, QuadElt) {
    let (a2b2, ab) = (QuadElt::from_i64(a * a + b * b), QuadElt::from_i64(a * b));
    (a2b2.clone() + QuadElt::omega() * &ab, a2b2 + QuadElt::omega_bar() * &ab)
}

/// Checks `φ = φ₁φ₂` and `(a+b)² = −ω̄φ₁ − ωφ₂` on the box `|a|, |b| ≤ h`.
pub fn verify_phi_identities(h: i64) -> Vec<Check> {
    let (w, wb) = (QuadElt::omega(), QuadElt::omega_bar());
    let mut pairs = 0usize;
    let mut bad_product = None;
    let mut bad_square = None;
    for a in -h..=h {
        for b in -h..=h {
            pairs += 1;
            let (p1, p2) = phi12(a, b);
            if bad_product.is_none() && p1.clone() * &p2 != QuadElt::from_rational(crate::fields::qi(&phi(a, b).into())) {
                bad_product = Some((a, b));
            }
            let lhs = QuadElt::from_i64((a + b) * (a + b));
            if bad_square.is_none() && lhs != -(wb.clone() * &p1) - w.clone() * &p2 {
                bad_square = Some((a, b));
            }
        }
    }
    let report = |claim, bad: Option<(i64, i64)>| match bad {
        None => Check::pass(claim, format!("{pairs} pairs with |a|, |b| ≤ {h}")),
        Some((a, b)) => Check::fail(claim, format!("identity fails at (a, b) = ({a}, {b})")),
    };
    alloc::vec![report(Claim::PhiFactorization, bad_product), report(Claim::SumSquare, bad_square)]
}

fn phi_mod(a: u64, b: u64, l: u64) -> u64 {
    let (a2, b2, ab) = (a * a % l, b * b % l, a * b % l);
    (a2 * a2 + l * l - a2 * ab % l + a2 * b2 + l * l - ab * b2 % l + b2 * b2) % l
}

/// Pairs `(a, b)` of residues mod `l`, not both zero, with `l | φ(a, b)`.
pub fn phi_zero_pairs(l: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for a in 0..l {
        for b in 0..l {
            if (a, b) != (0, 0) && phi_mod(a, b, l) == 0 {
                out.push((a, b));
            }
        }
    }
    out
}

/// Residue fields of the primes of `Z[ω]` above `l ≠ 5`, each with the image
/// of `ω`.
fn primes_of_zomega(l: u64) -> Vec<(ResidueField, [u64; 4])> {
    if l != 2 && arith::legendre(5, l) == 1 {
        let s = arith::sqrt_mod(5, l).unwrap();
        let half = arith::inv_mod(2, l);
        [s, l - s]
            .into_iter()
            .map(|r| {
                let w = arith::mul_mod((r + l - 1) % l, half, l);
                (ResidueField::prime(l), [w, 0, 0, 0])
            })
            .collect()
    } else {
        // x² + x − 1 is irreducible and ω is the class of x
        let k = ResidueField::new(l, alloc::vec![l - 1, 1, 1]);
        let w = k.generator();
        alloc::vec![(k, w)]
    }
}

/// Exhaustive residue scan of the divisibility lemmas for all primes
/// `l ≤ l_max`.
pub fn lemma_scan(l_max: u64) -> Result<Vec<Check>> {
    if l_max < 7 {
        return Err(Error::Precondition(format!("l_max = {l_max} must be at least 7")));
    }
    let mut coprime_bad = None;
    let mut sum_bad = None;
    let mut primes_bad = None;
    let mut phi12_bad = None;
    let mut pairs = 0u64;
    for l in primes_up_to(l_max) {
        let zomega = if l == 5 { Vec::new() } else { primes_of_zomega(l) };
        for a in 0..l {
            for b in 0..l {
                if (a, b) == (0, 0) {
                    continue;
                }
                pairs += 1;
                let sum0 = (a + b) % l == 0;
                let f = phi_mod(a, b, l);
                if sum0 && f == 0 && l != 5 && coprime_bad.is_none() {
                    coprime_bad = Some((l, a, b));
                }
                let fifth = (arith::pow_mod(a, 5, l) + arith::pow_mod(b, 5, l)) % l;
                if l % 5 != 1 && fifth == 0 && !sum0 && sum_bad.is_none() {
                    sum_bad = Some((l, a, b));
                }
                if f == 0 && l != 5 && l % 5 != 1 && primes_bad.is_none() {
                    primes_bad = Some((l, a, b));
                }
                for (k, w) in &zomega {
                    let wb = k.sub(&k.neg(&k.one()), w);
                    let (ea, eb) = (k.from_u64(a), k.from_u64(b));
                    let base = k.add(&k.mul(&ea, &ea), &k.mul(&eb, &eb));
                    let ab = k.mul(&ea, &eb);
                    let p1 = k.add(&base, &k.mul(w, &ab));
                    let p2 = k.add(&base, &k.mul(&wb, &ab));
                    if k.is_zero(&p1) && k.is_zero(&p2) && phi12_bad.is_none() {
                        phi12_bad = Some((l, a, b));
                    }
                }
            }
        }
    }
    // υ₅(φ) = 1 whenever 5 | a + b, checked modulo 25
    let mut nu5_bad = None;
    for a in 0..25i64 {
        for b in 0..25i64 {
            if a % 5 == 0 || (a + b) % 5 != 0 {
                continue;
            }
            let f = phi(a, b).rem_euclid(25);
            if f % 5 != 0 || f == 0 {
                nu5_bad.get_or_insert((a, b));
            }
        }
    }
    let summary = format!("{pairs} residue pairs over primes l ≤ {l_max}");
    let verdict = |claim, bad: Option<(u64, u64, u64)>| match bad {
        None => Check::pass(claim, summary.clone()),
        Some((l, a, b)) => Check::fail(claim, format!("counterexample l = {l}, (a, b) ≡ ({a}, {b})")),
    };
    let mut out = alloc::vec![verdict(Claim::CoprimeOutside5, coprime_bad)];
    out.push(match nu5_bad {
        None => Check::pass(Claim::CoprimeOutside5, "υ₅(φ(a,b)) = 1 for all a ≡ −b mod 5, 5 ∤ a (mod 25 scan)"),
        Some((a, b)) => Check::fail(Claim::CoprimeOutside5, format!("υ₅(φ) ≠ 1 at ({a}, {b}) mod 25")),
    });
    out.push(verdict(Claim::LDividesSum, sum_bad));
    out.push(verdict(Claim::PhiPrimes, primes_bad));
    out.push(verdict(Claim::Phi12Coprime, phi12_bad));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EquationTag {
    /// `φ(a,b) = c^p`, `5 ∤ a + b`.
    Eq4,
    /// `φ(a,b) = 5c^p`, `5 | a + b`.
    Eq5,
}

/// A valuation that is infinite at zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Nu {
    Finite(u32),
    Infinite,
}

impl Nu {
    pub fn of(n: i128, p: u64) -> Nu {
        arith::val_p(n, p).map_or(Nu::Infinite, Nu::Finite)
    }

    pub fn at_least(self, k: u32) -> bool {
        match self {
            Nu::Finite(v) => v >= k,
            Nu::Infinite => true,
        }
    }
}

impl core::fmt::Display for Nu {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Nu::Finite(v) => write!(f, "{v}"),
            Nu::Infinite => f.write_str("∞"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionCase {
    pub a: i64,
    pub b: i64,
    pub d: u32,
    pub p: u64,
    pub equation_tag: EquationTag,
    pub nu2: Nu,
    pub nu5: Nu,
    pub phi: i128,
    /// Trial factorization of `φ(a,b)/5^{υ₅(φ)}`.
    pub cofactor: Factorization,
    /// `rad(c)`: product of the primes of the cofactor (the tail counts as
    /// one prime even when unverified).
    pub c0_radical: u128,
    /// Whether the cofactor is a perfect `p`-th power.
    pub is_pth_power: bool,
}

/// Local data of a pair, whether or not it is an actual solution.
pub fn classify_solution(a: i64, b: i64, d: u32, p: u64) -> Result<SolutionCase> {
    classify_with_bound(a, b, d, p, DEFAULT_TRIAL_BOUND)
}

/// As [`classify_solution`], but rejects pairs whose cofactor is not a
/// `p`-th power.
pub fn classify_solution_strict(a: i64, b: i64, d: u32, p: u64) -> Result<SolutionCase> {
    let case = classify_solution(a, b, d, p)?;
    if !case.is_pth_power {
        return Err(Error::Precondition(format!(
            "φ({a}, {b}) = {} is not c^{p} or 5c^{p}",
            case.phi
        )));
    }
    Ok(case)
}

pub fn classify_with_bound(a: i64, b: i64, d: u32, p: u64, bound: u64) -> Result<SolutionCase> {
    if gcd(a as i128, b as i128) != 1 {
        return Err(Error::NotCoprime { a, b });
    }
    if d != 2 && d != 3 {
        return Err(Error::Unsupported(format!("d = {d}")));
    }
    let sum = a as i128 + b as i128;
    if sum % d as i128 != 0 {
        return Err(Error::DegreeNotDividing { d: d as i64, sum: sum as i64 });
    }
    let f = phi(a, b);
    let equation_tag = if sum % 5 == 0 { EquationTag::Eq5 } else { EquationTag::Eq4 };
    let mut cof = f;
    while cof % 5 == 0 {
        cof /= 5;
    }
    let cofactor = arith::trial_factor(cof as u128, bound);
    let c0_radical = cofactor.radical_known() * cofactor.tail.max(1);
    let is_pth_power = cofactor.factors.iter().all(|&(_, e)| e as u64 % p == 0)
        && (cofactor.tail == 1 || {
            let r = cofactor.tail.nth_root(p as u32);
            r.checked_pow(p as u32) == Some(cofactor.tail)
        });
    Ok(SolutionCase {
        a,
        b,
        d,
        p,
        equation_tag,
        nu2: Nu::of(sum, 2),
        nu5: Nu::of(sum, 5),
        phi: f,
        cofactor,
        c0_radical,
        is_pth_power,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchHit {
    pub a: i64,
    pub b: i64,
    pub z: i128,
    /// `|z| = 1`.
    pub trivial: bool,
}

/// All coprime `|a|, |b| ≤ h` with `a⁵ + b⁵ = d·z^p`, `z ≠ 0`, in
/// lexicographic order.
///
/// Only `a + b ≡ 0 mod d` is scanned: for `d = 2, 3`, `d | a⁵ + b⁵` forces it.
/// `z = 0` means `a = −b`, which is excluded as degenerate.
pub fn search_solutions(d: u32, p: u64, h: i64) -> Result<Vec<SearchHit>> {
    if !arith::is_prime(p) {
        return Err(Error::Precondition(format!("p = {p} is not prime")));
    }
    if d != 2 && d != 3 {
        return Err(Error::Unsupported(format!("d = {d}")));
    }
    let d = d as i64;
    let mut hits = Vec::new();
    for a in -h..=h {
        // least b ≥ −h with b ≡ −a (mod d)
        let mut b = -h + (h - a).rem_euclid(d);
        while b <= h {
            debug_assert_eq!((a + b).rem_euclid(d), 0);
            if a + b != 0 && gcd(a as i128, b as i128) == 1 {
                let s = (a as i128).pow(5) + (b as i128).pow(5);
                let m = s / d as i128;
                if let Some(z) = exact_root(m, p as u32) {
                    hits.push(SearchHit { a, b, z, trivial: z.abs() == 1 });
                }
            }
            b += d;
        }
    }
    Ok(hits)
}

/// `z` with `z^k = m` for odd `k`, if any.
fn exact_root(m: i128, k: u32) -> Option<i128> {
    let r = m.unsigned_abs().nth_root(k);
    (r.checked_pow(k) == Some(m.unsigned_abs())).then(|| if m < 0 { -(r as i128) } else { r as i128 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn phi_values() {
        assert_eq!(phi(1, 1), 1);
        assert_eq!(phi(1, -1), 5);
        assert_eq!(phi(2, 1), 11);
        assert_eq!(phi(3, 5), 421);
        for a in -20..=20 {
            for b in -20..=20 {
                assert_eq!(phi(a, b), phi(b, a));
                if (a, b) != (0, 0) {
                    assert!(phi(a, b) > 0);
                }
                if a + b != 0 {
                    assert_eq!(phi(a, b) * (a + b) as i128, (a as i128).pow(5) + (b as i128).pow(5));
                }
            }
        }
    }

    #[test]
    fn phi12_values() {
        let (p1, p2) = phi12(1, 1);
        assert_eq!(p1, QuadElt::new(crate::fields::qf(3, 2), crate::fields::qf(1, 2)));
        assert_eq!(p2, p1.conj());
        assert_eq!(p1 * p2, QuadElt::from_i64(1));
        assert_eq!(phi12(1, 0), (QuadElt::one(), QuadElt::one()));
        let (p1, p2) = phi12(1, -1);
        let two = QuadElt::from_i64(2);
        assert_eq!(p1, two.clone() - QuadElt::omega());
        assert_eq!(p2, two - QuadElt::omega_bar());
        assert_eq!(p1 * p2, QuadElt::from_i64(5));
    }

    #[test]
    fn identities_small_box() {
        let checks = verify_phi_identities(1);
        assert!(checks.iter().all(|c| c.passed()));
        assert!(checks[0].details.starts_with("9 pairs"));
        let checks = verify_phi_identities(50);
        assert!(checks.iter().all(|c| c.passed()));
        assert!(checks[0].details.starts_with("10201 pairs"));
    }

    #[test]
    fn residue_facts() {
        assert!(phi_zero_pairs(11).contains(&(2, 1)));
        assert!(phi_zero_pairs(7).is_empty());
        assert!(phi_zero_pairs(3).is_empty());
        assert_eq!(phi(1, -1).rem_euclid(25), 5);
    }

    #[test]
    fn lemma_scan_small() {
        let checks = lemma_scan(200).unwrap();
        assert_eq!(checks.len(), 5);
        assert!(checks.iter().all(|c| c.passed()), "{checks:?}");
        assert!(lemma_scan(5).is_err());
    }

    #[test]
    fn classification() {
        let c = classify_solution(1, 1, 2, 17).unwrap();
        assert_eq!((c.equation_tag, c.nu2, c.c0_radical), (EquationTag::Eq4, Nu::Finite(1), 1));
        let c = classify_solution(1, -1, 3, 17).unwrap();
        assert_eq!((c.equation_tag, c.nu2, c.c0_radical), (EquationTag::Eq5, Nu::Infinite, 1));
        assert!(c.is_pth_power);
        let c = classify_solution(1, 2, 3, 17).unwrap();
        assert_eq!((c.equation_tag, c.nu2, c.c0_radical), (EquationTag::Eq4, Nu::Finite(0), 11));
        assert!(!c.is_pth_power);
        assert!(classify_solution_strict(1, 2, 3, 17).is_err());
        let c = classify_solution(3, 5, 2, 17).unwrap();
        assert_eq!((c.nu2, c.c0_radical), (Nu::Finite(3), 421));
        assert_eq!(classify_solution(2, 4, 2, 17), Err(Error::NotCoprime { a: 2, b: 4 }));
        assert!(matches!(classify_solution(1, 2, 2, 17), Err(Error::DegreeNotDividing { .. })));
        // prime factors of c₀ are 1 mod 5
        for a in 1..60 {
            for b in -60..60 {
                if let Ok(c) = classify_solution(a, b, 2, 17) {
                    assert!(c.cofactor.primes().iter().all(|&q| q % 5 == 1), "({a}, {b})");
                    let s = classify_solution(b, a, 2, 17).unwrap();
                    assert_eq!((s.equation_tag, s.nu2, s.nu5, s.c0_radical), (c.equation_tag, c.nu2, c.nu5, c.c0_radical));
                }
            }
        }
    }

    #[test]
    fn search() {
        let hits = search_solutions(2, 5, 1).unwrap();
        assert_eq!(hits, vec![
            SearchHit { a: -1, b: -1, z: -1, trivial: true },
            SearchHit { a: 1, b: 1, z: 1, trivial: true },
        ]);
        let hits = search_solutions(2, 17, 100).unwrap();
        assert!(hits.iter().all(|h| h.trivial));
        assert_eq!(hits.len(), 2);
        assert!(search_solutions(3, 17, 10).unwrap().is_empty());
        assert!(search_solutions(3, 7, 10).unwrap().is_empty());
    }
}
