//! Residue fields `F_q = F_p[x]/(g)` with `deg g ≤ 4`.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{inv_mod, mul_mod};

/// An element of a [`ResidueField`]: coefficients of `1, x, x², x³`. Only
/// the first `degree` entries are used.
pub type Fq = [u64; 4];

/// Polynomial over a residue field, low degree first, no trailing zeros.
pub type FqPoly = Vec<Fq>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueField {
    p: u64,
    /// Monic modulus `g`, low degree first; `len = degree + 1`.
    modulus: Vec<u64>,
}

impl ResidueField {
    /// `F_p[x]/(g)`; `g` must be monic and irreducible mod `p`.
    pub fn new(p: u64, modulus: Vec<u64>) -> Self {
        let f = modulus.len() - 1;
        assert!((1..=4).contains(&f) && modulus[f] == 1, "modulus must be monic of degree 1..=4");
        ResidueField { p, modulus: modulus.into_iter().map(|c| c % p).collect() }
    }

    /// The prime field, presented as `F_p[x]/(x)`.
    pub fn prime(p: u64) -> Self {
        ResidueField::new(p, vec![0, 1])
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn size(&self) -> u128 {
        (self.p as u128).pow(self.degree() as u32)
    }

    pub fn zero(&self) -> Fq {
        [0; 4]
    }

    pub fn one(&self) -> Fq {
        self.from_u64(1)
    }

    pub fn from_u64(&self, n: u64) -> Fq {
        [n % self.p, 0, 0, 0]
    }

    pub fn from_i128(&self, n: i128) -> Fq {
        self.from_u64(n.rem_euclid(self.p as i128) as u64)
    }

    /// Reduces an arbitrary coefficient list modulo `p` and `g`.
    pub fn from_coeffs(&self, c: &[u64]) -> Fq {
        let mut v: Vec<u64> = c.iter().map(|&x| x % self.p).collect();
        self.reduce(&mut v)
    }

    /// The class of `x`.
    pub fn generator(&self) -> Fq {
        self.from_coeffs(&[0, 1])
    }

    fn reduce(&self, v: &mut Vec<u64>) -> Fq {
        let f = self.degree();
        let p = self.p;
        for k in (f..v.len()).rev() {
            let c = v[k];
            if c == 0 {
                continue;
            }
            for j in 0..=f {
                let t = mul_mod(c, self.modulus[j], p);
                v[k - f + j] = (v[k - f + j] + p - t) % p;
            }
        }
        let mut out = [0; 4];
        for (i, slot) in out.iter_mut().enumerate().take(f.min(v.len())) {
            *slot = v[i];
        }
        out
    }

    pub fn is_zero(&self, a: &Fq) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &Fq, b: &Fq) -> Fq {
        core::array::from_fn(|i| (a[i] + b[i]) % self.p)
    }

    pub fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        core::array::from_fn(|i| (a[i] + self.p - b[i]) % self.p)
    }

    pub fn neg(&self, a: &Fq) -> Fq {
        core::array::from_fn(|i| (self.p - a[i]) % self.p)
    }

    pub fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        let f = self.degree();
        let mut prod = vec![0u64; 2 * f - 1];
        for i in 0..f {
            if a[i] == 0 {
                continue;
            }
            for j in 0..f {
                prod[i + j] = (prod[i + j] + mul_mod(a[i], b[j], self.p)) % self.p;
            }
        }
        self.reduce(&mut prod)
    }

    pub fn scale(&self, a: &Fq, k: u64) -> Fq {
        core::array::from_fn(|i| mul_mod(a[i], k % self.p, self.p))
    }

    pub fn pow(&self, a: &Fq, mut e: u128) -> Fq {
        let mut acc = self.one();
        let mut base = *a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &Fq) -> Option<Fq> {
        if self.is_zero(a) {
            return None;
        }
        if self.degree() == 1 {
            return Some(self.from_u64(inv_mod(a[0], self.p)));
        }
        Some(self.pow(a, self.size() - 2))
    }

    pub fn div(&self, a: &Fq, b: &Fq) -> Option<Fq> {
        Some(self.mul(a, &self.inv(b)?))
    }

    pub fn frobenius(&self, a: &Fq) -> Fq {
        self.pow(a, self.p as u128)
    }

    /// Absolute trace to `F_p`.
    pub fn trace(&self, a: &Fq) -> u64 {
        let mut acc = self.zero();
        let mut cur = *a;
        for _ in 0..self.degree() {
            acc = self.add(&acc, &cur);
            cur = self.frobenius(&cur);
        }
        debug_assert!(acc[1..].iter().all(|&c| c == 0));
        acc[0]
    }

    pub fn is_square(&self, a: &Fq) -> bool {
        if self.p == 2 || self.is_zero(a) {
            return true;
        }
        self.pow(a, (self.size() - 1) / 2) == self.one()
    }

    /// `a^{1/p}`, the inverse of Frobenius.
    pub fn pth_root(&self, a: &Fq) -> Fq {
        self.pow(a, self.size() / self.p as u128)
    }

    /// Some square root of `a`, if one exists.
    pub fn sqrt(&self, a: &Fq) -> Option<Fq> {
        if self.p == 2 {
            return Some(self.pth_root(a));
        }
        if self.is_zero(a) {
            return Some(*a);
        }
        if !self.is_square(a) {
            return None;
        }
        // Tonelli-Shanks over F_q
        let q1 = self.size() - 1;
        let s = q1.trailing_zeros();
        let t = q1 >> s;
        let z = (2..self.size()).map(|n| self.element(n)).find(|z| !self.is_square(z))?;
        let mut m = s;
        let mut c = self.pow(&z, t);
        let mut tt = self.pow(a, t);
        let mut r = self.pow(a, t.div_ceil(2));
        let one = self.one();
        while tt != one {
            let mut i = 0;
            let mut t2 = tt;
            while t2 != one {
                t2 = self.mul(&t2, &t2);
                i += 1;
            }
            let b = self.pow(&c, 1u128 << (m - i - 1));
            m = i;
            c = self.mul(&b, &b);
            tt = self.mul(&tt, &c);
            r = self.mul(&r, &b);
        }
        Some(r)
    }

    /// Some cube root of `a`, if one exists.
    pub fn cbrt(&self, a: &Fq) -> Option<Fq> {
        if self.p == 3 {
            return Some(self.pth_root(a));
        }
        if self.is_zero(a) {
            return Some(*a);
        }
        let q1 = self.size() - 1;
        if q1 % 3 != 0 {
            // cubing is a bijection; invert the exponent 3 mod q - 1
            let e = (1..3u128).map(|k| k * q1 + 1).find(|n| n % 3 == 0).unwrap() / 3;
            return Some(self.pow(a, e));
        }
        (0..self.size()).map(|n| self.element(n)).find(|x| self.mul(&self.mul(x, x), x) == *a)
    }

    /// The `n`-th element in base-`p` digit order; `n < size()`.
    pub fn element(&self, mut n: u128) -> Fq {
        let mut out = [0; 4];
        for slot in out.iter_mut().take(self.degree()) {
            *slot = (n % self.p as u128) as u64;
            n /= self.p as u128;
        }
        out
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> + '_ {
        (0..self.size()).map(move |n| self.element(n))
    }

    /// Whether `a y² + b y + c` has a root.
    pub fn quadratic_has_root(&self, a: &Fq, b: &Fq, c: &Fq) -> bool {
        if self.is_zero(a) {
            return !self.is_zero(b) || self.is_zero(c);
        }
        if self.p == 2 {
            if self.is_zero(b) {
                return true;
            }
            // y = (b/a) z turns it into z² + z = ac/b²
            let w = self.div(&self.mul(a, c), &self.mul(b, b)).unwrap();
            return self.trace(&w) == 0;
        }
        let d = self.sub(&self.mul(b, b), &self.scale(&self.mul(a, c), 4));
        self.is_square(&d)
    }

    /// Number of distinct roots of the monic cubic `T³ + bT² + cT + d`.
    pub fn cubic_root_count(&self, b: &Fq, c: &Fq, d: &Fq) -> usize {
        let poly: FqPoly = vec![*d, *c, *b, self.one()];
        let xq = self.poly_powmod_x(self.size(), &poly);
        let mut h = xq;
        // x^q − x
        if h.len() < 2 {
            h.resize(2, self.zero());
        }
        h[1] = self.sub(&h[1], &self.one());
        self.poly_trim(&mut h);
        let g = self.poly_gcd(poly, h);
        g.len().saturating_sub(1)
    }

    pub fn poly_trim(&self, a: &mut FqPoly) {
        while a.last().is_some_and(|c| self.is_zero(c)) {
            a.pop();
        }
    }

    pub fn poly_mul(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = self.add(&out[i + j], &self.mul(x, y));
            }
        }
        self.poly_trim(&mut out);
        out
    }

    /// Remainder of `a` modulo nonzero `m`.
    pub fn poly_rem(&self, mut a: FqPoly, m: &FqPoly) -> FqPoly {
        self.poly_trim(&mut a);
        let dm = m.len() - 1;
        let lead_inv = self.inv(&m[dm]).expect("nonzero modulus");
        while a.len() > dm {
            let k = a.len() - 1;
            let c = self.mul(&a[k], &lead_inv);
            for j in 0..=dm {
                a[k - dm + j] = self.sub(&a[k - dm + j], &self.mul(&c, &m[j]));
            }
            self.poly_trim(&mut a);
        }
        a
    }

    /// Monic gcd.
    pub fn poly_gcd(&self, mut a: FqPoly, mut b: FqPoly) -> FqPoly {
        self.poly_trim(&mut a);
        self.poly_trim(&mut b);
        while !b.is_empty() {
            let r = self.poly_rem(a, &b);
            a = b;
            b = r;
        }
        if let Some(lead) = a.last().copied() {
            let inv = self.inv(&lead).unwrap();
            for c in a.iter_mut() {
                *c = self.mul(c, &inv);
            }
        }
        a
    }

    /// `x^e mod m`.
    pub fn poly_powmod_x(&self, mut e: u128, m: &FqPoly) -> FqPoly {
        let mut acc: FqPoly = vec![self.one()];
        let mut base = self.poly_rem(vec![self.zero(), self.one()], m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_rem(self.poly_mul(&acc, &base), m);
            }
            base = self.poly_rem(self.poly_mul(&base, &base), m);
            e >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f81() -> ResidueField {
        ResidueField::new(3, vec![2, 0, 1, 0, 1]) // x⁴ + x² + 2 = x⁴ − 5x² + 5 mod 3
    }

    #[test]
    fn field_axioms_small_fields() {
        for k in [ResidueField::new(2, vec![1, 1, 1]), ResidueField::prime(5), f81()] {
            let els: Vec<Fq> = k.elements().collect();
            assert_eq!(els.len() as u128, k.size());
            for a in &els {
                if !k.is_zero(a) {
                    assert_eq!(k.mul(a, &k.inv(a).unwrap()), k.one());
                }
                assert_eq!(k.pow(a, k.size()), *a);
            }
            // Frobenius fixes exactly F_p
            let fixed = els.iter().filter(|a| k.frobenius(a) == **a).count();
            assert_eq!(fixed as u64, k.characteristic());
        }
    }

    #[test]
    fn roots() {
        let k = f81();
        for a in k.elements() {
            let a2 = k.mul(&a, &a);
            let r = k.sqrt(&a2).unwrap();
            assert_eq!(k.mul(&r, &r), a2);
            let a3 = k.mul(&a2, &a);
            let c = k.cbrt(&a3).unwrap();
            assert_eq!(k.mul(&k.mul(&c, &c), &c), a3);
        }
        let f4 = ResidueField::new(2, vec![1, 1, 1]);
        for a in f4.elements() {
            let r = f4.sqrt(&a).unwrap();
            assert_eq!(f4.mul(&r, &r), a);
        }
        let f49 = ResidueField::new(7, vec![1, 0, 1]);
        for a in f49.elements() {
            let a2 = f49.mul(&a, &a);
            let r = f49.sqrt(&a2).unwrap();
            assert_eq!(f49.mul(&r, &r), a2);
        }
    }

    #[test]
    fn polynomial_root_tests() {
        let k = ResidueField::prime(7);
        let e = |n| k.from_u64(n);
        // (T-1)(T-2)(T-3) = T³ - 6T² + 11T - 6
        assert_eq!(k.cubic_root_count(&k.from_i128(-6), &e(11), &k.from_i128(-6)), 3);
        // T³ - 2: 2 is a cube mod 7? cubes mod 7 are {0,1,6}
        assert_eq!(k.cubic_root_count(&e(0), &e(0), &k.from_i128(-2)), 0);
        assert!(k.quadratic_has_root(&e(1), &e(0), &k.from_i128(-2)));
        assert!(!k.quadratic_has_root(&e(1), &e(0), &k.from_i128(-3)));
        let f4 = ResidueField::new(2, vec![1, 1, 1]);
        // y² + y + 1 has roots in F4 but y² + y + x does not
        assert!(f4.quadratic_has_root(&f4.one(), &f4.one(), &f4.one()));
        assert!(!f4.quadratic_has_root(&f4.one(), &f4.one(), &f4.generator()));
    }
}
