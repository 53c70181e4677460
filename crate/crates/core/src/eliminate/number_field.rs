//! Absolute coefficient fields `Q[u]/(f)`: exact arithmetic, norms and
//! numeric complex embeddings.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::fields::linalg::{det, Matrix};
use crate::fields::{rational_to_f64, GaussianElt, Rational};
use crate::{Error, Result};

/// `Q[u]/(f)` for a monic integral `f`.
#[derive(Clone, Debug)]
pub struct NumberField {
    /// Coefficients of `f`, lowest degree first, leading 1 included.
    pub poly: Vec<i64>,
    roots: Vec<Complex64>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.poly == other.poly
    }
}

impl Eq for NumberField {}

/// An element as coefficients of `1, u, …, u^{n−1}`.
pub type NfElt = Vec<Rational>;

impl NumberField {
    pub fn new(poly: Vec<i64>) -> Result<Self> {
        if poly.len() < 2 || poly.last() != Some(&1) {
            return Err(Error::Dataset(format!("field polynomial {poly:?} is not monic of positive degree")));
        }
        let roots = complex_roots(&poly);
        Ok(NumberField { poly, roots })
    }

    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn zero(&self) -> NfElt {
        vec![Rational::zero(); self.degree()]
    }

    pub fn one(&self) -> NfElt {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, r: Rational) -> NfElt {
        let mut e = self.zero();
        e[0] = r;
        e
    }

    /// `(c₀ + c₁u + …)/den`.
    pub fn element(&self, coeffs: &[i64], den: i64) -> Result<NfElt> {
        if coeffs.len() > self.degree() || den == 0 {
            return Err(Error::Dataset(format!("element {coeffs:?}/{den} does not fit a degree-{} field", self.degree())));
        }
        let mut e = self.zero();
        for (slot, &c) in e.iter_mut().zip(coeffs) {
            *slot = Rational::new(c.into(), den.into());
        }
        Ok(e)
    }

    pub fn add(&self, a: &NfElt, b: &NfElt) -> NfElt {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &NfElt, b: &NfElt) -> NfElt {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(&self, a: &NfElt, c: &Rational) -> NfElt {
        a.iter().map(|x| x * c).collect()
    }

    pub fn mul(&self, a: &NfElt, b: &NfElt) -> NfElt {
        let n = self.degree();
        let mut r = vec![Rational::zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                r[i + j] += x * y;
            }
        }
        // u^n = −(f₀ + f₁u + … + f_{n−1}u^{n−1})
        for k in (n..2 * n - 1).rev() {
            let c = core::mem::take(&mut r[k]);
            if c.is_zero() {
                continue;
            }
            for (j, &f) in self.poly[..n].iter().enumerate() {
                r[k - n + j] -= &c * Rational::from_integer(f.into());
            }
        }
        r.truncate(n);
        r
    }

    pub fn pow(&self, a: &NfElt, k: u32) -> NfElt {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    pub fn is_zero(&self, a: &NfElt) -> bool {
        a.iter().all(Zero::is_zero)
    }

    fn mult_matrix(&self, a: &NfElt) -> Matrix {
        let n = self.degree();
        let mut basis = self.zero();
        let mut cols = Vec::with_capacity(n);
        for k in 0..n {
            basis.iter_mut().for_each(|c| *c = Rational::zero());
            basis[k] = Rational::one();
            cols.push(self.mul(a, &basis));
        }
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// `Nm_{F/Q}(a)`.
    pub fn norm(&self, a: &NfElt) -> Rational {
        det(&self.mult_matrix(a))
    }

    /// Numeric roots of `f`, one per complex embedding.
    pub fn roots(&self) -> &[Complex64] {
        &self.roots
    }

    pub fn embed(&self, a: &NfElt, root: Complex64) -> Complex64 {
        a.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * root + rational_to_f64(c))
    }

    /// `a` as `x + y·i` when `a ∈ Q(i)`, where `i` is the given element.
    pub fn to_gaussian(&self, a: &NfElt, i: &NfElt) -> Option<GaussianElt> {
        // solve a = x + y·i over Q using the first two coordinates that i touches
        let k = (1..self.degree()).find(|&k| !i[k].is_zero())?;
        let y = &a[k] / &i[k];
        let x = &a[0] - &y * &i[0];
        let rebuilt = self.add(&self.from_rational(x.clone()), &self.scale(i, &y));
        (&rebuilt == a).then(|| GaussianElt::new(x, y))
    }

    pub fn from_gaussian(&self, z: &GaussianElt, i: &NfElt) -> NfElt {
        self.add(&self.from_rational(z.re.clone()), &self.scale(i, &z.im))
    }
}

/// Aberth iteration on a monic integral polynomial.
fn complex_roots(poly: &[i64]) -> Vec<Complex64> {
    let n = poly.len() - 1;
    let coeffs: Vec<f64> = poly.iter().map(|&c| c as f64).collect();
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };
    let radius = 1.0 + coeffs[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius * 0.5, 0.4 + 2.0 * core::f64::consts::PI * k as f64 / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (p, dp) = eval(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            z[k] -= w;
            moved = moved.max(w.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

/// Integer value of a rational known to be integral.
pub fn integral(r: &Rational) -> Option<num_bigint::BigInt> {
    r.is_integer().then(|| r.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{q, qi};

    #[test]
    fn gaussian_field() {
        let f = NumberField::new(vec![1, 0, 1]).unwrap();
        let i = f.element(&[0, 1], 1).unwrap();
        assert_eq!(f.mul(&i, &i), f.from_rational(q(-1)));
        let z = f.element(&[3, 4], 1).unwrap();
        assert_eq!(f.norm(&z), q(25));
        assert_eq!(f.to_gaussian(&z, &i), Some(GaussianElt::from_ints(3, 4)));
        let mut roots: Vec<f64> = f.roots().iter().map(|r| r.im).collect();
        roots.sort_by(f64::total_cmp);
        assert!((roots[0] + 1.0).abs() < 1e-12 && (roots[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn norms_match_embeddings() {
        // x⁸ − x⁴ + 1, the 24th cyclotomic field
        let f = NumberField::new(vec![1, 0, 0, 0, -1, 0, 0, 0, 1]).unwrap();
        let a = f.element(&[2, -1, 0, 3, 0, 0, 1, 0], 1).unwrap();
        let exact = rational_to_f64(&f.norm(&a));
        let numeric: Complex64 = f.roots().iter().map(|&r| f.embed(&a, r)).product();
        assert!((numeric.re - exact).abs() < 1e-6 * exact.abs().max(1.0) && numeric.im.abs() < 1e-6);
        for r in f.roots() {
            assert!(f.embed(&f.element(&[1, 0, 0, 0, -1, 0, 0, 0], 1).unwrap(), *r).norm() > 0.0);
            let p = f.poly.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * r + c as f64);
            assert!(p.norm() < 1e-10);
        }
        assert_eq!(integral(&qi(&7.into())), Some(7.into()));
    }
}
