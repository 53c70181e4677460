//! Newform records and their validation.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::arith::{gcd, is_prime};
use crate::fields::{q, Field, GaussianElt, Rational};
use crate::galois::build_epsilon;
use crate::{Error, Result};

use super::number_field::{NfElt, NumberField};

pub const LEVELS: [u64; 4] = [100, 400, 800, 1600];
pub const CHAR_LABEL: &str = "20.ord4";

/// A record as stored on disk: every coefficient is a list of integers over
/// the power basis of `field_poly`, to be divided by `denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawNewform {
    pub id: String,
    pub level: u64,
    pub weight: u32,
    pub char_label: String,
    pub field_poly: Vec<i64>,
    pub i_embed: Vec<i64>,
    pub denominator: i64,
    pub cm_disc: Option<i64>,
    pub conj_class_size: u32,
    pub an: Vec<Vec<i64>>,
}

/// One Galois orbit over `Q(i)` of newforms in `S₂(N, ε̄)`.
#[derive(Clone, Debug, PartialEq)]
pub struct NewformRecord {
    pub id: String,
    pub level: u64,
    pub weight: u32,
    pub field: NumberField,
    /// The image of `i` in the coefficient field.
    pub i: NfElt,
    pub cm_disc: Option<i64>,
    /// Number of conjugates over `Q(i)`.
    pub conj_class_size: u32,
    /// `a_n` for `n = 1, 2, …`.
    pub an: Vec<NfElt>,
}

impl NewformRecord {
    /// Builds a record and checks the exact invariants: the level, weight and
    /// character label, `a₁ = 1` and `i² = −1`.
    pub fn from_raw(raw: &RawNewform) -> Result<Self> {
        let bad = |what: String| Error::Dataset(format!("{}: {what}", raw.id));
        if !LEVELS.contains(&raw.level) {
            return Err(bad(format!("level {} not in {LEVELS:?}", raw.level)));
        }
        if raw.weight != 2 || raw.char_label != CHAR_LABEL {
            return Err(bad(format!("weight {} / character {}", raw.weight, raw.char_label)));
        }
        if !matches!(raw.cm_disc, None | Some(-4) | Some(-20)) {
            return Err(bad(format!("CM discriminant {:?}", raw.cm_disc)));
        }
        let field = NumberField::new(raw.field_poly.clone()).map_err(|e| bad(format!("{e}")))?;
        let den = raw.denominator;
        let i = field.element(&raw.i_embed, den).map_err(|e| bad(format!("{e}")))?;
        if field.mul(&i, &i) != field.from_rational(q(-1)) {
            return Err(bad("i_embed does not square to −1".into()));
        }
        let an = raw
            .an
            .iter()
            .map(|c| field.element(c, den))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| bad(format!("{e}")))?;
        if an.first() != Some(&field.one()) {
            return Err(bad("a₁ ≠ 1".into()));
        }
        if field.degree() as u32 != 2 * raw.conj_class_size {
            return Err(bad(format!("degree {} vs {} conjugates over Q(i)", field.degree(), raw.conj_class_size)));
        }
        Ok(NewformRecord {
            id: raw.id.clone(),
            level: raw.level,
            weight: raw.weight,
            field,
            i,
            cm_disc: raw.cm_disc,
            conj_class_size: raw.conj_class_size,
            an,
        })
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    /// Number of stored coefficients.
    pub fn len(&self) -> usize {
        self.an.len()
    }

    pub fn is_empty(&self) -> bool {
        self.an.is_empty()
    }

    pub fn a(&self, n: usize) -> Option<&NfElt> {
        n.checked_sub(1).and_then(|k| self.an.get(k))
    }

    /// `a_n ∈ Q(i)` as a Gaussian number, when it lies there.
    pub fn a_gaussian(&self, n: usize) -> Option<GaussianElt> {
        self.field.to_gaussian(self.a(n)?, &self.i)
    }

    /// `i^k` in the coefficient field.
    pub fn i_power(&self, k: u8) -> NfElt {
        self.field.pow(&self.i, k as u32 % 4)
    }

    /// `ε̄(n)` in the coefficient field; `None` off the units mod 20.
    pub fn eps_bar(&self, n: i64) -> Option<NfElt> {
        build_epsilon().conj().log_value(n).map(|k| self.i_power(k))
    }

    /// Checks the remaining invariants: Weil bound and inner twist at every
    /// prime `q ∤ N` numerically, `a_{q²} = a_q² − ε̄(q)q` and
    /// multiplicativity exactly.
    pub fn validate(&self) -> core::result::Result<(), String> {
        let n = self.len() as u64;
        let tol = 1e-9;
        let f = &self.field;
        let i_images: Vec<Complex64> = f.roots().iter().map(|&r| f.embed(&self.i, r)).collect();
        for q in (2..=n).filter(|&q| is_prime(q) && self.level % q != 0) {
            let aq = self.a(q as usize).unwrap();
            let k = build_epsilon().conj().log_value(q as i64).unwrap();
            for (root, iz) in f.roots().iter().zip(&i_images) {
                let z = f.embed(aq, *root);
                if z.norm() > 2.0 * libm::sqrt(q as f64) + tol {
                    return Err(format!("Weil bound fails at q = {q}: |a_q| = {}", z.norm()));
                }
                let twist = z.conj() * iz.powi(k as i32);
                if (z - twist).norm() > tol * (1.0 + z.norm()) {
                    return Err(format!("a_q ≠ ā_q ε̄(q) at q = {q}"));
                }
            }
            if q * q <= n {
                let lhs = self.a((q * q) as usize).unwrap();
                let eq = self.eps_bar(q as i64).unwrap();
                let rhs = f.sub(&f.mul(aq, aq), &f.scale(&eq, &Rational::from_i64(q as i64)));
                if lhs != &rhs {
                    return Err(format!("a_(q²) ≠ a_q² − ε̄(q)q at q = {q}"));
                }
            }
        }
        for m in 2..=24u64 {
            for k in 2..=24u64 {
                if gcd(m as i128, k as i128) != 1 || m * k > n {
                    continue;
                }
                let prod = f.mul(self.a(m as usize).unwrap(), self.a(k as usize).unwrap());
                if self.a((m * k) as usize).unwrap() != &prod {
                    return Err(format!("a_{} ≠ a_{m}·a_{k}", m * k));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    /// A one-coefficient record over Q(i).
    fn sample() -> RawNewform {
        RawNewform {
            id: "t".into(),
            level: 100,
            weight: 2,
            char_label: CHAR_LABEL.into(),
            field_poly: vec![1, 0, 1],
            i_embed: vec![0, 1],
            denominator: 1,
            cm_disc: Some(-4),
            conj_class_size: 1,
            an: vec![vec![1, 0]],
        }
    }

    #[test]
    fn raw_checks() {
        let r = sample();
        assert!(NewformRecord::from_raw(&r).is_ok());
        let mut bad = r.clone();
        bad.an[0] = vec![2, 0];
        assert!(NewformRecord::from_raw(&bad).is_err());
        let mut bad = r.clone();
        bad.i_embed = vec![1, 1];
        assert!(NewformRecord::from_raw(&bad).is_err());
        let mut bad = r.clone();
        bad.level = 200;
        assert!(NewformRecord::from_raw(&bad).is_err());
        let mut bad = r;
        bad.cm_disc = Some(-3);
        assert!(NewformRecord::from_raw(&bad).is_err());
    }

    #[test]
    fn eps_bar_in_field() {
        let rec = NewformRecord::from_raw(&sample()).unwrap();
        assert_eq!(rec.eps_bar(3), Some(rec.field.scale(&rec.i, &q(-1))));
        assert_eq!(rec.eps_bar(10), None);
        assert_eq!(rec.a_gaussian(1), Some(GaussianElt::one()));
    }
}
