//! Exact arithmetic in `Q ⊂ Q(√5) ⊂ K = Q(θ) ⊂ K(√−2)`, in `Q(i)`, and in
//! the residue fields of `K`.
//!
//! `K` uses the power basis `1, θ, θ², θ³` with `θ⁴ = 5θ² − 5`, and `√5` is
//! always `2θ² − 5`. `Z[θ]` is the maximal order, which is what lets the
//! valuation code test integrality coordinate-wise.

mod finite;
mod gaussian;
mod galois;
pub mod linalg;
mod local;
mod oct;
mod quad;
mod quartic;

pub use finite::{Fq, FqPoly, ResidueField};
pub use galois::{galois_group_k, galois_group_k_sqrtm2, theta_roots, KAut, OctAut};
pub use gaussian::GaussianElt;
pub use local::{norm_valuation, p2_uniformizer, Local, PrimeLabel, PrimeLocalization, RationalPrime, VAL_INF};
pub use oct::OctElt;
pub use quad::QuadElt;
pub use quartic::QuarticElt;

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// p-adic valuation of a rational; `VAL_INF` for zero.
pub fn rational_val(x: &Rational, p: u64) -> i64 {
    if Zero::is_zero(x) {
        return VAL_INF;
    }
    bigint_val(x.numer(), p) - bigint_val(x.denom(), p)
}

pub fn bigint_val(n: &BigInt, p: u64) -> i64 {
    if Zero::is_zero(n) {
        return VAL_INF;
    }
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (quo, rem) = n.div_rem(&p);
        if !Zero::is_zero(&rem) {
            return v;
        }
        n = quo;
        v += 1;
    }
}

/// Reduction of a p-integral rational modulo p.
pub fn rational_mod(x: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = x.denom().mod_floor(&pb).to_u64()?;
    if den == 0 {
        return None;
    }
    let num = x.numer().mod_floor(&pb).to_u64()?;
    Some(crate::arith::mul_mod(num, crate::arith::inv_mod(den, p), p))
}

pub fn rational_to_f64(x: &Rational) -> f64 {
    // Exact enough for the sizes met here; only used in numeric sanity checks.
    let n = x.numer().to_f64().unwrap_or(f64::NAN);
    let d = x.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Common interface of the exact fields. The curve code is generic over it.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn from_rational(q: Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(q(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Option<Self> {
        Some(self.clone() * &other.inv()?)
    }

    fn square(&self) -> Self {
        self.clone() * self
    }

    fn pow(&self, mut n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * &base;
            }
            base = base.square();
            n >>= 1;
        }
        acc
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(q: Rational) -> Self {
        q
    }
}

/// Writes a rational coefficient in front of a basis symbol, omitting units.
pub(crate) fn fmt_terms(f: &mut fmt::Formatter<'_>, terms: &[(&Rational, &str)]) -> fmt::Result {
    let mut first = true;
    for &(c, sym) in terms {
        if Zero::is_zero(c) {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        if sym.is_empty() {
            write!(f, "{abs}")?;
        } else if One::is_one(&abs) {
            f.write_str(sym)?;
        } else {
            write!(f, "{abs}{sym}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// Implements the four owned/borrowed combinations of `+ - *` and unary `-`
/// from inherent `add_ref`, `sub_ref`, `mul_ref`, `neg_ref` methods.
macro_rules! forward_ops {
    ($t:ty) => {
        impl core::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                self.add_ref(&rhs)
            }
        }
        impl<'a> core::ops::Add<&'a $t> for $t {
            type Output = $t;
            fn add(self, rhs: &'a $t) -> $t {
                self.add_ref(rhs)
            }
        }
        impl<'a> core::ops::Add<&'a $t> for &'a $t {
            type Output = $t;
            fn add(self, rhs: &'a $t) -> $t {
                self.add_ref(rhs)
            }
        }
        impl core::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                self.sub_ref(&rhs)
            }
        }
        impl<'a> core::ops::Sub<&'a $t> for $t {
            type Output = $t;
            fn sub(self, rhs: &'a $t) -> $t {
                self.sub_ref(rhs)
            }
        }
        impl<'a> core::ops::Sub<&'a $t> for &'a $t {
            type Output = $t;
            fn sub(self, rhs: &'a $t) -> $t {
                self.sub_ref(rhs)
            }
        }
        impl core::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                self.mul_ref(&rhs)
            }
        }
        impl<'a> core::ops::Mul<&'a $t> for $t {
            type Output = $t;
            fn mul(self, rhs: &'a $t) -> $t {
                self.mul_ref(rhs)
            }
        }
        impl<'a> core::ops::Mul<&'a $t> for &'a $t {
            type Output = $t;
            fn mul(self, rhs: &'a $t) -> $t {
                self.mul_ref(rhs)
            }
        }
        impl core::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                self.neg_ref()
            }
        }
        impl<'a> core::ops::Neg for &'a $t {
            type Output = $t;
            fn neg(self) -> $t {
                self.neg_ref()
            }
        }
    };
}
pub(crate) use forward_ops;

#[cfg(test)]
pub(crate) mod strategies {
    use super::*;
    use proptest::prelude::*;

    pub fn rational() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..12).prop_map(|(n, d)| qf(n, d))
    }

    pub fn quad() -> impl Strategy<Value = QuadElt> {
        (rational(), rational()).prop_map(|(x, y)| QuadElt::new(x, y))
    }

    pub fn quartic() -> impl Strategy<Value = QuarticElt> {
        proptest::array::uniform4(rational()).prop_map(QuarticElt::new)
    }

    pub fn integral_quartic() -> impl Strategy<Value = QuarticElt> {
        proptest::array::uniform4(-30i64..30).prop_map(QuarticElt::from_ints)
    }

    pub fn oct() -> impl Strategy<Value = OctElt> {
        (quartic(), quartic()).prop_map(|(u, v)| OctElt::new(u, v))
    }

    pub fn gaussian() -> impl Strategy<Value = GaussianElt> {
        (rational(), rational()).prop_map(|(a, b)| GaussianElt::new(a, b))
    }
}
