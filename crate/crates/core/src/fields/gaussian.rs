use core::fmt;

use super::{fmt_terms, forward_ops, q, Field, Rational};

/// `re + im·i` in `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GaussianElt {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianElt {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianElt { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianElt::new(q(re), q(im))
    }

    pub fn i() -> Self {
        GaussianElt::from_ints(0, 1)
    }

    pub fn conj(&self) -> Self {
        GaussianElt::new(self.re.clone(), -&self.im)
    }

    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, c: &Rational) -> Self {
        GaussianElt::new(&self.re * c, &self.im * c)
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (super::rational_to_f64(&self.re), super::rational_to_f64(&self.im))
    }

    fn add_ref(&self, o: &Self) -> Self {
        GaussianElt::new(&self.re + &o.re, &self.im + &o.im)
    }

    fn sub_ref(&self, o: &Self) -> Self {
        GaussianElt::new(&self.re - &o.re, &self.im - &o.im)
    }

    fn mul_ref(&self, o: &Self) -> Self {
        GaussianElt::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    fn neg_ref(&self) -> Self {
        GaussianElt::new(-&self.re, -&self.im)
    }
}

forward_ops!(GaussianElt);

impl Field for GaussianElt {
    fn zero() -> Self {
        GaussianElt::from_ints(0, 0)
    }
    fn one() -> Self {
        GaussianElt::from_ints(1, 0)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(self.conj().scale(&n.recip()))
    }
    fn from_rational(q: Rational) -> Self {
        GaussianElt::new(q, Rational::zero())
    }
}

impl fmt::Display for GaussianElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &[(&self.re, ""), (&self.im, "i")])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::strategies::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    #[test]
    fn basics() {
        let i = GaussianElt::i();
        assert_eq!(i.square(), GaussianElt::from_ints(-1, 0));
        assert_eq!(GaussianElt::from_ints(-1, 1).norm(), q(2));
        assert_eq!(GaussianElt::from_ints(-2, 2).to_string(), "-2 + 2i");
        assert_eq!(GaussianElt::from_ints(0, -1).to_string(), "-i");
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(a in gaussian(), b in gaussian(), c in gaussian()) {
            prop_assert_eq!((a.clone() * &b).norm(), a.norm() * b.norm());
            prop_assert_eq!(a.clone() * (b.clone() + &c), a.clone() * &b + a.clone() * &c);
            if !a.is_zero() {
                prop_assert!((a.inv().unwrap() * &a).is_one());
            }
        }
    }
}
