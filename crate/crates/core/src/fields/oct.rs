use core::fmt;

use super::{forward_ops, q, Field, QuarticElt, Rational};

/// `u + v·√−2` in `K(√−2)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OctElt {
    pub u: QuarticElt,
    pub v: QuarticElt,
}

impl OctElt {
    pub fn new(u: QuarticElt, v: QuarticElt) -> Self {
        OctElt { u, v }
    }

    pub fn from_k(u: QuarticElt) -> Self {
        OctElt::new(u, QuarticElt::zero())
    }

    pub fn sqrt_m2() -> Self {
        OctElt::new(QuarticElt::zero(), QuarticElt::one())
    }

    pub fn in_k(&self) -> bool {
        self.v.is_zero()
    }

    /// `u − v√−2`, the automorphism fixing `K`.
    pub fn conj(&self) -> Self {
        OctElt::new(self.u.clone(), -&self.v)
    }

    /// Relative norm to `K`: `u² + 2v²`.
    pub fn norm_to_k(&self) -> QuarticElt {
        self.u.square() + self.v.square().scale(&q(2))
    }

    pub fn norm(&self) -> Rational {
        self.norm_to_k().norm()
    }

    fn add_ref(&self, o: &Self) -> Self {
        OctElt::new(&self.u + &o.u, &self.v + &o.v)
    }

    fn sub_ref(&self, o: &Self) -> Self {
        OctElt::new(&self.u - &o.u, &self.v - &o.v)
    }

    fn mul_ref(&self, o: &Self) -> Self {
        let uu = &self.u * &o.u;
        let vv = &self.v * &o.v;
        OctElt::new(uu - vv.scale(&q(2)), &self.u * &o.v + &self.v * &o.u)
    }

    fn neg_ref(&self) -> Self {
        OctElt::new(-&self.u, -&self.v)
    }
}

forward_ops!(OctElt);

impl Field for OctElt {
    fn zero() -> Self {
        OctElt::from_k(QuarticElt::zero())
    }
    fn one() -> Self {
        OctElt::from_k(QuarticElt::one())
    }
    fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm_to_k().inv()?;
        let c = self.conj();
        Some(OctElt::new(c.u * &n, c.v * &n))
    }
    fn from_rational(r: Rational) -> Self {
        OctElt::from_k(QuarticElt::from_rational(r))
    }
}

impl fmt::Display for OctElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            write!(f, "{}", self.u)
        } else if self.u.is_zero() {
            write!(f, "({})√−2", self.v)
        } else {
            write!(f, "{} + ({})√−2", self.u, self.v)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::strategies::*;
    use proptest::prelude::*;

    #[test]
    fn sqrt_m2_squares_to_m2() {
        assert_eq!(OctElt::sqrt_m2().square(), OctElt::from_i64(-2));
        assert_eq!(OctElt::sqrt_m2().norm(), q(16));
    }

    proptest! {
        #[test]
        fn field_axioms(a in oct(), b in oct(), c in oct()) {
            prop_assert_eq!((a.clone() * &b) * &c, a.clone() * (b.clone() * &c));
            prop_assert_eq!(a.clone() * (b.clone() + &c), a.clone() * &b + a.clone() * &c);
            if !a.is_zero() {
                prop_assert!((a.clone() * a.inv().unwrap()).is_one());
            }
            prop_assert_eq!((a.clone() * &b).norm(), a.norm() * b.norm());
        }
    }
}
