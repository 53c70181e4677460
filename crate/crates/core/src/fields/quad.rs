use core::fmt;



use super::{fmt_terms, forward_ops, q, qf, Field, Rational};

/// `x + y√5` in `Q(√5)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadElt {
    pub x: Rational,
    pub y: Rational,
}

impl QuadElt {
    pub fn new(x: Rational, y: Rational) -> Self {
        QuadElt { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        QuadElt::new(q(x), q(y))
    }

    pub fn sqrt5() -> Self {
        QuadElt::from_ints(0, 1)
    }

    /// `ω = (−1 + √5)/2`.
    pub fn omega() -> Self {
        QuadElt::new(qf(-1, 2), qf(1, 2))
    }

    /// `ω̄ = (−1 − √5)/2`.
    pub fn omega_bar() -> Self {
        QuadElt::new(qf(-1, 2), qf(-1, 2))
    }

    /// The non-trivial automorphism `√5 ↦ −√5`.
    pub fn conj(&self) -> Self {
        QuadElt::new(self.x.clone(), -&self.y)
    }

    pub fn norm(&self) -> Rational {
        &self.x * &self.x - q(5) * &self.y * &self.y
    }

    pub fn trace(&self) -> Rational {
        q(2) * &self.x
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QuadElt::new(&self.x * c, &self.y * c)
    }

    pub fn to_f64(&self) -> f64 {
        super::rational_to_f64(&self.x) + super::rational_to_f64(&self.y) * libm::sqrt(5.0)
    }

    fn add_ref(&self, o: &Self) -> Self {
        QuadElt::new(&self.x + &o.x, &self.y + &o.y)
    }

    fn sub_ref(&self, o: &Self) -> Self {
        QuadElt::new(&self.x - &o.x, &self.y - &o.y)
    }

    fn mul_ref(&self, o: &Self) -> Self {
        QuadElt::new(
            &self.x * &o.x + q(5) * &self.y * &o.y,
            &self.x * &o.y + &self.y * &o.x,
        )
    }

    fn neg_ref(&self) -> Self {
        QuadElt::new(-&self.x, -&self.y)
    }
}

forward_ops!(QuadElt);

impl Field for QuadElt {
    fn zero() -> Self {
        QuadElt::from_ints(0, 0)
    }
    fn one() -> Self {
        QuadElt::from_ints(1, 0)
    }
    fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(self.conj().scale(&n.recip()))
    }
    fn from_rational(q: Rational) -> Self {
        QuadElt::new(q, Rational::zero())
    }
}

impl fmt::Display for QuadElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &[(&self.x, ""), (&self.y, "√5")])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::strategies::*;
    use proptest::prelude::*;

    #[test]
    fn omega_relations() {
        let (w, wb) = (QuadElt::omega(), QuadElt::omega_bar());
        assert_eq!(w.clone() + &wb, QuadElt::from_ints(-1, 0));
        assert_eq!(w.clone() * &wb, QuadElt::from_ints(-1, 0));
        assert_eq!(w.conj(), wb);
        assert_eq!(QuadElt::from_ints(7, 0).conj(), QuadElt::from_ints(7, 0));
        let z = QuadElt::from_ints(2, 1);
        assert_eq!(z.clone() * z.conj(), QuadElt::from_ints(-1, 0));
    }

    proptest! {
        #[test]
        fn field_axioms(a in quad(), b in quad(), c in quad()) {
            prop_assert_eq!((a.clone() * &b) * &c, a.clone() * (b.clone() * &c));
            prop_assert_eq!(a.clone() * (b.clone() + &c), a.clone() * &b + a.clone() * &c);
            if !a.is_zero() {
                prop_assert!((a.clone() * a.inv().unwrap()).is_one());
            }
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((a.clone() * &b).conj(), a.conj() * b.conj());
            prop_assert_eq!((a.clone() * &b).norm(), a.norm() * b.norm());
        }
    }
}
