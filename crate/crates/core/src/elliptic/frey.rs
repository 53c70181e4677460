//! The Frey curve `E_(a,b)` over `Q(√5)`, its conjugate and its twist `E_γ`
//! over `K`.

use alloc::format;

use crate::arith::gcd;
use crate::check::{Check, Claim};
use crate::descent::{phi, phi12};
use crate::fields::{qi, Field, QuadElt, QuarticElt};
use crate::galois::gamma;
use crate::{Error, Result};

use super::WeierstrassCurve;

fn precondition(a: i64, b: i64) -> Result<()> {
    if gcd(a as i128, b as i128) != 1 {
        return Err(Error::NotCoprime { a, b });
    }
    Ok(())
}

fn nonsingular<F: Field>(e: WeierstrassCurve<F>) -> Result<WeierstrassCurve<F>> {
    if e.is_singular() {
        Err(Error::Singular)
    } else {
        Ok(e)
    }
}

/// `E: y² = x³ + 2(a+b)x² − ω̄φ₁(a,b)x`.
pub fn frey_curve(a: i64, b: i64) -> Result<WeierstrassCurve<QuadElt>> {
    precondition(a, b)?;
    let (p1, _) = phi12(a, b);
    let a2 = QuadElt::from_i64(2 * (a + b));
    let a4 = -(QuadElt::omega_bar() * &p1);
    nonsingular(WeierstrassCurve::short(a2, a4, QuadElt::zero()))
}

/// `σE: y² = x³ + 2(a+b)x² − ωφ₂(a,b)x`.
pub fn conjugate_frey_curve(a: i64, b: i64) -> Result<WeierstrassCurve<QuadElt>> {
    Ok(frey_curve(a, b)?.map(QuadElt::conj))
}

/// `E_γ: y² = x³ + 2γ(a+b)x² − γ²ω̄φ₁(a,b)x` with `γ = 2θ² − θ − 5`.
pub fn frey_twist(a: i64, b: i64) -> Result<WeierstrassCurve<QuarticElt>> {
    precondition(a, b)?;
    let g = gamma();
    let (p1, _) = phi12(a, b);
    let a2 = g.clone() * QuarticElt::from_i64(2 * (a + b));
    let a4 = -(g.square() * QuarticElt::from_quad(&(QuadElt::omega_bar() * &p1)));
    nonsingular(WeierstrassCurve::short(a2, a4, QuarticElt::zero()))
}

/// `E_γ,2`, the twist of `E_γ` by 2.
pub fn frey_twist2(a: i64, b: i64) -> Result<WeierstrassCurve<QuarticElt>> {
    Ok(frey_twist(a, b)?.quadratic_twist(&QuarticElt::from_i64(2)))
}

/// `Δ(E) = 2⁶ω̄φφ₁`, exactly.
pub fn discriminant_check(a: i64, b: i64) -> Result<Check> {
    let e = frey_curve(a, b)?;
    let (p1, _) = phi12(a, b);
    let rhs = QuadElt::from_i64(64) * QuadElt::omega_bar() * QuadElt::from_rational(qi(&phi(a, b).into())) * &p1;
    let lhs = e.discriminant();
    let check = Check::verdict(Claim::Discriminant, lhs == rhs, format!("(a, b) = ({a}, {b}): Δ = {lhs}"));
    Ok(check.with_values(format!("{rhs}"), format!("{lhs}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frey_coefficients() {
        let e = frey_curve(1, 1).unwrap();
        assert_eq!(e.a2, QuadElt::from_i64(4));
        assert_eq!(e.a4, QuadElt::from_ints(2, 1));
        let e = frey_curve(1, 0).unwrap();
        assert_eq!((e.a2, e.a4), (QuadElt::from_i64(2), -QuadElt::omega_bar()));
        let e = frey_curve(1, 2).unwrap();
        let p1 = QuadElt::from_i64(5) + QuadElt::omega() * QuadElt::from_i64(2);
        assert_eq!((e.a2, e.a4), (QuadElt::from_i64(6), -(QuadElt::omega_bar() * p1)));
        assert!(frey_curve(4, 2).is_err());
    }

    #[test]
    fn discriminants() {
        assert_eq!(frey_curve(1, 1).unwrap().discriminant(), QuadElt::from_ints(-128, -64));
        assert_eq!(frey_curve(1, 0).unwrap().discriminant(), QuadElt::omega_bar() * QuadElt::from_i64(64));
        for (a, b) in [(1, 1), (1, 0), (3, 5), (1, -1), (-7, 12)] {
            assert!(discriminant_check(a, b).unwrap().passed());
        }
    }

    #[test]
    fn twist_relations() {
        for (a, b) in [(1, 1), (1, 2), (3, 5), (1, -1)] {
            let e = frey_curve(a, b).unwrap().map(QuarticElt::from_quad);
            let eg = frey_twist(a, b).unwrap();
            assert_eq!(eg, e.quadratic_twist(&gamma()));
            assert_eq!(eg.j_invariant(), e.j_invariant());
            assert_eq!(eg.discriminant(), gamma().pow(6) * e.discriminant());
            assert_eq!(eg.c4(), gamma().pow(2) * e.c4());
        }
        assert_eq!(frey_twist(1, 1).unwrap().a2, gamma() * QuarticElt::from_i64(4));
    }
}
