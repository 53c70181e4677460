use alloc::format;

use crate::fields::{Fq, Local, PrimeLocalization, QuarticElt, ResidueField};
use crate::{Error, Result};

use super::{tate_local, WeierstrassCurve};

/// Largest residue field enumerated by default.
pub const DEFAULT_ENUMERATION_BOUND: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PointCount {
    pub q: u128,
    /// Number of points over the residue field, including infinity.
    pub count: u128,
    /// `a_P = q + 1 − count`.
    pub trace: i128,
}

/// Points of `y² + a₁xy + a₃y = x³ + a₂x² + a₄x + a₆` over `k`.
pub fn count_points(k: &ResidueField, a: [Fq; 5]) -> u128 {
    let [a1, a2, a3, a4, a6] = a;
    let mut n = 1u128;
    for x in k.elements() {
        let rhs = k.add(&k.mul(&k.add(&k.mul(&k.add(&x, &a2), &x), &a4), &x), &a6);
        let b = k.add(&k.mul(&a1, &x), &a3);
        if k.characteristic() == 2 {
            if k.is_zero(&b) {
                n += 1;
            } else if k.trace(&k.div(&rhs, &k.mul(&b, &b)).unwrap()) == 0 {
                n += 2;
            }
        } else {
            let d = k.add(&k.mul(&b, &b), &k.scale(&rhs, 4));
            n += if k.is_zero(&d) {
                1
            } else if k.is_square(&d) {
                2
            } else {
                0
            };
        }
    }
    n
}

/// Reduces `e` at a prime of good reduction and counts points naively.
pub fn reduce_and_count(e: &WeierstrassCurve<QuarticElt>, prime: &PrimeLocalization, bound: u128) -> Result<PointCount> {
    let local = tate_local(e, prime)?;
    if local.exponent != 0 {
        return Err(Error::BadReduction(format!("{} (type {})", prime.name(), local.kodaira)));
    }
    let q = prime.norm();
    if q > bound {
        return Err(Error::EnumerationBound { size: q, bound });
    }
    let m = &local.minimal_model;
    let a = [&m.a1, &m.a2, &m.a3, &m.a4, &m.a6].map(|c| prime.residue(c));
    let a = [a[0].clone()?, a[1].clone()?, a[2].clone()?, a[3].clone()?, a[4].clone()?];
    let count = count_points(prime.residue_field(), a);
    let trace = q as i128 + 1 - count as i128;
    debug_assert!((trace * trace) as u128 <= 4 * q);
    Ok(PointCount { q, count, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descent::phi;
    use crate::elliptic::frey_twist;
    use crate::fields::Field;

    #[test]
    fn trace_at_p3_is_minus_18() {
        let p3 = PrimeLocalization::p3();
        let c = reduce_and_count(&frey_twist(1, 2).unwrap(), &p3, DEFAULT_ENUMERATION_BOUND).unwrap();
        assert_eq!((c.q, c.count, c.trace), (81, 100, -18));
        for (a, b) in [(1, -4), (2, 1), (5, 7), (-11, 2), (4, -1)] {
            let c = reduce_and_count(&frey_twist(a, b).unwrap(), &p3, DEFAULT_ENUMERATION_BOUND).unwrap();
            assert_eq!(c.trace, -18, "({a}, {b})");
        }
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(200))]
        #[test]
        fn trace_at_p3_random(a in -500i64..500, k in -300i64..300) {
            let b = 3 * k - a;
            proptest::prop_assume!(a != 0 && b != 0 && crate::arith::gcd(a as i128, b as i128) == 1);
            let c = reduce_and_count(&frey_twist(a, b).unwrap(), &PrimeLocalization::p3(), 100).unwrap();
            proptest::prop_assert_eq!(c.trace, -18);
        }
    }

    #[test]
    fn hasse_and_twists() {
        let e = frey_twist(1, 2).unwrap();
        for p in [7u64, 11, 13, 29, 31, 41] {
            if phi(1, 2) % p as i128 == 0 {
                continue;
            }
            for prime in PrimeLocalization::above(p).unwrap() {
                let Ok(c) = reduce_and_count(&e, &prime, DEFAULT_ENUMERATION_BOUND) else { continue };
                assert!((c.trace * c.trace) as u128 <= 4 * c.q);
                // twist by a unit δ: a_P unchanged if δ is a square mod P, negated otherwise
                for d in [2i64, 3, 5, 7] {
                    let delta = QuarticElt::from_i64(d);
                    if prime.valuation(&delta) != 0 {
                        continue;
                    }
                    let tw = reduce_and_count(&e.quadratic_twist(&delta), &prime, DEFAULT_ENUMERATION_BOUND).unwrap();
                    let square = prime.residue_field().is_square(&prime.residue(&delta).unwrap());
                    assert_eq!(tw.trace, if square { c.trace } else { -c.trace }, "p = {p}, δ = {d}");
                }
            }
        }
    }

    #[test]
    fn bad_reduction_and_bounds() {
        let e = frey_twist(1, 2).unwrap();
        assert!(matches!(reduce_and_count(&e, &PrimeLocalization::p2(), 1000), Err(Error::BadReduction(_))));
        assert!(matches!(
            reduce_and_count(&e, &PrimeLocalization::p3(), 50),
            Err(Error::EnumerationBound { size: 81, bound: 50 })
        ));
        let _ = QuarticElt::one();
    }
}
