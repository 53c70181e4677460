//! Tate's algorithm over a discrete valuation given by [`Local`].
//!
//! The loop follows the classical presentation: move the singular point to
//! `(0, 0)`, test for `I_n`, `II`, `III`, `IV`, shift so that the cubic
//! `T³ + (a₂/π)T² + (a₄/π²)T + a₆/π³` governs the rest, and either stop at a
//! starred type or divide the model by `π` and start again. Residue
//! characteristics 2 and 3 take their own square and cube roots. The
//! conductor exponent is Ogg's `υ(Δ) + 1 − m`, with `m` the number of
//! components of the special fibre.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::fields::{Field, Local};
use crate::{Error, Result};

use super::{Transform, WeierstrassCurve};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kodaira {
    I0,
    I(u32),
    II,
    III,
    IV,
    I0Star,
    IStar(u32),
    IIStar,
    IIIStar,
    IVStar,
}

impl Kodaira {
    /// PARI's integer code for the type.
    pub fn pari_code(self) -> i64 {
        match self {
            Kodaira::I0 => 1,
            Kodaira::I(n) => n as i64 + 4,
            Kodaira::II => 2,
            Kodaira::III => 3,
            Kodaira::IV => 4,
            Kodaira::I0Star => -1,
            Kodaira::IStar(n) => -(n as i64) - 4,
            Kodaira::IIStar => -2,
            Kodaira::IIIStar => -3,
            Kodaira::IVStar => -4,
        }
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I0 => f.write_str("I0"),
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::II => f.write_str("II"),
            Kodaira::III => f.write_str("III"),
            Kodaira::IV => f.write_str("IV"),
            Kodaira::I0Star => f.write_str("I0*"),
            Kodaira::IStar(n) => write!(f, "I{n}*"),
            Kodaira::IIStar => f.write_str("II*"),
            Kodaira::IIIStar => f.write_str("III*"),
            Kodaira::IVStar => f.write_str("IV*"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReductionKind {
    Good,
    Multiplicative { split: bool },
    Additive,
}

#[derive(Clone, Debug)]
pub struct ReductionData<F> {
    pub prime: String,
    pub kodaira: Kodaira,
    /// Conductor exponent `f_P`.
    pub exponent: u32,
    pub tamagawa: u32,
    pub kind: ReductionKind,
    /// `υ(Δ)` of the minimal model.
    pub disc_valuation: i64,
    pub minimal_model: WeierstrassCurve<F>,
    /// Coordinate changes applied to the input, in order.
    pub transforms: Vec<Transform<F>>,
}

struct Ctx<'a, F: Field, L: Local<F>> {
    local: &'a L,
    pi: F,
    history: Vec<Transform<F>>,
    _marker: core::marker::PhantomData<F>,
}

impl<F: Field, L: Local<F>> Ctx<'_, F, L> {
    fn val(&self, x: &F) -> i64 {
        self.local.valuation(x)
    }

    fn pdiv(&self, x: &F) -> bool {
        self.val(x) > 0
    }

    fn pinv(&self, x: &F) -> Result<F> {
        self.local.residue_inverse(x)
    }

    fn preduce(&self, x: &F) -> Result<F> {
        self.local.reduce(x)
    }

    fn proot(&self, x: &F, n: u32) -> Result<F> {
        let k = self.local.residue_field();
        let r = self.local.residue(x)?;
        let root = match n {
            2 => k.sqrt(&r),
            _ => k.cbrt(&r),
        }
        .ok_or_else(|| Error::NonConvergence(format!("no {n}-th root of {x} at {}", self.local.name())))?;
        Ok(self.local.lift(&root))
    }

    fn quadroots(&self, a: &F, b: &F, c: &F) -> Result<bool> {
        let k = self.local.residue_field();
        let (a, b, c) = (self.local.residue(a)?, self.local.residue(b)?, self.local.residue(c)?);
        Ok(k.quadratic_has_root(&a, &b, &c))
    }

    fn cubicroots(&self, b: &F, c: &F, d: &F) -> Result<usize> {
        let k = self.local.residue_field();
        let (b, c, d) = (self.local.residue(b)?, self.local.residue(c)?, self.local.residue(d)?);
        Ok(k.cubic_root_count(&b, &c, &d))
    }

    fn div_pi(&self, x: &F, k: u32) -> F {
        x.div(&self.pi.pow(k)).expect("uniformizer is nonzero")
    }

    fn apply(&mut self, c: &WeierstrassCurve<F>, tr: Transform<F>) -> WeierstrassCurve<F> {
        let out = c.transform(&tr);
        self.history.push(tr);
        out
    }

    fn nonconvergence(&self, what: &str) -> Error {
        Error::NonConvergence(format!("{what} at {}", self.local.name()))
    }
}

fn n<F: Field>(k: i64) -> F {
    F::from_i64(k)
}

/// Local reduction data of `e` at the valuation `local`.
pub fn tate_local<F: Field, L: Local<F>>(e: &WeierstrassCurve<F>, local: &L) -> Result<ReductionData<F>> {
    if e.is_singular() {
        return Err(Error::Singular);
    }
    let pi = local.uniformizer();
    let p = local.characteristic();
    let mut cx = Ctx { local, pi: pi.clone(), history: Vec::new(), _marker: core::marker::PhantomData };
    let mut c = e.clone();

    // make the model integral
    let mut shift = 0i64;
    for (k, a) in [(1i64, &c.a1), (2, &c.a2), (3, &c.a3), (4, &c.a4), (6, &c.a6)] {
        if !a.is_zero() {
            let v = cx.val(a);
            if v < 0 {
                shift = shift.max((-v + k - 1) / k);
            }
        }
    }
    if shift > 0 {
        let u = pi.pow(shift as u32).inv().unwrap();
        c = cx.apply(&c, Transform::scale(u));
    }

    let half = if p == 2 { F::zero() } else { cx.pinv(&n(2))? };

    for _round in 0..64 {
        let (b2, b4, b6) = (c.b2(), c.b4(), c.b6());
        let (c4, c6) = (c.c4(), c.c6());
        let delta = c.discriminant();
        let vd = cx.val(&delta);

        if vd == 0 {
            return Ok(finish(cx, c, Kodaira::I0, 0, 1, ReductionKind::Good, vd));
        }

        // move the singular point to (0, 0)
        let (r, t) = if p == 2 {
            if cx.pdiv(&b2) {
                let r = cx.proot(&c.a4, 2)?;
                let t = cx.proot(&(((r.clone() + &c.a2) * &r + &c.a4) * &r + &c.a6), 2)?;
                (r, t)
            } else {
                let inv = cx.pinv(&c.a1)?;
                let r = inv.clone() * &c.a3;
                let t = inv * &(c.a4.clone() + &r.square());
                (r, t)
            }
        } else if p == 3 {
            let r = if cx.pdiv(&b2) { cx.proot(&(-b6.clone()), 3)? } else { -(cx.pinv(&b2)? * &b4) };
            let t = c.a1.clone() * &r + &c.a3;
            (r, t)
        } else {
            let r = if cx.pdiv(&c4) {
                -(cx.pinv(&n(12))? * &b2)
            } else {
                -(cx.pinv(&(n::<F>(12) * &c4))? * &(c6.clone() + &(b2.clone() * &c4)))
            };
            let t = -(half.clone() * &(c.a1.clone() * &r + &c.a3));
            (r, t)
        };
        let (r, t) = (cx.preduce(&r)?, cx.preduce(&t)?);
        c = cx.apply(&c, Transform::rst(r, F::zero(), t));
        if !(cx.pdiv(&c.a3) && cx.pdiv(&c.a4) && cx.pdiv(&c.a6)) {
            return Err(cx.nonconvergence("singular point not moved to the origin"));
        }

        if !cx.pdiv(&c4) {
            let split = cx.quadroots(&F::one(), &c.a1, &(-c.a2.clone()))?;
            let tamagawa = if split { vd as u32 } else if vd % 2 == 0 { 2 } else { 1 };
            return Ok(finish(cx, c, Kodaira::I(vd as u32), 1, tamagawa, ReductionKind::Multiplicative { split }, vd));
        }
        let fp = |m: i64| (vd - m) as u32;
        if cx.val(&c.a6) < 2 {
            return Ok(finish(cx, c, Kodaira::II, fp(0), 1, ReductionKind::Additive, vd));
        }
        if cx.val(&c.b8()) < 3 {
            return Ok(finish(cx, c, Kodaira::III, fp(1), 2, ReductionKind::Additive, vd));
        }
        if cx.val(&c.b6()) < 3 {
            let a3t = cx.div_pi(&c.a3, 1);
            let a6t = cx.div_pi(&c.a6, 2);
            let tam = if cx.quadroots(&F::one(), &a3t, &(-a6t))? { 3 } else { 1 };
            return Ok(finish(cx, c, Kodaira::IV, fp(2), tam, ReductionKind::Additive, vd));
        }

        // now π | a₁, a₂; π² | a₃, a₄; π³ | a₆
        let (s, t) = if p == 2 {
            let s = cx.proot(&c.a2, 2)?;
            let t = pi.clone() * &cx.proot(&cx.div_pi(&c.a6, 2), 2)?;
            (s, t)
        } else if p == 3 {
            (c.a1.clone(), c.a3.clone())
        } else {
            (-(c.a1.clone() * &half), -(c.a3.clone() * &half))
        };
        c = cx.apply(&c, Transform::rst(F::zero(), s, t));
        if !(cx.pdiv(&c.a1) && cx.pdiv(&c.a2) && cx.val(&c.a3) >= 2 && cx.val(&c.a4) >= 2 && cx.val(&c.a6) >= 3) {
            return Err(cx.nonconvergence("second change of coordinates"));
        }

        let b = cx.div_pi(&c.a2, 1);
        let cc = cx.div_pi(&c.a4, 2);
        let d = cx.div_pi(&c.a6, 3);
        let (bb, ccc, bc) = (b.square(), cc.square(), b.clone() * &cc);
        let w = n::<F>(27) * &d.square() - &(bb.clone() * &ccc) + &(n::<F>(4) * &b * &bb * &d)
            - &(n::<F>(18) * &bc * &d)
            + &(n::<F>(4) * &cc * &ccc);
        let x = n::<F>(3) * &cc - &bb;
        let sw = if cx.pdiv(&w) {
            if cx.pdiv(&x) {
                3
            } else {
                2
            }
        } else {
            1
        };

        if sw == 1 {
            let tam = 1 + cx.cubicroots(&b, &cc, &d)? as u32;
            return Ok(finish(cx, c, Kodaira::I0Star, fp(4), tam, ReductionKind::Additive, vd));
        }

        if sw == 2 {
            // double root: move it to T = 0
            let r = if p == 2 {
                cx.proot(&cc, 2)?
            } else if p == 3 {
                cc.clone() * &cx.pinv(&b)?
            } else {
                (bc.clone() - &(n::<F>(9) * &d)) * &cx.pinv(&(n::<F>(2) * &x))?
            };
            let r = pi.clone() * &cx.preduce(&r)?;
            c = cx.apply(&c, Transform::rst(r, F::zero(), F::zero()));
            let (mut ix, mut iy) = (3u32, 3u32);
            let mut mx = pi.square();
            let mut my = mx.clone();
            let tamagawa;
            loop {
                let a3t = c.a3.div(&my).unwrap();
                let a6t = c.a6.div(&(mx.clone() * &my)).unwrap();
                if cx.pdiv(&(a3t.square() + &(n::<F>(4) * &a6t))) {
                    let t = if p == 2 {
                        my.clone() * &cx.proot(&a6t, 2)?
                    } else {
                        my.clone() * &cx.preduce(&(-(a3t.clone() * &half)))?
                    };
                    c = cx.apply(&c, Transform::rst(F::zero(), F::zero(), t));
                    my = my * &pi;
                    iy += 1;
                    let a2t = cx.div_pi(&c.a2, 1);
                    let a4t = c.a4.div(&(pi.clone() * &mx)).unwrap();
                    let a6t = c.a6.div(&(mx.clone() * &my)).unwrap();
                    if cx.pdiv(&(a4t.square() - &(n::<F>(4) * &a6t * &a2t))) {
                        let r = if p == 2 {
                            mx.clone() * &cx.proot(&(a6t.clone() * &cx.pinv(&a2t)?), 2)?
                        } else {
                            mx.clone() * &cx.preduce(&(-(a4t.clone() * &cx.pinv(&(n::<F>(2) * &a2t))?)))?
                        };
                        c = cx.apply(&c, Transform::rst(r, F::zero(), F::zero()));
                        mx = mx * &pi;
                        ix += 1;
                    } else {
                        tamagawa = if cx.quadroots(&a2t, &a4t, &a6t)? { 4 } else { 2 };
                        break;
                    }
                } else {
                    tamagawa = if cx.quadroots(&F::one(), &a3t, &(-a6t))? { 4 } else { 2 };
                    break;
                }
                if ix + iy > 200 {
                    return Err(cx.nonconvergence("I_n* subloop"));
                }
            }
            let m = ix + iy - 5;
            let fexp = (vd - (ix + iy) as i64 + 1) as u32;
            return Ok(finish(cx, c, Kodaira::IStar(m), fexp, tamagawa, ReductionKind::Additive, vd));
        }

        // triple root: move it to T = 0
        let r = if p == 2 {
            b.clone()
        } else if p == 3 {
            cx.proot(&(-d.clone()), 3)?
        } else {
            -(b.clone() * &cx.pinv(&n(3))?)
        };
        let r = pi.clone() * &cx.preduce(&r)?;
        c = cx.apply(&c, Transform::rst(r, F::zero(), F::zero()));
        if cx.val(&c.a2) < 2 || cx.val(&c.a4) < 3 || cx.val(&c.a6) < 4 {
            return Err(cx.nonconvergence("triple root not moved to the origin"));
        }
        let a3t = cx.div_pi(&c.a3, 2);
        let a6t = cx.div_pi(&c.a6, 4);
        if !cx.pdiv(&(a3t.square() + &(n::<F>(4) * &a6t))) {
            let tam = if cx.quadroots(&F::one(), &a3t, &(-a6t))? { 3 } else { 1 };
            return Ok(finish(cx, c, Kodaira::IVStar, fp(6), tam, ReductionKind::Additive, vd));
        }
        let t = if p == 2 {
            -(pi.square() * &cx.proot(&a6t, 2)?)
        } else {
            pi.square() * &cx.preduce(&(-(a3t.clone() * &half)))?
        };
        c = cx.apply(&c, Transform::rst(F::zero(), F::zero(), t));
        if cx.val(&c.a4) < 4 {
            return Ok(finish(cx, c, Kodaira::IIIStar, fp(7), 2, ReductionKind::Additive, vd));
        }
        if cx.val(&c.a6) < 6 {
            return Ok(finish(cx, c, Kodaira::IIStar, fp(8), 1, ReductionKind::Additive, vd));
        }
        // the model was not minimal
        c = cx.apply(&c, Transform::scale(pi.clone()));
    }
    Err(cx.nonconvergence("too many rescalings"))
}

fn finish<F: Field, L: Local<F>>(
    cx: Ctx<'_, F, L>,
    c: WeierstrassCurve<F>,
    kodaira: Kodaira,
    exponent: u32,
    tamagawa: u32,
    kind: ReductionKind,
    disc_valuation: i64,
) -> ReductionData<F> {
    ReductionData {
        prime: cx.local.name(),
        kodaira,
        exponent,
        tamagawa,
        kind,
        disc_valuation,
        minimal_model: c,
        transforms: cx.history,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{q, Rational, RationalPrime};

    fn curve(a: [i64; 5]) -> WeierstrassCurve<Rational> {
        WeierstrassCurve::new(q(a[0]), q(a[1]), q(a[2]), q(a[3]), q(a[4]))
    }

    /// `(a-invariants, p, f_p, PARI Kodaira code, c_p)` from PARI's `elllocalred`.
    const REFERENCE: &[([i64; 5], u64, u32, i64, u32)] = &[
        ([0, -1, 1, -10, -20], 11, 1, 9, 5),
        ([0, 0, 1, -1, 0], 37, 1, 5, 1),
        ([0, 0, 1, -1, 0], 2, 0, 1, 1),
        ([0, 0, 0, -1, 0], 2, 5, 3, 2),
        ([0, 0, 0, 0, 1], 2, 2, 4, 3),
        ([0, 0, 0, 0, 1], 3, 2, 3, 2),
        ([0, 0, 0, 1, 0], 2, 6, 2, 1),
        ([0, 1, 1, 0, 0], 3, 0, 1, 1),
        ([0, 0, 1, 0, 0], 3, 3, 2, 1),
        ([1, -1, 1, -1, 0], 7, 0, 1, 1),
        ([0, 0, 0, -9375, 0], 5, 2, 3, 2),
        ([0, 0, 0, -15, 0], 5, 2, 3, 2),
        ([0, 0, 0, 0, 16], 2, 0, 1, 1),
        ([0, 0, 0, 0, 7], 7, 2, 2, 1),
        ([0, 0, 0, 0, 49], 7, 2, 4, 3),
        ([0, 0, 0, 0, 343], 7, 2, -1, 4),
        ([0, 0, 0, 0, 2401], 7, 2, -4, 3),
        ([0, 0, 0, 0, 16807], 7, 2, -2, 1),
        ([0, 0, 0, 0, 117649], 7, 0, 1, 1),
        ([0, 0, 0, 7, 0], 7, 2, 3, 2),
        ([0, 0, 0, 49, 0], 7, 2, -1, 2),
        ([0, 0, 0, 343, 0], 7, 2, -3, 2),
        ([0, 7, 0, 16807, 0], 7, 2, -10, 4),
        ([1, 0, 0, 0, 8], 2, 1, 7, 3),
        ([0, 0, 0, -2, 0], 2, 8, 3, 2),
        ([0, 0, 0, 4, 0], 2, 5, -7, 4),
        ([0, 0, 0, 0, -2], 2, 6, 2, 1),
        ([0, 0, 0, -3, 6], 3, 3, 2, 1),
        ([1, 1, 0, -3, 3], 3, 1, 5, 1),
        ([0, 0, 0, 2, 0], 2, 8, 3, 2),
        ([0, 0, 0, 0, 2], 2, 6, 2, 1),
        ([0, -1, 0, -4, 4], 2, 3, -5, 4),
        ([1, 0, 1, -3, -3], 3, 0, 1, 1),
        ([0, 0, 0, 0, -432], 3, 3, -4, 3),
        ([0, 0, 0, 0, -432], 2, 0, 1, 1),
        ([1, -1, 0, -32, -60], 2, 1, 6, 2),
        ([0, 0, 0, 48, 0], 2, 5, 3, 2),
        ([0, 0, 0, -48, 0], 3, 2, 3, 2),
        ([0, 1, 0, 16, 0], 2, 0, 1, 1),
        ([0, 0, 0, 0, 128], 2, 6, 2, 1),
        ([0, 0, 0, 8, 0], 2, 8, -3, 2),
        ([0, 0, 0, -8, 0], 2, 8, -3, 2),
        ([0, 0, 0, 0, -8], 2, 6, -1, 2),
        ([0, 0, 0, 0, 32], 2, 6, -2, 1),
    ];

    #[test]
    fn agrees_with_reference_over_q() {
        for &(a, p, f, kod, c) in REFERENCE {
            let r = tate_local(&curve(a), &RationalPrime::new(p)).unwrap();
            assert_eq!((r.exponent, r.kodaira.pari_code(), r.tamagawa), (f, kod, c), "{a:?} at {p}");
            // idempotent on the minimal model
            let again = tate_local(&r.minimal_model, &RationalPrime::new(p)).unwrap();
            assert_eq!((again.exponent, again.kodaira), (r.exponent, r.kodaira));
            assert_eq!(again.disc_valuation, r.disc_valuation);
        }
    }

    #[test]
    fn kinds() {
        let r = tate_local(&curve([0, -1, 1, -10, -20]), &RationalPrime::new(11)).unwrap();
        assert_eq!(r.kind, ReductionKind::Multiplicative { split: true });
        let r = tate_local(&curve([0, 0, 0, 0, 7]), &RationalPrime::new(7)).unwrap();
        assert_eq!(r.kind, ReductionKind::Additive);
        assert!(tate_local(&curve([0, 2, 0, 1, 0]), &RationalPrime::new(2)).is_err());
    }
}
