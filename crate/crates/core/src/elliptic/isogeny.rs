//! The 2-isogeny `μ: σE → E` and its dual, checked as identities in the
//! function field of the source curve.
//!
//! Elements of the function field of `y² = f(x)` are kept as `(p + q·y)/d`
//! with `p, q, d` polynomials in `x`; `y²` is always replaced by `f`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::check::{Check, Claim};
use crate::descent::phi12;
use crate::fields::{Field, OctElt, QuadElt, QuarticElt};
use crate::{Error, Result};

use super::{conjugate_frey_curve, frey_curve, WeierstrassCurve};

type Poly<F> = Vec<F>;

fn trim<F: Field>(mut p: Poly<F>) -> Poly<F> {
    while p.last().is_some_and(Field::is_zero) {
        p.pop();
    }
    p
}

fn padd<F: Field>(a: &[F], b: &[F]) -> Poly<F> {
    let n = a.len().max(b.len());
    let z = F::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z).clone() + b.get(i).unwrap_or(&z)).collect())
}

fn pneg<F: Field>(a: &[F]) -> Poly<F> {
    a.iter().map(|c| -c.clone()).collect()
}

fn pmul<F: Field>(a: &[F], b: &[F]) -> Poly<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![F::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] = r[i + j].clone() + x.clone() * y;
        }
    }
    trim(r)
}

fn degree<F>(p: &[F]) -> Option<usize> {
    p.len().checked_sub(1)
}

fn fmt_poly<F: Field>(p: &[F]) -> String {
    let terms: Vec<String> = p
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| match i {
            0 => format!("({c})"),
            1 => format!("({c})x"),
            _ => format!("({c})x^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// `(p + q·y)/d` in the function field of `y² = f(x)`.
#[derive(Clone, Debug)]
struct FnElt<F> {
    p: Poly<F>,
    q: Poly<F>,
    d: Poly<F>,
}

struct FunctionField<F> {
    f: Poly<F>,
}

impl<F: Field> FunctionField<F> {
    /// Function field of a curve `y² = x³ + a₂x² + a₄x + a₆`.
    fn of(e: &WeierstrassCurve<F>) -> Result<Self> {
        if !e.a1.is_zero() || !e.a3.is_zero() {
            return Err(Error::Unsupported("function field needs a₁ = a₃ = 0".into()));
        }
        Ok(FunctionField { f: vec![e.a6.clone(), e.a4.clone(), e.a2.clone(), F::one()] })
    }

    fn constant(&self, c: F) -> FnElt<F> {
        FnElt { p: trim(vec![c]), q: Vec::new(), d: vec![F::one()] }
    }

    fn poly(&self, p: Poly<F>) -> FnElt<F> {
        FnElt { p: trim(p), q: Vec::new(), d: vec![F::one()] }
    }

    fn x(&self) -> FnElt<F> {
        self.poly(vec![F::zero(), F::one()])
    }

    fn y(&self) -> FnElt<F> {
        FnElt { p: Vec::new(), q: vec![F::one()], d: vec![F::one()] }
    }

    fn add(&self, a: &FnElt<F>, b: &FnElt<F>) -> FnElt<F> {
        FnElt {
            p: padd(&pmul(&a.p, &b.d), &pmul(&b.p, &a.d)),
            q: padd(&pmul(&a.q, &b.d), &pmul(&b.q, &a.d)),
            d: pmul(&a.d, &b.d),
        }
    }

    fn neg(&self, a: &FnElt<F>) -> FnElt<F> {
        FnElt { p: pneg(&a.p), q: pneg(&a.q), d: a.d.clone() }
    }

    fn sub(&self, a: &FnElt<F>, b: &FnElt<F>) -> FnElt<F> {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &FnElt<F>, b: &FnElt<F>) -> FnElt<F> {
        FnElt {
            p: padd(&pmul(&a.p, &b.p), &pmul(&pmul(&a.q, &b.q), &self.f)),
            q: padd(&pmul(&a.p, &b.q), &pmul(&a.q, &b.p)),
            d: pmul(&a.d, &b.d),
        }
    }

    fn inv(&self, a: &FnElt<F>) -> Option<FnElt<F>> {
        // 1/(p + qy) = (p − qy)/(p² − q²f)
        let n = padd(&pmul(&a.p, &a.p), &pneg(&pmul(&pmul(&a.q, &a.q), &self.f)));
        if n.is_empty() {
            return None;
        }
        Some(FnElt { p: pmul(&a.p, &a.d), q: pneg(&pmul(&a.q, &a.d)), d: n })
    }

    fn div(&self, a: &FnElt<F>, b: &FnElt<F>) -> Option<FnElt<F>> {
        Some(self.mul(a, &self.inv(b)?))
    }

    fn eval(&self, p: &[F], at: &FnElt<F>) -> FnElt<F> {
        let mut acc = self.constant(F::zero());
        for c in p.iter().rev() {
            acc = self.add(&self.mul(&acc, at), &self.constant(c.clone()));
        }
        acc
    }

    /// The numerator pair `(p, q)` of `a − b`; both empty iff `a = b`.
    fn residual(&self, a: &FnElt<F>, b: &FnElt<F>) -> (Poly<F>, Poly<F>) {
        let r = self.sub(a, b);
        (r.p, r.q)
    }

    /// `y² + a₁xy + a₃y − x³ − a₂x² − a₄x − a₆` at `(x, y)`.
    fn curve_residual(&self, e: &WeierstrassCurve<F>, x: &FnElt<F>, y: &FnElt<F>) -> (Poly<F>, Poly<F>) {
        let lhs = self.add(
            &self.mul(y, y),
            &self.mul(y, &self.add(&self.mul(&self.constant(e.a1.clone()), x), &self.constant(e.a3.clone()))),
        );
        let cubic = vec![e.a6.clone(), e.a4.clone(), e.a2.clone(), F::one()];
        self.residual(&lhs, &self.eval(&cubic, x))
    }
}

/// An isogeny `(x, y) ↦ (x_num(x)/x_den(x), y·y_num(x)/y_den(x))` between
/// curves with `a₁ = a₃ = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct IsogenyMap<F> {
    pub source: WeierstrassCurve<F>,
    pub target: WeierstrassCurve<F>,
    pub x_num: Vec<F>,
    pub x_den: Vec<F>,
    pub y_num: Vec<F>,
    pub y_den: Vec<F>,
    pub degree: u32,
}

impl<F: Field> IsogenyMap<F> {
    /// The map `(x, y) ↦ (−y²/2x², c·(y/x²)(x² − a₄))` on `y² = x³ + a₂x² + a₄x`.
    ///
    /// After replacing `y²` the `x`-map is `−(x² + a₂x + a₄)/(2x)`, a rational
    /// function of degree 2 with poles exactly at `(0, 0)` and `O`.
    pub fn two_isogeny(source: WeierstrassCurve<F>, target: WeierstrassCurve<F>, c: F) -> Self {
        let a4 = source.a4.clone();
        let a2 = source.a2.clone();
        IsogenyMap {
            x_num: pneg(&[a4.clone(), a2, F::one()]),
            x_den: vec![F::zero(), F::from_i64(2)],
            y_num: pmul(&[c], &[-a4, F::zero(), F::one()]),
            y_den: vec![F::zero(), F::zero(), F::one()],
            degree: 2,
            source,
            target,
        }
    }

    /// Image of an affine point; `None` is the point at infinity.
    pub fn apply(&self, x: &F, y: &F) -> Option<(F, F)> {
        let ev = |p: &[F]| p.iter().rev().fold(F::zero(), |acc, c| acc * x + c);
        let xi = ev(&self.x_num).div(&ev(&self.x_den))?;
        let yi = y.clone() * ev(&self.y_num).div(&ev(&self.y_den))?;
        Some((xi, yi))
    }

    fn image(&self, ff: &FunctionField<F>, x: &FnElt<F>, y: &FnElt<F>) -> Result<(FnElt<F>, FnElt<F>)> {
        let fail = || Error::IdentityFailure("isogeny undefined on the generic point".into());
        let xi = ff.div(&ff.eval(&self.x_num, x), &ff.eval(&self.x_den, x)).ok_or_else(fail)?;
        let yi = ff.mul(y, &ff.div(&ff.eval(&self.y_num, x), &ff.eval(&self.y_den, x)).ok_or_else(fail)?);
        Ok((xi, yi))
    }

    /// Residual of the target equation at the image of the generic point.
    fn residual(&self) -> Result<(Poly<F>, Poly<F>)> {
        let ff = FunctionField::of(&self.source)?;
        let (xi, yi) = self.image(&ff, &ff.x(), &ff.y())?;
        Ok(ff.curve_residual(&self.target, &xi, &yi))
    }

    /// The kernel is `{O, (0,0)}` and the degree is 2: the `x`-map is
    /// `−(x² + a₂x + a₄)/(2x)` in lowest terms.
    fn kernel_is_two_torsion(&self) -> bool {
        let constant_term = self.x_num.first().cloned().unwrap_or_else(F::zero);
        self.source.a6.is_zero()
            && degree(&self.x_num) == Some(2)
            && degree(&self.x_den) == Some(1)
            && self.x_den[0].is_zero()
            && !constant_term.is_zero()
    }
}

/// `+1` if `ν∘μ = [2]`, `−1` if `ν∘μ = [−2]`, `None` otherwise.
fn composition_sign<F: Field>(mu: &IsogenyMap<F>, nu: &IsogenyMap<F>) -> Result<Option<i32>> {
    let e = &mu.source;
    let ff = FunctionField::of(e)?;
    let (x1, y1) = mu.image(&ff, &ff.x(), &ff.y())?;
    let (x2, y2) = nu.image(&ff, &x1, &y1)?;
    // duplication on y² = x³ + a₂x² + a₄x + a₆
    let (x, y) = (ff.x(), ff.y());
    let slope_num = ff.poly(vec![e.a4.clone(), e.a2.clone() + &e.a2, F::from_i64(3)]);
    let lambda = ff.div(&slope_num, &ff.mul(&ff.constant(F::from_i64(2)), &y)).unwrap();
    let xd = ff.sub(
        &ff.sub(&ff.mul(&lambda, &lambda), &ff.constant(e.a2.clone())),
        &ff.mul(&ff.constant(F::from_i64(2)), &x),
    );
    let yd = ff.sub(&ff.mul(&lambda, &ff.sub(&x, &xd)), &y);
    let (px, qx) = ff.residual(&x2, &xd);
    if !px.is_empty() || !qx.is_empty() {
        return Ok(None);
    }
    let (p, q) = ff.residual(&y2, &yd);
    if p.is_empty() && q.is_empty() {
        return Ok(Some(1));
    }
    let (p, q) = ff.residual(&y2, &ff.neg(&yd));
    Ok((p.is_empty() && q.is_empty()).then_some(-1))
}

fn quad_to_oct(z: &QuadElt) -> OctElt {
    OctElt::from_k(QuarticElt::from_quad(z))
}

/// `μ: σE → E` and `μ̂: E → σE` over `Q(√5, √−2)`.
///
/// `μ(x,y) = (−y²/2x², (√−2/4)(y/x²)(ωφ₂ + x²))` and
/// `μ̂(x,y) = (−y²/2x², −(√−2/4)(y/x²)(ω̄φ₁ + x²))`.
pub fn frey_isogenies(a: i64, b: i64) -> Result<(IsogenyMap<OctElt>, IsogenyMap<OctElt>)> {
    let e = frey_curve(a, b)?.map(quad_to_oct);
    let se = conjugate_frey_curve(a, b)?.map(quad_to_oct);
    let (p1, p2) = phi12(a, b);
    // the source a₄ is −ωφ₂ (resp. −ω̄φ₁), so x² − a₄ is the factor above
    debug_assert_eq!(se.a4, -quad_to_oct(&(QuadElt::omega() * &p2)));
    debug_assert_eq!(e.a4, -quad_to_oct(&(QuadElt::omega_bar() * &p1)));
    let c = quarter_sqrt_m2();
    let mu = IsogenyMap::two_isogeny(se.clone(), e.clone(), c.clone());
    let mu_hat = IsogenyMap::two_isogeny(e, se, -c);
    Ok((mu, mu_hat))
}

fn quarter_sqrt_m2() -> OctElt {
    OctElt::sqrt_m2().div(&OctElt::from_i64(4)).unwrap()
}

fn map_check<F: Field>(claim: Claim, name: &str, m: &IsogenyMap<F>) -> Result<Check> {
    let (p, q) = m.residual()?;
    if !p.is_empty() || !q.is_empty() {
        return Ok(Check::fail(
            claim,
            format!("{name}: residual {} + ({})·y", fmt_poly(&p), fmt_poly(&q)),
        ));
    }
    let kernel = m.kernel_is_two_torsion();
    Ok(Check::verdict(
        claim,
        kernel && m.degree == 2,
        if kernel {
            format!("{name} maps onto the target curve; degree 2, kernel {{O, (0,0)}}")
        } else {
            format!("{name} maps onto the target curve but its kernel is not {{O, (0,0)}}")
        },
    ))
}

/// Checks `μ` and `μ̂` symbolically, along with `μ∘μ̂ = [±2]` on `E`.
pub fn verify_isogeny(a: i64, b: i64) -> Result<Vec<Check>> {
    let (mu, mu_hat) = frey_isogenies(a, b)?;
    let mut out = Vec::new();
    out.push(map_check(Claim::Isogeny, &format!("μ for ({a}, {b})"), &mu)?);
    let dual = map_check(Claim::DualIsogeny, &format!("μ̂ for ({a}, {b})"), &mu_hat)?;
    if !dual.passed() {
        out.push(dual);
        return Ok(out);
    }
    let sign = composition_sign(&mu_hat, &mu)?;
    out.push(match sign {
        Some(s) => Check::pass(
            Claim::DualIsogeny,
            format!("μ̂ for ({a}, {b}) maps onto σE and μ∘μ̂ = [{}] on E", 2 * s),
        ),
        None => Check::fail(Claim::DualIsogeny, format!("μ∘μ̂ is not [±2] on E for ({a}, {b})")),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn frey_isogenies_hold() {
        for (a, b) in [(1, 1), (1, 0), (1, 2), (3, 5), (1, -1), (-7, 4)] {
            let checks = verify_isogeny(a, b).unwrap();
            assert_eq!(checks.len(), 2);
            assert!(checks.iter().all(Check::passed), "{checks:?}");
        }
    }

    #[test]
    fn kernel_point_and_wrong_target() {
        let (mu, _) = frey_isogenies(1, 1).unwrap();
        assert_eq!(mu.apply(&OctElt::zero(), &OctElt::zero()), None);
        // pointing μ at σE itself must leave a residual
        let bad = IsogenyMap::two_isogeny(mu.source.clone(), mu.source.clone(), quarter_sqrt_m2());
        let (p, q) = bad.residual().unwrap();
        assert!(!p.is_empty() || !q.is_empty());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(8))]
        #[test]
        fn random_pairs(a in -40i64..40, b in -40i64..40) {
            prop_assume!(crate::arith::gcd(a as i128, b as i128) == 1);
            let checks = verify_isogeny(a, b).unwrap();
            prop_assert!(checks.iter().all(Check::passed));
        }
    }
}
