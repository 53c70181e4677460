use core::fmt;

use crate::fields::Field;

/// `y² + a₁xy + a₃y = x³ + a₂x² + a₄x + a₆` over `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCurve<F> {
    pub a1: F,
    pub a2: F,
    pub a3: F,
    pub a4: F,
    pub a6: F,
}

/// The change of variables `x = u²x' + r`, `y = u³y' + su²x' + t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transform<F> {
    pub u: F,
    pub r: F,
    pub s: F,
    pub t: F,
}

impl<F: Field> Transform<F> {
    pub fn rst(r: F, s: F, t: F) -> Self {
        Transform { u: F::one(), r, s, t }
    }

    pub fn scale(u: F) -> Self {
        Transform { u, r: F::zero(), s: F::zero(), t: F::zero() }
    }
}

fn i<F: Field>(n: i64) -> F {
    F::from_i64(n)
}

impl<F: Field> WeierstrassCurve<F> {
    pub fn new(a1: F, a2: F, a3: F, a4: F, a6: F) -> Self {
        WeierstrassCurve { a1, a2, a3, a4, a6 }
    }

    /// `y² = x³ + a₂x² + a₄x + a₆`.
    pub fn short(a2: F, a4: F, a6: F) -> Self {
        WeierstrassCurve::new(F::zero(), a2, F::zero(), a4, a6)
    }

    pub fn coefficients(&self) -> [&F; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn b2(&self) -> F {
        self.a1.square() + i::<F>(4) * &self.a2
    }

    pub fn b4(&self) -> F {
        self.a1.clone() * &self.a3 + i::<F>(2) * &self.a4
    }

    pub fn b6(&self) -> F {
        self.a3.square() + i::<F>(4) * &self.a6
    }

    pub fn b8(&self) -> F {
        let a1 = &self.a1;
        self.a1.square() * &self.a6 + i::<F>(4) * &self.a2 * &self.a6
            - a1.clone() * &self.a3 * &self.a4
            + self.a2.clone() * &self.a3.square()
            - self.a4.square()
    }

    pub fn c4(&self) -> F {
        self.b2().square() - i::<F>(24) * &self.b4()
    }

    pub fn c6(&self) -> F {
        let b2 = self.b2();
        -(b2.clone() * &b2 * &b2) + i::<F>(36) * &b2 * &self.b4() - i::<F>(216) * &self.b6()
    }

    pub fn discriminant(&self) -> F {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -(b2.square() * &b8) - i::<F>(8) * &b4.pow(3) - i::<F>(27) * &b6.square()
            + i::<F>(9) * &b2 * &b4 * &b6
    }

    /// `c₄³/Δ`; `None` for a singular curve.
    pub fn j_invariant(&self) -> Option<F> {
        self.c4().pow(3).div(&self.discriminant())
    }

    pub fn is_singular(&self) -> bool {
        self.discriminant().is_zero()
    }

    /// Applies `x = u²x' + r`, `y = u³y' + su²x' + t`.
    pub fn transform(&self, tr: &Transform<F>) -> Self {
        let Transform { u, r, s, t } = tr;
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let two = i::<F>(2);
        let three = i::<F>(3);
        let na1 = a1.clone() + &(two.clone() * s);
        let na2 = a2.clone() - &(s.clone() * a1) + &(three.clone() * r) - &s.square();
        let na3 = a3.clone() + &(r.clone() * a1) + &(two.clone() * t);
        let na4 = a4.clone() - &(s.clone() * a3) + &(two.clone() * r * a2)
            - &((t.clone() + &(r.clone() * s)) * a1)
            + &(three * &r.square())
            - &(two * s * t);
        let na6 = a6.clone() + &(r.clone() * a4) + &(r.square() * a2) + &r.pow(3)
            - &(t.clone() * a3)
            - &t.square()
            - &(r.clone() * t * a1);
        let c = WeierstrassCurve::new(na1, na2, na3, na4, na6);
        if u.is_one() {
            return c;
        }
        let ui = u.inv().expect("u must be nonzero");
        WeierstrassCurve::new(
            c.a1 * &ui,
            c.a2 * &ui.pow(2),
            c.a3 * &ui.pow(3),
            c.a4 * &ui.pow(4),
            c.a6 * &ui.pow(6),
        )
    }

    /// Twist by `δ`: `y² = x³ + δ(b₂/4)x² + δ²(b₄/2)x + δ³(b₆/4)` in characteristic 0.
    pub fn quadratic_twist(&self, d: &F) -> Self {
        let quarter = F::from_rational(crate::fields::qf(1, 4));
        let half = F::from_rational(crate::fields::qf(1, 2));
        WeierstrassCurve::short(
            d.clone() * &self.b2() * &quarter,
            d.square() * &self.b4() * &half,
            d.pow(3) * &self.b6() * &quarter,
        )
    }

    /// Maps every coefficient through `f`, e.g. an embedding of fields.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> WeierstrassCurve<G> {
        WeierstrassCurve::new(f(&self.a1), f(&self.a2), f(&self.a3), f(&self.a4), f(&self.a6))
    }
}

impl<F: Field> fmt::Display for WeierstrassCurve<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}, {}]", self.a1, self.a2, self.a3, self.a4, self.a6)
    }
}
