use core::array;
use core::fmt;

use alloc::vec::Vec;
use num_traits::One;

use super::{forward_ops, linalg, q, Field, QuadElt, Rational};

/// `c₀ + c₁θ + c₂θ² + c₃θ³` in `K = Q(θ)`, `θ⁴ − 5θ² + 5 = 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuarticElt {
    pub c: [Rational; 4],
}

/// The real roots of `x⁴ − 5x² + 5` as `s^k(θ)` for `k = 0..4`, where `s`
/// sends `θ` to `θ³ − 3θ`. Index 0 is the embedding used for numerics.
pub(crate) fn real_roots() -> [f64; 4] {
    let t = libm::sqrt((5.0 + libm::sqrt(5.0)) / 2.0);
    let s = t * t * t - 3.0 * t;
    [t, s, -t, -s]
}

impl QuarticElt {
    pub fn new(c: [Rational; 4]) -> Self {
        QuarticElt { c }
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        QuarticElt::new(c.map(q))
    }

    pub fn theta() -> Self {
        QuarticElt::from_ints([0, 1, 0, 0])
    }

    /// `√5 = 2θ² − 5`.
    pub fn sqrt5() -> Self {
        QuarticElt::from_ints([-5, 0, 2, 0])
    }

    /// The embedding `Q(√5) → K`.
    pub fn from_quad(z: &QuadElt) -> Self {
        QuarticElt::from_rational(z.x.clone()) + QuarticElt::sqrt5().scale(&z.y)
    }

    /// Inverse of [`from_quad`](Self::from_quad), if `self` lies in `Q(√5)`.
    pub fn to_quad(&self) -> Option<QuadElt> {
        if !self.c[1].is_zero() || !self.c[3].is_zero() {
            return None;
        }
        let y = &self.c[2] / q(2);
        let x = &self.c[0] + q(5) * &y;
        Some(QuadElt::new(x, y))
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Field::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.c[0])
    }

    pub fn scale(&self, k: &Rational) -> Self {
        QuarticElt::new(array::from_fn(|i| &self.c[i] * k))
    }

    /// `Σ cᵢ ρⁱ` for `ρ ∈ K`: the image of `self` under `θ ↦ ρ`.
    pub fn eval_at(&self, rho: &QuarticElt) -> QuarticElt {
        let mut acc = QuarticElt::from_rational(self.c[3].clone());
        for i in (0..3).rev() {
            acc = acc * rho + &QuarticElt::from_rational(self.c[i].clone());
        }
        acc
    }

    /// The four Galois conjugates, in the order of `s^k`, `k = 0..4`.
    pub fn conjugates(&self) -> [QuarticElt; 4] {
        let roots = super::theta_roots();
        array::from_fn(|k| self.eval_at(&roots[k]))
    }

    /// `Nm_{K/Q}` as the product of the four conjugates.
    pub fn norm(&self) -> Rational {
        let [a, b, c, d] = self.conjugates();
        let n = a * &b * &c * &d;
        debug_assert!(n.is_rational());
        n.c[0].clone()
    }

    pub fn trace(&self) -> Rational {
        // Tr(θ^k) for k = 0..3 is 4, 0, 10, 0.
        q(4) * &self.c[0] + q(10) * &self.c[2]
    }

    /// Matrix of multiplication by `self` on the power basis (columns are
    /// `self·θʲ`).
    pub fn mult_matrix(&self) -> linalg::Matrix {
        let mut cols = Vec::with_capacity(4);
        let mut b = self.clone();
        for _ in 0..4 {
            cols.push(b.c.clone());
            b = b * QuarticElt::theta();
        }
        (0..4).map(|i| (0..4).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// Value under the real embedding `θ ↦ s^k(θ)`.
    pub fn to_f64_at(&self, k: usize) -> f64 {
        let t = real_roots()[k];
        let mut acc = 0.0;
        for i in (0..4).rev() {
            acc = acc * t + super::rational_to_f64(&self.c[i]);
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        self.to_f64_at(0)
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> num_bigint::BigInt {
        self.c.iter().fold(num_bigint::BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()))
    }

    fn add_ref(&self, o: &Self) -> Self {
        QuarticElt::new(array::from_fn(|i| &self.c[i] + &o.c[i]))
    }

    fn sub_ref(&self, o: &Self) -> Self {
        QuarticElt::new(array::from_fn(|i| &self.c[i] - &o.c[i]))
    }

    fn mul_ref(&self, o: &Self) -> Self {
        let mut prod: [Rational; 7] = array::from_fn(|_| Rational::zero());
        for i in 0..4 {
            if self.c[i].is_zero() {
                continue;
            }
            for j in 0..4 {
                if !o.c[j].is_zero() {
                    prod[i + j] += &self.c[i] * &o.c[j];
                }
            }
        }
        // θ^k = 5θ^{k-2} − 5θ^{k-4}
        for k in (4..7).rev() {
            if prod[k].is_zero() {
                continue;
            }
            let t = core::mem::take(&mut prod[k]);
            prod[k - 2] += q(5) * &t;
            prod[k - 4] -= q(5) * &t;
        }
        let [c0, c1, c2, c3, ..] = prod;
        QuarticElt::new([c0, c1, c2, c3])
    }

    fn neg_ref(&self) -> Self {
        QuarticElt::new(array::from_fn(|i| -&self.c[i]))
    }
}

forward_ops!(QuarticElt);

impl Field for QuarticElt {
    fn zero() -> Self {
        QuarticElt::from_ints([0; 4])
    }
    fn one() -> Self {
        QuarticElt::from_ints([1, 0, 0, 0])
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(Field::is_zero)
    }
    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(QuarticElt::from_rational(r.recip()));
        }
        let one = [q(1), q(0), q(0), q(0)];
        let x = linalg::solve(&self.mult_matrix(), &one)?;
        Some(QuarticElt::new([x[0].clone(), x[1].clone(), x[2].clone(), x[3].clone()]))
    }
    fn from_rational(r: Rational) -> Self {
        QuarticElt::new([r, Rational::zero(), Rational::zero(), Rational::zero()])
    }
}

impl fmt::Display for QuarticElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::fmt_terms(
            f,
            &[(&self.c[0], ""), (&self.c[1], "θ"), (&self.c[2], "θ²"), (&self.c[3], "θ³")],
        )
    }
}
