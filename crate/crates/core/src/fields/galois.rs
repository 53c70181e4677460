//! Automorphisms of `K` and of `K(√−2)`.
//!
//! `Gal(K/Q)` is cyclic of order 4, generated by `s: θ ↦ θ³ − 3θ = √5/θ`.
//! Automorphisms of `K(√−2)` are pairs `(s^k, ±)` acting on `√−2` by the sign.

use alloc::vec::Vec;
use core::fmt;

use super::linalg::{self, Matrix};
use super::{q, Field, OctElt, QuarticElt};

/// Roots of `x⁴ − 5x² + 5` in `K`, ordered as `s^k(θ)`, `k = 0..4`.
///
/// Found as `±θ` and `±√5·θ⁻¹`: the roots of `x² = (5 ± √5)/2` are swapped
/// by `θ ↦ √5/θ` because `θ²·(5/θ²) = 5`.
pub fn theta_roots() -> [QuarticElt; 4] {
    let t = QuarticElt::theta();
    // θ(θ³ − 5θ) = −5
    let t_inv = (t.pow(3) - t.scale(&q(5))).scale(&super::qf(-1, 5));
    let rho = QuarticElt::sqrt5() * &t_inv;
    [t.clone(), rho.clone(), -t, -rho]
}

/// An automorphism of `K`, stored as its matrix on the power basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KAut {
    /// Power of the generator `s`.
    pub k: u8,
    pub matrix: Matrix,
}

impl KAut {
    pub fn power_of_s(k: u8) -> Self {
        let k = k % 4;
        let rho = &theta_roots()[k as usize];
        let mut cols = Vec::with_capacity(4);
        let mut b = QuarticElt::one();
        for _ in 0..4 {
            cols.push(b.c.clone());
            b = b * rho;
        }
        let matrix = (0..4).map(|i| (0..4).map(|j| cols[j][i].clone()).collect()).collect();
        KAut { k, matrix }
    }

    pub fn identity() -> Self {
        KAut::power_of_s(0)
    }

    pub fn apply(&self, z: &QuarticElt) -> QuarticElt {
        let c = core::array::from_fn(|i| {
            (0..4).fold(super::Rational::from_integer(0.into()), |acc, j| acc + &self.matrix[i][j] * &z.c[j])
        });
        QuarticElt::new(c)
    }

    pub fn compose(&self, other: &KAut) -> KAut {
        KAut { k: (self.k + other.k) % 4, matrix: linalg::mat_mul(&self.matrix, &other.matrix) }
    }

    pub fn image_of_theta(&self) -> QuarticElt {
        self.apply(&QuarticElt::theta())
    }

    pub fn order(&self) -> u8 {
        match self.k {
            0 => 1,
            2 => 2,
            _ => 4,
        }
    }
}

/// `Gal(K/Q)` as `[id, s, s², s³]`.
pub fn galois_group_k() -> Vec<KAut> {
    (0..4).map(KAut::power_of_s).collect()
}

/// An automorphism of `K(√−2)`: `s^k` on `K`, and `√−2 ↦ −√−2` if `negate`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct OctAut {
    pub k: u8,
    pub negate: bool,
}

impl OctAut {
    pub const IDENTITY: OctAut = OctAut { k: 0, negate: false };

    /// `σ₁`: fixes `K`, negates `√−2`.
    pub fn sigma1() -> Self {
        OctAut { k: 0, negate: true }
    }

    /// `σ₀` with `σ₀(θ) = ±(θ³ − 3θ)`: order 4, negates both `√5` and `√−2`.
    pub fn sigma0(positive: bool) -> Self {
        OctAut { k: if positive { 1 } else { 3 }, negate: true }
    }

    pub fn compose(self, other: OctAut) -> OctAut {
        OctAut { k: (self.k + other.k) % 4, negate: self.negate ^ other.negate }
    }

    pub fn pow(self, n: u32) -> OctAut {
        (0..n).fold(OctAut::IDENTITY, |acc, _| acc.compose(self))
    }

    pub fn order(self) -> u32 {
        (1..=8).find(|&n| self.pow(n) == OctAut::IDENTITY).unwrap()
    }

    pub fn restriction(self) -> KAut {
        KAut::power_of_s(self.k)
    }

    pub fn apply(self, z: &OctElt) -> OctElt {
        let s = self.restriction();
        let v = s.apply(&z.v);
        OctElt::new(s.apply(&z.u), if self.negate { -v } else { v })
    }

    /// `∏_{j < ord} self^j(z)`.
    pub fn relative_norm(self, z: &OctElt) -> OctElt {
        let mut acc = OctElt::one();
        let mut cur = z.clone();
        for _ in 0..self.order() {
            acc = acc * &cur;
            cur = self.apply(&cur);
        }
        acc
    }
}

impl fmt::Display for OctAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = ["", "s", "s²", "s³"][self.k as usize];
        match (self.k, self.negate) {
            (0, false) => f.write_str("id"),
            (_, false) => f.write_str(k),
            (0, true) => f.write_str("c"),
            (_, true) => write!(f, "c{k}"),
        }
    }
}

/// The eight automorphisms as `σ₁^a σ₀^b`, ordered `[id, σ₀, σ₀², σ₀³, σ₁,
/// σ₁σ₀, σ₁σ₀², σ₁σ₀³]`.
pub fn galois_group_k_sqrtm2(sigma0: OctAut) -> Vec<OctAut> {
    let s1 = OctAut::sigma1();
    let mut out = Vec::with_capacity(8);
    for a in 0..2 {
        for b in 0..4 {
            out.push(s1.pow(a).compose(sigma0.pow(b)));
        }
    }
    out
}
