//! Verdicts produced by the verification routines.
//!
//! Every [`Check`] names a [`Claim`] from a fixed registry. The registry
//! carries the claim's stable id and a short formula anchor; reports never
//! carry free-form anchors.

use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    /// The claim is internally inconsistent with another claim; both
    /// computed values are attached.
    Discrepancy,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Discrepancy => "discrepancy",
            Status::Inconclusive => "inconclusive",
        }
    }
}

macro_rules! claims {
    ($($variant:ident => ($id:literal, $anchor:literal),)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Claim { $($variant,)* }

        impl Claim {
            pub const ALL: &'static [Claim] = &[$(Claim::$variant,)*];

            pub fn id(self) -> &'static str {
                match self { $(Claim::$variant => $id,)* }
            }

            pub fn anchor(self) -> &'static str {
                match self { $(Claim::$variant => $anchor,)* }
            }
        }
    };
}

claims! {
    PhiFactorization => ("descent.phi-factorization", "φ(x,y) = φ₁(x,y)φ₂(x,y)"),
    SumSquare => ("descent.sum-square", "(a+b)² = −ω̄φ₁ − ωφ₂"),
    CoprimeOutside5 => ("descent.coprime-outside-5", "gcd(a+b, φ(a,b)) | 5, υ₅(φ(a,b)) = 1 if 5 | a+b"),
    LDividesSum => ("descent.l-divides-sum", "l ≢ 1 mod 5, l | a⁵+b⁵ ⇒ l | a+b"),
    PhiPrimes => ("descent.phi-primes", "q | φ(a,b), q ≠ 5 ⇒ q ≡ 1 mod 5"),
    Phi12Coprime => ("descent.phi12-coprime", "φ₁(a,b), φ₂(a,b) coprime outside 5"),
    Classification => ("descent.classification", "φ(a,b) = c₀^p or φ(a,b) = 5c₀^p"),
    Search => ("descent.search", "x⁵ + y⁵ = dz^p"),
    FreyCurve => ("elliptic.frey", "E: y² = x³ + 2(a+b)x² − ω̄φ₁x"),
    Discriminant => ("elliptic.discriminant", "Δ(E) = 2⁶ω̄φφ₁"),
    Isogeny => ("elliptic.isogeny", "μ: σE → E, (x,y) ↦ (−y²/2x², (√−2/4)(y/x²)(ωφ₂ + x²))"),
    DualIsogeny => ("elliptic.dual-isogeny", "μ̂: E → σE, (x,y) ↦ (−y²/2x², −(√−2/4)(y/x²)(ω̄φ₁ + x²))"),
    Twist => ("elliptic.twist", "E_γ: y² = x³ + 2γ(a+b)x² − γ²ω̄φ₁x"),
    TraceAtP3 => ("elliptic.trace-p3", "a_𝔓₃(E_γ) = −18"),
    ConductorEg => ("elliptic.conductor", "N_{E_γ} = 𝔓₂^e₂ 𝔓₅^e₅ (rad(c))"),
    Twist2Conductor => ("elliptic.twist2-conductor", "N_{E_γ,2} at 𝔓₂ is 𝔓₂⁰ or 𝔓₂⁴"),
    Milne => ("weil.milne", "N_B = Nm_{K/ℚ}(N_{E_γ})Disc(K/ℚ)²"),
    ConductorTable => ("weil.table", "N_B = N(ρ_{S₁})N(ρ^σ_{S₁})N(ρ_{S₂})N(ρ^σ_{S₂})"),
    EqualConjugateConductors => ("weil.conjugate-conductors", "N(ρ) = N(ρ^σ)"),
    SerreLevel => ("weil.serre-level", "M = 1600, 800, 400 or 100"),
    SerreWeight => ("weil.serre-weight", "k(ρ̄) = 2"),
    SerreCharacter => ("weil.serre-character", "character ε⁻¹ = ε̄"),
    TwistedLevel => ("weil.twisted-level", "N(ρ̄₁) = 400 or 100"),
    Epsilon => ("galois.epsilon", "ε = ε₂ε₅, ε₅(2) = i"),
    EpsilonBar3 => ("galois.epsilon-bar-3", "ε̄(3) = −i"),
    Cocycle => ("galois.cocycle", "c_L(g,h)c_L(gh,k) = c_L(h,k)c_L(g,hk)"),
    CocycleDegree => ("galois.cocycle-degree", "deg c_L(g,h) = d(g)d(h)/d(gh)"),
    EmbeddingNorm0 => ("galois.norm-alpha0", "N_σ₀(α₀) = −1"),
    EmbeddingNorm1 => ("galois.norm-alpha1", "N_σ₁(α₁) = 5"),
    EmbeddingCompat => ("galois.compatibility", "σ₁α₀/α₀ = σ₀α₁/α₁"),
    SplittingMap => ("galois.splitting-map", "β_g·gβ_h·β_gh⁻¹ ∈ ℚ(i)*"),
    Zeta => ("galois.zeta", "ζ = c(1,σ₀)c(σ₀,σ₀)c(σ₀²,σ₀)c(σ₀³,σ₀) = −1"),
    Gamma => ("galois.gamma", "γ = 2θ² − θ − 5"),
    DatasetInvariants => ("eliminate.dataset", "f ∈ S₂(M, ε̄) newform, a₁ = 1, |a_q| ≤ 2√q"),
    Census => ("eliminate.census", "|S1| = 8, |S2| = 12, |S3| = 10 at levels 1600, 400, 100"),
    Census800 => ("eliminate.census-800", "level 800: 4 of type S2, 10 of type S3, none of type S1"),
    InnerTwist => ("eliminate.inner-twist", "a_q = ā_q ε̄(q)"),
    TwistMatch => ("eliminate.twist-match", "f ⊗ χ is a newform of level 800"),
    HeckeTrace81 => ("eliminate.hecke-trace-81", "a_𝔓₃(f) = α⁴ + β⁴, α, β roots of x² − a₃x + 3ε̄(3)"),
    EliminateS1 => ("eliminate.s1", "CM: image in the normalizer of a split Cartan"),
    EliminateS2 => ("eliminate.s2", "a₃ ≡ c₃(f) (mod 𝔓)"),
    EliminateTrace => ("eliminate.trace-3", "a_𝔓₃(E_γ) ≡ a_𝔓₃(f) (mod p)"),
    EliminateCarayol => ("eliminate.carayol", "no level lowering between levels 800 and 400 or 100"),
    TheoremD2 => ("theorem.d2", "p > 13, p ≡ 1 mod 4, p ≡ ±1 mod 5"),
    TheoremD3 => ("theorem.d3", "p > 73, p ≡ 1 mod 4"),
    Density => ("theorem.density", "density 1/4 (d = 2), 1/2 (d = 3)"),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub claim: Claim,
    pub status: Status,
    pub details: String,
    /// Value predicted by the claim, when the check compares two values.
    pub expected: Option<String>,
    pub computed: Option<String>,
}

impl Check {
    pub fn new(claim: Claim, status: Status, details: impl Into<String>) -> Self {
        Check { claim, status, details: details.into(), expected: None, computed: None }
    }

    pub fn pass(claim: Claim, details: impl Into<String>) -> Self {
        Self::new(claim, Status::Pass, details)
    }

    pub fn fail(claim: Claim, details: impl Into<String>) -> Self {
        Self::new(claim, Status::Fail, details)
    }

    /// Pass if `ok`, otherwise fail.
    pub fn verdict(claim: Claim, ok: bool, details: impl Into<String>) -> Self {
        Self::new(claim, if ok { Status::Pass } else { Status::Fail }, details)
    }

    pub fn with_values(mut self, expected: impl Into<String>, computed: impl Into<String>) -> Self {
        self.expected = Some(expected.into());
        self.computed = Some(computed.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(Check::passed)
}

/// Counts per status, in the order pass, fail, discrepancy, inconclusive.
pub fn tally(checks: &[Check]) -> [usize; 4] {
    let mut t = [0; 4];
    for c in checks {
        t[c.status as usize] += 1;
    }
    t
}

pub fn failures(checks: &[Check]) -> Vec<&Check> {
    checks.iter().filter(|c| c.status == Status::Fail).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn registry_ids_are_unique() {
        let ids: BTreeSet<_> = Claim::ALL.iter().map(|c| c.id()).collect();
        assert_eq!(ids.len(), Claim::ALL.len());
    }
}
