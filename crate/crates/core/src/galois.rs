//! Characters, the cocycle table, the embedding-problem data and γ.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{gcd, legendre};
use crate::check::{Check, Claim, Status};
use crate::fields::{
    galois_group_k, galois_group_k_sqrtm2, Field, GaussianElt, Local, OctAut, OctElt, PrimeLocalization,
    QuarticElt, Rational,
};
use crate::{Error, Result};

/// A Dirichlet character with values in `⟨i⟩`, stored as exponents of `i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DirichletChar {
    pub modulus: u32,
    /// `log[n mod m]`; `None` off the units.
    log: Vec<Option<u8>>,
    pub conductor: u32,
    pub order: u32,
}

impl DirichletChar {
    /// The character with `χ(n) = i^f(n)` on units; `f` must be a
    /// homomorphism to `Z/4`, which is checked.
    pub fn from_log(modulus: u32, f: impl Fn(u32) -> u8) -> Result<Self> {
        let log: Vec<Option<u8>> = (0..modulus)
            .map(|n| (gcd(n as i128, modulus as i128) == 1).then(|| f(n) % 4))
            .collect();
        for m in 0..modulus {
            for n in 0..modulus {
                if let (Some(x), Some(y)) = (log[m as usize], log[n as usize]) {
                    if log[((m * n) % modulus) as usize] != Some((x + y) % 4) {
                        return Err(Error::Precondition(format!("not multiplicative at {m}·{n} mod {modulus}")));
                    }
                }
            }
        }
        let order = (1..=4u32)
            .find(|k| log.iter().flatten().all(|&e| (e as u32 * k) % 4 == 0))
            .unwrap();
        let conductor = (1..=modulus)
            .filter(|d| modulus % d == 0)
            .find(|&d| (0..modulus).all(|n| log[n as usize].map_or(true, |e| n % d != 1 % d || e == 0)))
            .unwrap();
        Ok(DirichletChar { modulus, log, conductor, order })
    }

    pub fn trivial(modulus: u32) -> Self {
        DirichletChar::from_log(modulus, |_| 0).unwrap()
    }

    /// `i^k` where `χ(n) = i^k`, or `None` when `gcd(n, m) > 1`.
    pub fn log_value(&self, n: i64) -> Option<u8> {
        self.log[n.rem_euclid(self.modulus as i64) as usize]
    }

    pub fn value(&self, n: i64) -> GaussianElt {
        match self.log_value(n) {
            None => GaussianElt::zero(),
            Some(0) => GaussianElt::from_ints(1, 0),
            Some(1) => GaussianElt::from_ints(0, 1),
            Some(2) => GaussianElt::from_ints(-1, 0),
            Some(_) => GaussianElt::from_ints(0, -1),
        }
    }

    /// Product character modulo `lcm` of the moduli.
    pub fn mul(&self, other: &DirichletChar) -> DirichletChar {
        let m = self.modulus * other.modulus / gcd(self.modulus as i128, other.modulus as i128) as u32;
        DirichletChar::from_log(m, |n| {
            self.log_value(n as i64).unwrap() + other.log_value(n as i64).unwrap()
        })
        .unwrap()
    }

    pub fn conj(&self) -> DirichletChar {
        DirichletChar::from_log(self.modulus, |n| 4 - self.log_value(n as i64).unwrap()).unwrap()
    }

    pub fn pow(&self, k: u32) -> DirichletChar {
        DirichletChar::from_log(self.modulus, |n| ((self.log_value(n as i64).unwrap() as u32 * k) % 4) as u8).unwrap()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

impl fmt::Display for DirichletChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "character mod {} (conductor {}, order {})", self.modulus, self.conductor, self.order)
    }
}

/// `ε₂`, the nontrivial character mod 4.
pub fn epsilon2() -> DirichletChar {
    DirichletChar::from_log(4, |n| if n % 4 == 3 { 2 } else { 0 }).unwrap()
}

/// `ε₅` of order 4 mod 5 with `ε₅(2) = i`.
pub fn epsilon5() -> DirichletChar {
    // 2 generates (Z/5)*: 2 ↦ 1, 4 ↦ 2, 3 ↦ 3, 1 ↦ 0
    DirichletChar::from_log(5, |n| [0, 0, 1, 3, 2][n as usize]).unwrap()
}

/// `χ₈`, the character of `Q(√2)`.
pub fn chi8() -> DirichletChar {
    DirichletChar::from_log(8, |n| if n % 8 == 1 || n % 8 == 7 { 0 } else { 2 }).unwrap()
}

/// `ε = ε₂ε₅`, modulus 20.
pub fn build_epsilon() -> DirichletChar {
    epsilon2().mul(&epsilon5())
}

pub fn char_value(chi: &DirichletChar, n: i64) -> GaussianElt {
    chi.value(n)
}

/// Self-checks of `ε`: order, conductor, parity, `ε²` and `ε̄(3)`.
pub fn epsilon_checks() -> Vec<Check> {
    let e = build_epsilon();
    let e2 = e.pow(2);
    let square_is_legendre = (1..20i64)
        .filter(|n| n % 2 != 0 && n % 5 != 0)
        .all(|n| e2.value(n) == GaussianElt::from_i64(legendre(n as i128, 5) as i64));
    let structure = e.order == 4 && e.conductor == 20 && e.value(-1) == GaussianElt::one();
    let mut out = vec![Check::verdict(
        Claim::Epsilon,
        structure && square_is_legendre && e2.conductor == 5 && e.pow(4).is_trivial(),
        format!(
            "{e}; ε(−1) = {}, ε² = (·/5) with conductor {}, fixed field of degree {}",
            e.value(-1),
            e2.conductor,
            e.order
        ),
    )];
    let bar3 = e.conj().value(3);
    out.push(
        Check::verdict(Claim::EpsilonBar3, bar3 == GaussianElt::from_ints(0, -1), format!("ε(3) = {}", e.value(3)))
            .with_values("-i", format!("{bar3}")),
    );
    out
}

/// Labels of `Gal(L/Q)`, `L = Q(√5, √−2)`: `σ` moves `√5`, `τ` moves `√−2`.
pub const COCYCLE_LABELS: [&str; 4] = ["1", "σ", "τ", "στ"];

/// `c_L(g, h)`, rows `g`, columns `h`, in the order of [`COCYCLE_LABELS`].
pub const COCYCLE_TABLE: [[i64; 4]; 4] = [[1, 1, 1, 1], [1, 1, -1, -1], [1, 1, -2, -2], [1, 1, 2, 2]];

/// Degrees of the isogenies `^gE → E`.
const COCYCLE_DEGREES: [i64; 4] = [1, 1, 2, 2];

/// The Klein four-group law on indices: `σ = 1`, `τ = 2`, `στ = 3`.
fn klein(g: usize, h: usize) -> usize {
    g ^ h
}

/// The cocycle identity on all 64 triples and the degree rule
/// `c(g,h)² = d(g)d(h)/d(gh)`.
pub fn cocycle_table_check() -> Vec<Check> {
    let c = |g: usize, h: usize| COCYCLE_TABLE[g][h];
    let mut bad = None;
    for g in 0..4 {
        for h in 0..4 {
            for k in 0..4 {
                if bad.is_none() && c(g, h) * c(klein(g, h), k) != c(h, k) * c(g, klein(h, k)) {
                    bad = Some((g, h, k));
                }
            }
        }
    }
    let normalized = (0..4).all(|g| c(0, g) == 1 && c(g, 0) == 1);
    let cocycle = match bad {
        None => Check::verdict(Claim::Cocycle, normalized, "64 triples; identity row and column are 1"),
        Some((g, h, k)) => Check::fail(
            Claim::Cocycle,
            format!("fails at (g, h, k) = ({}, {}, {})", COCYCLE_LABELS[g], COCYCLE_LABELS[h], COCYCLE_LABELS[k]),
        ),
    };
    let d = COCYCLE_DEGREES;
    let bad_degree = (0..4)
        .flat_map(|g| (0..4).map(move |h| (g, h)))
        .find(|&(g, h)| c(g, h) * c(g, h) * d[klein(g, h)] != d[g] * d[h]);
    let degree = match bad_degree {
        None => Check::pass(Claim::CocycleDegree, "deg [c(g,h)] = d(g)d(h)/d(gh) on all 16 pairs; c(τ,τ) = −2 has degree 4"),
        Some((g, h)) => Check::fail(
            Claim::CocycleDegree,
            format!("degree mismatch at ({}, {})", COCYCLE_LABELS[g], COCYCLE_LABELS[h]),
        ),
    };
    vec![cocycle, degree]
}

/// `α₀`, `α₁`, the splitting map `β` and `γ`, with `σ₀` fixed.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingData {
    pub sigma0: OctAut,
    pub alpha0: OctElt,
    pub alpha1: OctElt,
    /// Indexed like `galois_group_k_sqrtm2(sigma0)`: `σ₁^a σ₀^b` at `4a + b`.
    pub group: Vec<OctAut>,
    pub beta: Vec<OctElt>,
    pub gamma: QuarticElt,
}

fn k(c: [i64; 4]) -> QuarticElt {
    QuarticElt::from_ints(c)
}

fn half(z: QuarticElt) -> QuarticElt {
    z.scale(&crate::fields::qf(1, 2))
}

impl EmbeddingData {
    pub fn new(sigma0: OctAut) -> Self {
        // α₀ = ½(−1 + θ + θ²)√−2, α₁ = −5 + 2θ²
        let alpha0 = OctElt::new(QuarticElt::zero(), half(k([-1, 1, 1, 0])));
        let alpha1 = OctElt::from_k(k([-5, 0, 2, 0]));
        let b2 = OctElt::from_k(k([2, -1, -1, 0]));
        let b3 = OctElt::new(QuarticElt::zero(), half(k([3, -1, -1, 0])));
        let one = OctElt::one();
        let beta = vec![one.clone(), alpha0.clone(), b2.clone(), b3.clone(), one, alpha0.clone(), b2, b3];
        EmbeddingData { sigma0, alpha0, alpha1, group: galois_group_k_sqrtm2(sigma0), beta, gamma: gamma() }
    }

    fn index(&self, g: OctAut) -> usize {
        self.group.iter().position(|&x| x == g).unwrap()
    }

    /// `β_g·^gβ_h·β_gh⁻¹`.
    pub fn twisted_coboundary(&self, g: usize, h: usize) -> OctElt {
        let gh = self.index(self.group[g].compose(self.group[h]));
        let num = self.beta[g].clone() * self.group[g].apply(&self.beta[h]);
        num.div(&self.beta[gh]).unwrap()
    }

    /// `β_g·β_h·β_gh⁻¹`, shown for comparison.
    pub fn plain_coboundary(&self, g: usize, h: usize) -> OctElt {
        let gh = self.index(self.group[g].compose(self.group[h]));
        (self.beta[g].clone() * &self.beta[h]).div(&self.beta[gh]).unwrap()
    }

    fn conditions(&self) -> [bool; 3] {
        let s1 = OctAut::sigma1();
        let n0 = self.sigma0.relative_norm(&self.alpha0) == -OctElt::one();
        let n1 = s1.relative_norm(&self.alpha1) == OctElt::from_i64(5);
        let lhs = s1.apply(&self.alpha0).div(&self.alpha0).unwrap();
        let rhs = self.sigma0.apply(&self.alpha1).div(&self.alpha1).unwrap();
        [n0, n1, lhs == rhs]
    }
}

fn oct_rational(z: &OctElt) -> Option<Rational> {
    if z.in_k() {
        z.u.as_rational().cloned()
    } else {
        None
    }
}

/// The three embedding conditions for `α₀, α₁`; the `σ₀` lift with
/// `σ₀(θ) = θ³ − 3θ` is tried first, then its inverse.
pub fn embedding_verify() -> Result<(EmbeddingData, Vec<Check>)> {
    for positive in [true, false] {
        let data = EmbeddingData::new(OctAut::sigma0(positive));
        if data.conditions() != [true; 3] {
            continue;
        }
        let s1 = OctAut::sigma1();
        let n0 = data.sigma0.relative_norm(&data.alpha0);
        let n1 = s1.relative_norm(&data.alpha1);
        let quotient = s1.apply(&data.alpha0).div(&data.alpha0).unwrap();
        let lift = if positive { "σ₀(θ) = θ³ − 3θ" } else { "σ₀(θ) = −(θ³ − 3θ)" };
        let checks = vec![
            Check::pass(Claim::EmbeddingNorm0, format!("{lift}, σ₀(√−2) = −√−2")).with_values("-1", format!("{n0}")),
            Check::pass(Claim::EmbeddingNorm1, "α₁ = √5, σ₁ fixes K").with_values("5", format!("{n1}")),
            Check::pass(Claim::EmbeddingCompat, "both quotients equal").with_values("-1", format!("{quotient}")),
        ];
        return Ok((data, checks));
    }
    Err(Error::IdentityFailure("embedding conditions fail for both lifts of σ₀".into()))
}

/// The `q`-table of `β`, its cocycle identity, rationality and `ζ`.
pub fn splitting_map_check(data: &EmbeddingData) -> Vec<Check> {
    let n = data.group.len();
    let table: Vec<Vec<OctElt>> = (0..n).map(|g| (0..n).map(|h| data.twisted_coboundary(g, h)).collect()).collect();
    let irrational = (0..n).flat_map(|g| (0..n).map(move |h| (g, h))).find(|&(g, h)| oct_rational(&table[g][h]).is_none());
    let mut out = Vec::new();
    let mut values: Vec<String> = table.iter().flatten().filter_map(oct_rational).map(|r| format!("{r}")).collect();
    values.sort();
    values.dedup();
    out.push(match irrational {
        None => Check::pass(Claim::SplittingMap, format!("64 values in Q*: {{{}}}", values.join(", "))),
        Some((g, h)) => Check::new(
            Claim::SplittingMap,
            Status::Discrepancy,
            format!("q({}, {}) = {} is not in Q(i)", data.group[g], data.group[h], table[g][h]),
        ),
    });
    let mul = |g: usize, h: usize| data.index(data.group[g].compose(data.group[h]));
    let mut bad = None;
    for g in 0..n {
        for h in 0..n {
            for kk in 0..n {
                let lhs = table[g][h].clone() * &table[mul(g, h)][kk];
                let rhs = data.group[g].apply(&table[h][kk]) * &table[g][mul(h, kk)];
                if bad.is_none() && lhs != rhs {
                    bad = Some((g, h, kk));
                }
            }
        }
    }
    out.push(match bad {
        None => Check::pass(Claim::SplittingMap, "twisted cocycle identity on 512 triples"),
        Some((g, h, kk)) => Check::fail(
            Claim::SplittingMap,
            format!("cocycle identity fails at ({}, {}, {})", data.group[g], data.group[h], data.group[kk]),
        ),
    });
    let plain_rational = (0..n).flat_map(|g| (0..n).map(move |h| (g, h))).filter(|&(g, h)| oct_rational(&data.plain_coboundary(g, h)).is_some()).count();
    out.push(Check::new(
        Claim::SplittingMap,
        Status::Pass,
        format!("untwisted β_g·β_h·β_gh⁻¹ is rational on {plain_rational} of 64 pairs (diagnostic)"),
    ));
    let zeta = (0..4).fold(OctElt::one(), |acc, b| acc * &table[b][1]);
    out.push(
        Check::verdict(Claim::Zeta, zeta == -OctElt::one(), "q(1,σ₀)q(σ₀,σ₀)q(σ₀²,σ₀)q(σ₀³,σ₀)")
            .with_values("-1", format!("{zeta}")),
    );
    out
}

/// `γ = 2θ² − θ − 5`.
pub fn gamma() -> QuarticElt {
    QuarticElt::from_ints([-5, -1, 2, 0])
}

/// Records the shape of `γ`: coordinates, local valuations, a numeric value
/// and the size of its Galois orbit.
pub fn gamma_check() -> Check {
    let g = gamma();
    let v2 = PrimeLocalization::p2().valuation(&g);
    let v5 = PrimeLocalization::p5().valuation(&g);
    let mut orbit: Vec<QuarticElt> = galois_group_k().iter().map(|s| s.apply(&g)).collect();
    let orbit_len = {
        let mut distinct: Vec<QuarticElt> = Vec::new();
        for z in orbit.drain(..) {
            if !distinct.contains(&z) {
                distinct.push(z);
            }
        }
        distinct.len()
    };
    let numeric = g.to_f64();
    let ok = !g.is_zero() && orbit_len == 4 && (numeric - 0.334).abs() < 5e-3;
    Check::verdict(
        Claim::Gamma,
        ok,
        format!("γ ≈ {numeric:.4}, υ_P2(γ) = {v2}, υ_P5(γ) = {v5}, Nm(γ) = {}, orbit of size {orbit_len}", g.norm()),
    )
    .with_values("(-5, -1, 2, 0)", format!("{:?}", gamma_coordinates()))
}

fn gamma_coordinates() -> [i64; 4] {
    let g = gamma();
    core::array::from_fn(|i| {
        let c = &g.c[i];
        if c.is_integer() {
            i64::try_from(c.to_integer()).unwrap_or(i64::MAX)
        } else {
            i64::MAX
        }
    })
}

/// Every galois check in order.
pub fn galois_checks() -> Result<Vec<Check>> {
    let mut out = epsilon_checks();
    out.extend(cocycle_table_check());
    let (data, emb) = embedding_verify()?;
    out.extend(emb);
    out.extend(splitting_map_check(&data));
    out.push(gamma_check());
    Ok(out)
}
