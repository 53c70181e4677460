//! Classification of the newforms and the three ways of ruling each one out.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};

use crate::arith::{is_prime, legendre, trial_factor};
use crate::check::{Check, Claim, Status};
use crate::fields::{q, Field, GaussianElt, Rational};
use crate::galois::{build_epsilon, chi8};
use crate::weil::{split_level, KConductor};
use crate::{Error, Result};

use super::number_field::integral;
use super::record::NewformRecord;

/// Residues of primes `p ∤ 20` modulo 20.
pub const UNITS_MOD_20: [u64; 8] = [1, 3, 7, 9, 11, 13, 17, 19];

/// The split-Cartan exclusion holds for every `p > 13`.
pub const SPLIT_CARTAN_BOUND: u64 = 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NewformClass {
    S1,
    S2,
    S3,
}

impl fmt::Display for NewformClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// CM forms with coefficient field `Q(i)` are S1, every form with a larger
/// coefficient field is S2 and the rest are S3. CM forms of degree 4 are
/// eliminated by the S2 argument, which does not need the CM.
pub fn classify_newform(f: &NewformRecord) -> NewformClass {
    match (f.cm_disc, f.degree()) {
        (_, d) if d > 2 => NewformClass::S2,
        (Some(_), _) => NewformClass::S1,
        (None, _) => NewformClass::S3,
    }
}

/// The literal reading where any CM form is S1.
pub fn classify_strict(f: &NewformRecord) -> NewformClass {
    match (f.cm_disc, f.degree()) {
        (Some(_), _) => NewformClass::S1,
        (None, 2) => NewformClass::S3,
        (None, _) => NewformClass::S2,
    }
}

/// The real line `{a : a = ā·ε̄(q)}` inside `Q(i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InnerTwistShape {
    T,
    IT,
    TMinusIT,
    TPlusIT,
}

impl InnerTwistShape {
    /// The value at `t = 1`.
    pub fn basis(self) -> GaussianElt {
        match self {
            InnerTwistShape::T => GaussianElt::from_ints(1, 0),
            InnerTwistShape::IT => GaussianElt::from_ints(0, 1),
            InnerTwistShape::TMinusIT => GaussianElt::from_ints(1, -1),
            InnerTwistShape::TPlusIT => GaussianElt::from_ints(1, 1),
        }
    }
}

impl fmt::Display for InnerTwistShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InnerTwistShape::T => "t",
            InnerTwistShape::IT => "it",
            InnerTwistShape::TMinusIT => "t − it",
            InnerTwistShape::TPlusIT => "t + it",
        })
    }
}

/// Shape of `a_q` forced by `a_q = ā_q ε̄(q)`, read off from `ε̄(q)`.
pub fn inner_twist_shape(q: u64) -> Result<InnerTwistShape> {
    let k = build_epsilon()
        .conj()
        .log_value(q as i64)
        .ok_or_else(|| Error::Precondition(format!("{q} is not prime to 20")))?;
    let shape = match k {
        0 => InnerTwistShape::T,
        1 => InnerTwistShape::TPlusIT,
        2 => InnerTwistShape::IT,
        _ => InnerTwistShape::TMinusIT,
    };
    let b = shape.basis();
    debug_assert_eq!(b.conj() * build_epsilon().conj().value(q as i64), b);
    Ok(shape)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    CmSplitCartan,
    InnerTwistA3,
    TraceAt3,
    TwistCarayol,
}

impl Method {
    pub fn claim(self) -> Claim {
        match self {
            Method::CmSplitCartan => Claim::EliminateS1,
            Method::InnerTwistA3 => Claim::EliminateS2,
            Method::TraceAt3 => Claim::EliminateTrace,
            Method::TwistCarayol => Claim::EliminateCarayol,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::CmSplitCartan => "CM-split-Cartan",
            Method::InnerTwistA3 => "inner-twist-a3",
            Method::TraceAt3 => "trace-at-3",
            Method::TwistCarayol => "twist-Carayol",
        })
    }
}

/// How one newform is ruled out: for every prime `p > 13` whose class mod 20
/// lies in `residues` and which is not in `exceptional`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationResult {
    pub id: String,
    pub level: u64,
    pub class: NewformClass,
    pub method: Method,
    pub residues: Vec<u64>,
    pub exceptional: Vec<u64>,
    /// Set when the argument does not go through.
    pub inconclusive: Option<String>,
    pub details: String,
}

impl EliminationResult {
    fn new(f: &NewformRecord, class: NewformClass, method: Method) -> Self {
        EliminationResult {
            id: f.id.clone(),
            level: f.level,
            class,
            method,
            residues: UNITS_MOD_20.to_vec(),
            exceptional: Vec::new(),
            inconclusive: None,
            details: String::new(),
        }
    }

    pub fn eliminates(&self, p: u64) -> bool {
        self.inconclusive.is_none()
            && p > SPLIT_CARTAN_BOUND
            && self.residues.contains(&(p % 20))
            && !self.exceptional.contains(&p)
    }

    pub fn check(&self) -> Check {
        let status = if self.inconclusive.is_some() { Status::Inconclusive } else { Status::Pass };
        let mut details = format!("{} (level {}, {}): {}", self.id, self.level, self.class, self.details);
        if let Some(r) = &self.inconclusive {
            details += &format!("; inconclusive: {r}");
        }
        Check::new(self.method.claim(), status, details)
            .with_values(format!("{}", self.method), format!("p mod 20 ∈ {:?}, p ∉ {:?}", self.residues, self.exceptional))
    }
}

/// Sorted prime divisors of a nonzero integer.
fn prime_divisors(n: &BigInt) -> Result<Vec<u64>> {
    let m = n.abs().to_u128().ok_or_else(|| Error::Unsupported(format!("norm {n} does not fit 128 bits")))?;
    let f = trial_factor(m, u64::MAX);
    if !f.complete {
        return Err(Error::Unsupported(format!("could not factor {m}")));
    }
    f.primes().into_iter().map(|p| u64::try_from(p).map_err(|_| Error::Unsupported(format!("prime {p} too large")))).collect()
}

/// Classes mod 20 of the primes that split in the CM field of discriminant
/// `disc`; only meaningful when the splitting depends on `p mod 20`.
pub fn split_residues(disc: i64) -> Vec<u64> {
    UNITS_MOD_20
        .iter()
        .copied()
        .filter(|&r| {
            let p = (1..).map(|k| r + 20 * k).find(|&p| is_prime(p)).unwrap();
            legendre(disc as i128, p) == 1
        })
        .collect()
}

fn require(f: &NewformRecord, class: NewformClass) -> Result<()> {
    if classify_newform(f) != class {
        return Err(Error::Precondition(format!("{} is {}, not {class}", f.id, classify_newform(f))));
    }
    Ok(())
}

/// S1: the image mod `p` lands in the normalizer of a split Cartan when `p`
/// splits in the CM field. With `d = 3` the forms with CM by `Q(√−5)` have
/// `a₃ = ±(i − 1)` and fall to the trace at 3 instead.
pub fn s1_conditions(f: &NewformRecord, d: u32) -> Result<EliminationResult> {
    require(f, NewformClass::S1)?;
    let disc = f.cm_disc.unwrap();
    let a3 = f.a_gaussian(3);
    let special = [GaussianElt::from_ints(-1, 1), GaussianElt::from_ints(1, -1)];
    if d == 3 && disc == -20 && a3.as_ref().is_some_and(|a| special.contains(a)) {
        let mut r = trace_at_3_eliminate(f)?;
        r.class = NewformClass::S1;
        r.details = format!("CM by Q(√−5), {}", r.details);
        return Ok(r);
    }
    let mut r = EliminationResult::new(f, NewformClass::S1, Method::CmSplitCartan);
    r.residues = split_residues(disc);
    let field = if disc == -4 { "Q(i)" } else { "Q(√−5)" };
    r.details = format!("CM by {field}; p must split there, p mod 20 ∈ {:?}", r.residues);
    Ok(r)
}

/// Largest `t` with `|t·b| ≤ 2√q` for the shape `b` of `a_q`.
pub fn shape_bound(q: u64) -> Result<i64> {
    let b = inner_twist_shape(q)?.basis().norm();
    // t²·|b|² ≤ 4q
    let limit = Rational::from_integer(BigInt::from(4 * q)) / b;
    Ok((0i64..).take_while(|&t| Rational::from_integer(BigInt::from(t * t)) <= limit).last().unwrap())
}

/// Primes of `Nm(c₃ − t·b)` over `|t| ≤ 2` for a given shape `b` of `a₃`,
/// checked against the primes of `Nm(c₃⁴ − t⁴b⁴)`, which must contain them.
pub fn s2_primes_for_shape(f: &NewformRecord, b: &GaussianElt) -> core::result::Result<(Vec<u64>, Vec<String>), String> {
    let field = &f.field;
    let c3 = f.a(3).ok_or_else(|| format!("{}: no a₃", f.id))?;
    let b = field.from_gaussian(b, &f.i);
    let b4 = field.pow(&b, 4);
    let c3_4 = field.pow(c3, 4);
    let tmax = shape_bound(3).map_err(|e| format!("{e}"))?;
    let mut all = BTreeSet::new();
    let mut norms = Vec::new();
    for t in -tmax..=tmax {
        let direct = field.sub(c3, &field.scale(&b, &q(t)));
        let power = field.sub(&c3_4, &field.scale(&b4, &q(t.pow(4))));
        let (n1, n4) = (field.norm(&direct), field.norm(&power));
        let nonzero = |n: &Rational| integral(n).filter(|n| n.sign() != num_bigint::Sign::NoSign);
        let (Some(n1), Some(n4)) = (nonzero(&n1), nonzero(&n4)) else {
            return Err(format!("t = {t}: Nm(c₃ − a₃) = {n1}, Nm(c₃⁴ − a₃⁴) = {n4}"));
        };
        let p1 = prime_divisors(&n1).map_err(|e| format!("{e}"))?;
        let p4 = prime_divisors(&n4).map_err(|e| format!("{e}"))?;
        if !p1.iter().all(|p| p4.contains(p)) {
            return Err(format!("t = {t}: primes {p4:?} of Nm(c₃⁴ − a₃⁴) miss some of {p1:?}"));
        }
        norms.push(format!("t = {t}: {n1}"));
        all.extend(p1);
    }
    Ok((all.into_iter().collect(), norms))
}

/// S2: `c₃(f) ≡ a₃ (mod 𝔓)` with `a₃ = t − ti` and `|t| ≤ 2`, so `p`
/// divides `Nm(c₃ − (t − ti))` for some `t`.
pub fn s2_exceptional_primes(f: &NewformRecord) -> Result<EliminationResult> {
    require(f, NewformClass::S2)?;
    let shape = inner_twist_shape(3)?;
    let mut r = EliminationResult::new(f, NewformClass::S2, Method::InnerTwistA3);
    match s2_primes_for_shape(f, &shape.basis()) {
        Ok((primes, norms)) => {
            r.details = format!("a₃ shape {shape}, |t| ≤ {}; norms {}", shape_bound(3)?, norms.join(", "));
            r.exceptional = primes;
        }
        Err(e) => r.inconclusive = Some(e),
    }
    Ok(r)
}

/// `ε̄(3)·3`.
fn e2() -> GaussianElt {
    build_epsilon().conj().value(3).scale(&q(3))
}

/// `α⁴ + β⁴` for the roots of `x² − a₃x + 3ε̄(3)`, by power sums.
pub fn hecke_trace_81(a3: &GaussianElt) -> GaussianElt {
    let e1 = a3.clone();
    let e2 = e2();
    let e1sq = e1.clone() * &e1;
    e1sq.clone() * &e1sq - e1sq * &e2 * GaussianElt::from_i64(4) + e2.clone() * &e2 * GaussianElt::from_i64(2)
}

/// The same quantity from the numeric roots.
pub fn hecke_trace_81_numeric(a3: Complex64) -> Complex64 {
    let (re, im) = e2().to_f64();
    let e2 = Complex64::new(re, im);
    let disc = (a3 * a3 - e2 * 4.0).sqrt();
    let (alpha, beta) = ((a3 + disc) / 2.0, (a3 - disc) / 2.0);
    alpha.powi(4) + beta.powi(4)
}

/// `a_𝔓₃(E_γ)`, the same for every pair with `3 | a + b`.
pub const FREY_TRACE_AT_P3: i64 = -18;

/// Primes dividing `Nm(a_𝔓₃(f) + 18)`, or why there are none to take.
pub fn trace_at_3_exceptional(a3: &GaussianElt) -> core::result::Result<(GaussianElt, Vec<u64>), String> {
    let h = hecke_trace_81(a3);
    let diff = h.clone() - GaussianElt::from_i64(FREY_TRACE_AT_P3);
    if diff.is_zero() {
        return Err(format!("a_𝔓₃(f) = {h} equals −18"));
    }
    let n = integral(&diff.norm()).ok_or_else(|| format!("a₃ = {a3} is not integral"))?;
    let primes = prime_divisors(&n).map_err(|e| format!("{e}"))?;
    Ok((h, primes))
}

/// Trace at the inert prime above 3: `a_𝔓₃(E_γ) = −18 ≡ α⁴ + β⁴ (mod p)`.
pub fn trace_at_3_eliminate(f: &NewformRecord) -> Result<EliminationResult> {
    let a3 = f.a_gaussian(3).ok_or_else(|| Error::Precondition(format!("{}: a₃ is not in Q(i)", f.id)))?;
    let mut r = EliminationResult::new(f, classify_newform(f), Method::TraceAt3);
    match trace_at_3_exceptional(&a3) {
        Ok((h, primes)) => {
            r.details = format!("a₃ = {a3}, a_𝔓₃(f) = {h}, exceptional {primes:?}");
            r.exceptional = primes;
        }
        Err(e) => r.inconclusive = Some(e),
    }
    Ok(r)
}

/// `⌈(k/12)·N·∏_{ℓ | N}(1 + 1/ℓ)⌉`.
pub fn sturm_bound(n: u64, k: u64) -> u64 {
    let (mut m, mut num, mut den) = (n, n, 1u64);
    let mut l = 2;
    while m > 1 {
        if m % l == 0 {
            num = num / l * (l + 1);
            while m % l == 0 {
                m /= l;
            }
        }
        l += 1;
    }
    den *= 12;
    (k * num).div_ceil(den)
}

/// `f ⊗ χ₈` found in the dataset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistMatch {
    pub source: String,
    pub target: String,
    pub level: u64,
    /// Coefficients compared, at odd `n`.
    pub compared: usize,
}

impl TwistMatch {
    pub fn check(&self) -> Check {
        Check::verdict(
            Claim::TwistMatch,
            self.level == 800,
            format!("{} ⊗ χ₈ = {} on {} odd coefficients", self.source, self.target, self.compared),
        )
        .with_values("800", format!("{}", self.level))
    }
}

/// Twists an S3 form of level 1600 by `χ₈` and looks for the unique form
/// in `records` with coefficients in `Q(i)` whose odd coefficients agree.
pub fn twist_and_match(f: &NewformRecord, records: &[NewformRecord]) -> Result<TwistMatch> {
    require(f, NewformClass::S3)?;
    if f.level != 1600 {
        return Err(Error::Precondition(format!("{} has level {}, not 1600", f.id, f.level)));
    }
    let chi = chi8();
    let twisted: Vec<(usize, GaussianElt)> = (1..=f.len())
        .step_by(2)
        .map(|n| (n, chi.value(n as i64) * f.a_gaussian(n).unwrap()))
        .collect();
    let mut hits = Vec::new();
    let mut compared = 0;
    for g in records.iter().filter(|g| g.degree() == 2 && f.level % g.level == 0) {
        let here: Vec<_> = twisted.iter().filter(|(n, _)| *n <= g.len()).collect();
        if here.iter().all(|(n, b)| g.a_gaussian(*n).as_ref() == Some(b)) {
            compared = here.len();
            hits.push(g);
        }
    }
    match hits.as_slice() {
        [g] => Ok(TwistMatch { source: f.id.clone(), target: g.id.clone(), level: g.level, compared }),
        [] => Err(Error::Dataset(format!("{} ⊗ χ₈ matches no form in the dataset", f.id))),
        _ => Err(Error::Dataset(format!(
            "{} ⊗ χ₈ matches {}",
            f.id,
            hits.iter().map(|g| g.id.as_str()).collect::<Vec<_>>().join(", ")
        ))),
    }
}

/// `P2` exponents of `E_γ,2` that a hypothetical solution can have.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S3Routes {
    pub exponents: BTreeSet<u32>,
}

/// S3: twist by `χ₈` down to level 800. For each possible `P2` exponent `e`
/// of `E_γ,2` the twisted representation has level `split_level(e)`; where
/// that differs from 800 at 2 the Carayol axiom applies, otherwise (only for
/// `d = 3`) the trace at 3 of `f ⊗ χ₈` does the work. Level-800 forms go
/// straight to the trace.
pub fn s3_eliminate(f: &NewformRecord, d: u32, records: &[NewformRecord], routes: &S3Routes) -> Result<EliminationResult> {
    require(f, NewformClass::S3)?;
    if d == 3 && f.level == 800 {
        return trace_at_3_eliminate(f);
    }
    let m = twist_and_match(f, records)?;
    let target = records.iter().find(|g| g.id == m.target).unwrap();
    let mut r = EliminationResult::new(f, NewformClass::S3, Method::TwistCarayol);
    let mut carayol = Vec::new();
    let mut same = Vec::new();
    for &e in &routes.exponents {
        let level = split_level(KConductor { p2: e, p5: 2 })
            .ok_or_else(|| Error::Precondition(format!("P2 exponent {e} does not split evenly")))?;
        if level.trailing_zeros() != m.level.trailing_zeros() {
            carayol.push((e, level));
        } else {
            same.push((e, level));
        }
    }
    r.details = format!(
        "{} ⊗ χ₈ = {} (level {}); Carayol for P2 exponents {:?}",
        f.id,
        m.target,
        m.level,
        carayol.iter().map(|c| c.0).collect::<Vec<_>>()
    );
    if same.is_empty() {
        return Ok(r);
    }
    if d != 3 {
        r.inconclusive = Some(format!("twisted levels {same:?} agree with {} at 2", m.level));
        return Ok(r);
    }
    let a3 = target.a_gaussian(3).unwrap();
    debug_assert_eq!(a3, -f.a_gaussian(3).unwrap());
    r.method = Method::TraceAt3;
    match trace_at_3_exceptional(&a3) {
        Ok((h, primes)) => {
            r.details += &format!(
                "; trace at 3 for {:?}: a₃(f ⊗ χ₈) = {a3}, a_𝔓₃ = {h}, exceptional {primes:?}",
                same.iter().map(|c| c.0).collect::<Vec<_>>()
            );
            r.exceptional = primes;
        }
        Err(e) => r.inconclusive = Some(e),
    }
    Ok(r)
}

/// Dispatches a form to its method for exponent `d`.
pub fn eliminate_newform(f: &NewformRecord, d: u32, records: &[NewformRecord], routes: &S3Routes) -> Result<EliminationResult> {
    match classify_newform(f) {
        NewformClass::S1 => s1_conditions(f, d),
        NewformClass::S2 => s2_exceptional_primes(f),
        NewformClass::S3 => s3_eliminate(f, d, records, routes),
    }
}

/// The S3 forms are even in `Z[i]`: `(1 + i) | a_q` at every good `q ≤ bound`,
/// as the 2-torsion of `E_γ` forces for the surface. Only the shapes `t`
/// and `it` make this a condition on `t`.
pub fn s3_parity_check(f: &NewformRecord, bound: u64) -> Check {
    let mut odd = Vec::new();
    for q in (3..=bound.min(f.len() as u64)).filter(|&q| is_prime(q) && f.level % q != 0) {
        let a = f.a_gaussian(q as usize).unwrap();
        let s = &a.re + &a.im;
        if !(s.is_integer() && s.to_integer().is_even()) {
            odd.push(q);
        }
    }
    Check::verdict(Claim::InnerTwist, odd.is_empty(), format!("{}: (1 + i) | a_q for q ≤ {bound}", f.id))
        .with_values("[]", format!("{odd:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let table = [
            (1, InnerTwistShape::T),
            (19, InnerTwistShape::T),
            (9, InnerTwistShape::IT),
            (11, InnerTwistShape::IT),
            (3, InnerTwistShape::TMinusIT),
            (17, InnerTwistShape::TMinusIT),
            (7, InnerTwistShape::TPlusIT),
            (13, InnerTwistShape::TPlusIT),
        ];
        for (r, s) in table {
            assert_eq!(inner_twist_shape(r).unwrap(), s, "{r}");
            assert_eq!(inner_twist_shape(r + 40).unwrap(), s);
        }
        assert!(inner_twist_shape(10).is_err());
        assert!(inner_twist_shape(5).is_err());
        assert_eq!(shape_bound(3).unwrap(), 2);
        assert_eq!(shape_bound(19).unwrap(), 8);
    }

    #[test]
    fn hecke_values() {
        assert_eq!(hecke_trace_81(&GaussianElt::from_ints(-2, 2)), GaussianElt::from_i64(14));
        assert_eq!(hecke_trace_81(&GaussianElt::from_ints(2, -2)), GaussianElt::from_i64(14));
        assert_eq!(hecke_trace_81(&GaussianElt::from_ints(-1, 1)), GaussianElt::from_i64(2));
        assert_eq!(hecke_trace_81(&GaussianElt::zero()), GaussianElt::from_i64(-18));
        let n = hecke_trace_81_numeric(Complex64::new(-2.0, 2.0));
        assert!((n - Complex64::new(14.0, 0.0)).norm() < 1e-9);
        let (_, p) = trace_at_3_exceptional(&GaussianElt::from_ints(-2, 2)).unwrap();
        assert_eq!(p, [2]);
        let (_, p) = trace_at_3_exceptional(&GaussianElt::from_ints(1, -1)).unwrap();
        assert_eq!(p, [2, 5]);
        assert!(trace_at_3_exceptional(&GaussianElt::zero()).is_err());
    }

    #[test]
    fn sturm() {
        assert_eq!(sturm_bound(1600, 2), 480);
        assert_eq!(sturm_bound(800, 2), 240);
        assert_eq!(sturm_bound(1, 2), 1);
        assert_eq!(sturm_bound(11, 2), 2);
    }

    #[test]
    fn cm_residues() {
        assert_eq!(split_residues(-4), [1, 9, 13, 17]);
        assert_eq!(split_residues(-20), [1, 3, 7, 9]);
    }
}
