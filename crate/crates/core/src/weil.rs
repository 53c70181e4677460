//! Conductor of `Res_{K/Q} E_γ` through Milne's formula, the bookkeeping
//! table of the four 2-dimensional pieces and the Serre parameters.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::check::{Check, Claim, Status};
use crate::descent::{EquationTag, Nu};
use crate::elliptic::expected_exponents;
use crate::galois::{build_epsilon, DirichletChar};
use crate::fields::{Field, GaussianElt};
use crate::{Error, Result};

/// `2^e₂ · 5^e₅ · c₀^k` over Q with `c₀ = rad(c)` kept symbolic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConductorIdeal {
    pub e2: u32,
    pub e5: u32,
    pub c0: u32,
}

impl ConductorIdeal {
    pub const fn new(e2: u32, e5: u32, c0: u32) -> Self {
        ConductorIdeal { e2, e5, c0 }
    }

    pub fn mul(self, o: ConductorIdeal) -> ConductorIdeal {
        ConductorIdeal::new(self.e2 + o.e2, self.e5 + o.e5, self.c0 + o.c0)
    }

    /// `2^e₂ 5^e₅`, the level once `c₀` is dropped.
    pub fn level(self) -> u64 {
        2u64.pow(self.e2) * 5u64.pow(self.e5)
    }
}

impl fmt::Display for ConductorIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2^{}·5^{}", self.e2, self.e5)?;
        match self.c0 {
            0 => Ok(()),
            1 => f.write_str("·c₀"),
            k => write!(f, "·c₀^{k}"),
        }
    }
}

/// `N_{E_γ} = P2^e₂ · P5^e₅ · (rad(c))` over K.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KConductor {
    pub p2: u32,
    pub p5: u32,
}

/// `Disc(K/Q) = 2⁴5³`.
pub const DISC_K: ConductorIdeal = ConductorIdeal::new(4, 3, 0);

/// `N_B = Nm(N_{E_γ})·Disc(K/Q)²` with `Nm(P2) = 4`, `Nm(P5) = 5` and
/// `Nm((c₀)) = c₀⁴`.
pub fn milne_conductor(n: KConductor) -> ConductorIdeal {
    ConductorIdeal::new(2 * n.p2, n.p5, 4).mul(DISC_K).mul(DISC_K)
}

/// `υ₂(a+b)` as it indexes the table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NuClass {
    Zero,
    One,
    Two,
    AtLeast3,
}

impl NuClass {
    pub const ALL: [NuClass; 4] = [NuClass::Zero, NuClass::AtLeast3, NuClass::Two, NuClass::One];

    pub fn of(nu: Nu) -> NuClass {
        match nu {
            Nu::Finite(0) => NuClass::Zero,
            Nu::Finite(1) => NuClass::One,
            Nu::Finite(2) => NuClass::Two,
            _ => NuClass::AtLeast3,
        }
    }

    fn representative(self) -> Nu {
        match self {
            NuClass::Zero => Nu::Finite(0),
            NuClass::One => Nu::Finite(1),
            NuClass::Two => Nu::Finite(2),
            NuClass::AtLeast3 => Nu::Finite(3),
        }
    }
}

impl fmt::Display for NuClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NuClass::Zero => "0",
            NuClass::One => "1",
            NuClass::Two => "2",
            NuClass::AtLeast3 => "≥3",
        })
    }
}

/// Conductors of `ρ_{S₁}`, `ρ^σ_{S₁}`, `ρ_{S₂}`, `ρ^σ_{S₂}` for one case.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub equation_tag: EquationTag,
    pub nu2: NuClass,
    pub conductors: [ConductorIdeal; 4],
}

const fn row(equation_tag: EquationTag, nu2: NuClass, e: [(u32, u32); 4]) -> TableRow {
    let (a, b, c, d) = (e[0], e[1], e[2], e[3]);
    TableRow {
        equation_tag,
        nu2,
        conductors: [
            ConductorIdeal::new(a.0, a.1, 1),
            ConductorIdeal::new(b.0, b.1, 1),
            ConductorIdeal::new(c.0, c.1, 1),
            ConductorIdeal::new(d.0, d.1, 1),
        ],
    }
}

/// The table as printed, `(e₂, e₅)` per column.
pub const TABLE_1: [TableRow; 8] = [
    row(EquationTag::Eq4, NuClass::Zero, [(6, 2), (6, 2), (6, 2), (6, 2)]),
    row(EquationTag::Eq4, NuClass::AtLeast3, [(6, 2), (6, 2), (6, 2), (6, 2)]),
    row(EquationTag::Eq4, NuClass::Two, [(4, 2), (4, 2), (4, 2), (4, 2)]),
    row(EquationTag::Eq4, NuClass::One, [(2, 2), (4, 2), (4, 2), (4, 2)]),
    row(EquationTag::Eq5, NuClass::Zero, [(5, 2), (5, 2), (5, 1), (5, 0)]),
    row(EquationTag::Eq5, NuClass::AtLeast3, [(6, 2), (6, 2), (6, 1), (6, 1)]),
    row(EquationTag::Eq5, NuClass::Two, [(4, 2), (4, 2), (4, 1), (4, 1)]),
    row(EquationTag::Eq5, NuClass::One, [(2, 2), (2, 2), (2, 1), (2, 1)]),
];

/// `N_B` for each case as stated; two values when `a + b` is odd.
pub fn stated_nb(tag: EquationTag, nu2: NuClass) -> Vec<ConductorIdeal> {
    let e5 = match tag {
        EquationTag::Eq4 => 8,
        EquationTag::Eq5 => 6,
    };
    let e2: &[u32] = match nu2 {
        NuClass::Zero => &[24, 20],
        NuClass::One => &[24],
        NuClass::Two => &[8],
        NuClass::AtLeast3 => &[16],
    };
    e2.iter().map(|&e| ConductorIdeal::new(e, e5, 4)).collect()
}

/// `N_B` through Milne from the local conductors of `E_γ`.
pub fn derived_nb(tag: EquationTag, nu2: NuClass) -> Vec<ConductorIdeal> {
    let (e2, e5) = expected_exponents(tag, nu2.representative());
    e2.into_iter().map(|p2| milne_conductor(KConductor { p2, p5: e5 })).collect()
}

fn case_label(tag: EquationTag, nu2: NuClass) -> String {
    format!("{tag:?}, υ₂ = {nu2}")
}

/// Milne's formula against all eight stated values of `N_B`.
pub fn milne_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for tag in [EquationTag::Eq4, EquationTag::Eq5] {
        for nu in NuClass::ALL {
            let stated = stated_nb(tag, nu);
            let derived = derived_nb(tag, nu);
            let show = |v: &[ConductorIdeal]| v.iter().map(|c| format!("{c}")).collect::<Vec<_>>().join(" or ");
            out.push(
                Check::verdict(Claim::Milne, stated == derived, case_label(tag, nu))
                    .with_values(show(&stated), show(&derived)),
            );
        }
    }
    out
}

pub fn conductor_table(tag: EquationTag, nu2: NuClass) -> TableRow {
    *TABLE_1.iter().find(|r| r.equation_tag == tag && r.nu2 == nu2).unwrap()
}

/// Row product against `N_B` and the equal-conjugate rule, for one row.
pub fn table_row_checks(r: &TableRow) -> Vec<Check> {
    let c = r.conductors;
    let product = c.iter().fold(ConductorIdeal::new(0, 0, 0), |acc, &x| acc.mul(x));
    let nb = derived_nb(r.equation_tag, r.nu2);
    let label = case_label(r.equation_tag, r.nu2);
    let row_text = c.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(", ");
    let nb_text = nb.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(" or ");
    let product_status = if nb.contains(&product) { Status::Pass } else { Status::Discrepancy };
    let conjugate_ok = c[0] == c[1] && c[2] == c[3];
    vec![
        Check::new(Claim::ConductorTable, product_status, format!("{label}: row {row_text}"))
            .with_values(nb_text, format!("{product}")),
        Check::new(
            Claim::EqualConjugateConductors,
            if conjugate_ok { Status::Pass } else { Status::Discrepancy },
            format!("{label}: N(ρ_S₁) = {}, N(ρ^σ_S₁) = {}, N(ρ_S₂) = {}, N(ρ^σ_S₂) = {}", c[0], c[1], c[2], c[3]),
        ),
    ]
}

pub fn table_checks() -> Vec<Check> {
    TABLE_1.iter().flat_map(table_row_checks).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SerreData {
    pub level: u64,
    pub weight: u32,
    /// `ε̄`.
    pub character: DirichletChar,
    pub conditions: Vec<String>,
}

/// Level from the `ρ_{S₁}` column with `c₀` dropped, weight 2, character `ε̄`.
pub fn serre_parameters(tag: EquationTag, nu2: NuClass) -> SerreData {
    let level = conductor_table(tag, nu2).conductors[0].level();
    SerreData {
        level,
        weight: 2,
        character: build_epsilon().conj(),
        conditions: vec![
            "p > 13 for absolute irreducibility".into(),
            "p ∤ 10".into(),
            "k = 2: good reduction of S₁ at p ∤ c, finite at p | c".into(),
        ],
    }
}

/// Prime-to-`c₀` level of each piece when Milne's `N_B` is split evenly over
/// the four 2-dimensional pieces; `None` if it does not split evenly.
pub fn split_level(n: KConductor) -> Option<u64> {
    let nb = milne_conductor(n);
    (nb.e2 % 4 == 0 && nb.e5 % 4 == 0).then(|| ConductorIdeal::new(nb.e2 / 4, nb.e5 / 4, 1).level())
}

/// Level of `ρ̄ ⊗ χ` from the `P2` exponent `e` of `E_γ,2`, which is
/// unramified over `E_γ` at `P5`: Milne gives `2^(2e+8)·5⁸·c₀⁴`.
pub fn twisted_serre_level(exponent2: u32) -> Result<u64> {
    if exponent2 != 0 && exponent2 != 4 {
        return Err(Error::Precondition(format!("P2 exponent {exponent2} is not 0 or 4")));
    }
    Ok(split_level(KConductor { p2: exponent2, p5: 2 }).unwrap())
}

pub fn serre_checks() -> Vec<Check> {
    let mut levels: Vec<u64> = Vec::new();
    let mut rows = Vec::new();
    for r in &TABLE_1 {
        let s = serre_parameters(r.equation_tag, r.nu2);
        rows.push(format!("{}: {}", case_label(r.equation_tag, r.nu2), s.level));
        if !levels.contains(&s.level) {
            levels.push(s.level);
        }
    }
    levels.sort_unstable_by(|a, b| b.cmp(a));
    let set_ok = levels == [1600, 800, 400, 100] && levels.iter().all(|l| 1600 % l == 0);
    let eps_bar = build_epsilon().conj();
    let mut out = vec![Check::verdict(Claim::SerreLevel, set_ok, rows.join("; ")).with_values(
        "{1600, 800, 400, 100}",
        format!("{{{}}}", levels.iter().map(|l| format!("{l}")).collect::<Vec<_>>().join(", ")),
    )];
    // weight k forces χ(−1) = (−1)^k for a nonzero form in S_k(M, χ)
    out.push(Check::verdict(
        Claim::SerreWeight,
        eps_bar.value(-1) == GaussianElt::one(),
        "k = 2 is compatible with ε̄(−1) = 1",
    ));
    out.push(
        Check::verdict(
            Claim::SerreCharacter,
            eps_bar == build_epsilon().pow(3) && eps_bar.conductor == 20,
            "ε⁻¹ = ε³ = ε̄, conductor 20",
        )
        .with_values("-i", format!("{}", eps_bar.value(3))),
    );
    let twisted: Vec<_> = [4u32, 0].iter().map(|&e| twisted_serre_level(e)).collect();
    out.push(
        Check::verdict(
            Claim::TwistedLevel,
            matches!(twisted.as_slice(), [Ok(400), Ok(100)]) && twisted_serre_level(2).is_err(),
            "P2 exponent 4 ↦ 400, 0 ↦ 100",
        )
        .with_values("400, 100", format!("{:?}", twisted.iter().map(|t| t.as_ref().ok().copied()).collect::<Vec<_>>())),
    );
    out
}

/// Every weil check in order.
pub fn weil_checks() -> Vec<Check> {
    let mut out = milne_checks();
    out.extend(table_checks());
    out.extend(serre_checks());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::tally;

    #[test]
    fn milne_examples() {
        assert_eq!(milne_conductor(KConductor { p2: 8, p5: 2 }), ConductorIdeal::new(24, 8, 4));
        assert_eq!(milne_conductor(KConductor { p2: 8, p5: 0 }), ConductorIdeal::new(24, 6, 4));
        assert_eq!(milne_conductor(KConductor { p2: 0, p5: 0 }).mul(ConductorIdeal::new(0, 0, 0)), ConductorIdeal::new(8, 6, 4));
        assert!(milne_checks().iter().all(Check::passed));
        assert_eq!(milne_checks().len(), 8);
    }

    #[test]
    fn table_findings() {
        let r = conductor_table(EquationTag::Eq4, NuClass::Zero);
        assert!(table_row_checks(&r)[0].passed());
        let r = conductor_table(EquationTag::Eq5, NuClass::Zero);
        let c = &table_row_checks(&r)[0];
        assert_eq!(c.status, Status::Discrepancy);
        assert_eq!(c.computed.as_deref(), Some("2^20·5^5·c₀^4"));
        let r = conductor_table(EquationTag::Eq4, NuClass::AtLeast3);
        let c = &table_row_checks(&r)[0];
        assert_eq!(c.status, Status::Discrepancy);
        assert_eq!(c.computed.as_deref(), Some("2^24·5^8·c₀^4"));
        assert_eq!(c.expected.as_deref(), Some("2^16·5^8·c₀^4"));
        // only the first row's product agrees; two rows break the conjugate rule
        let [pass, _, disc, _] = tally(&table_checks());
        assert_eq!((pass, disc), (1 + 6, 7 + 2));
    }

    #[test]
    fn serre() {
        use EquationTag::*;
        assert_eq!(serre_parameters(Eq4, NuClass::Zero).level, 1600);
        assert_eq!(serre_parameters(Eq5, NuClass::One).level, 100);
        assert_eq!(serre_parameters(Eq5, NuClass::Zero).level, 800);
        assert_eq!(serre_parameters(Eq4, NuClass::Two).level, 400);
        assert_eq!(twisted_serre_level(4).unwrap(), 400);
        assert_eq!(twisted_serre_level(0).unwrap(), 100);
        assert!(twisted_serre_level(2).is_err());
        assert_eq!(split_level(KConductor { p2: 6, p5: 2 }), Some(800));
        assert_eq!(split_level(KConductor { p2: 8, p5: 2 }), Some(1600));
        assert_eq!(split_level(KConductor { p2: 1, p5: 2 }), None);
        assert!(serre_checks().iter().all(Check::passed));
    }
}
