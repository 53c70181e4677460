//! Command-line driver: runs the verification routines of `quintic-core`,
//! loads the newform dataset and emits text or JSON reports.

pub mod dataset;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use quintic_core::descent::{classify_with_bound, lemma_scan, search_solutions, DEFAULT_TRIAL_BOUND};
use quintic_core::eliminate::{
    assemble_theorem, classify_newform, dataset_checks, eligible_primes, eliminate_newform, relevant_levels, s3_routes,
    stated_conditions, twist_and_match, Census, NewformClass, NewformRecord, ROUTE_HEIGHT,
};
use quintic_core::elliptic::{
    conductor_profile, discriminant_check, frey_twist, reduce_and_count, twist2_conductor_at_2, verify_isogeny, DEFAULT_ENUMERATION_BOUND,
};
use quintic_core::fields::PrimeLocalization;
use quintic_core::{Check, Claim};

use crate::dataset::{load_newforms, resolve_dataset, DatasetError};
use crate::report::{Format, Report};

#[derive(Debug, Parser)]
#[command(name = "quintic", version, about = "Exact checks of the modular method for x^5 + y^5 = d z^p")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Newform dataset; defaults to $QUINTIC_DATASET, then the bundled file.
    #[arg(long, global = true)]
    pub dataset: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Also write the report here.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Treat discrepancies as failures.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Largest residue field enumerated for point counts.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_BOUND, value_parser = positive_u128)]
    pub point_bound: u128,
    /// Trial-division bound for factoring φ(a, b).
    #[arg(long, global = true, default_value_t = DEFAULT_TRIAL_BOUND, value_parser = clap::value_parser!(u64).range(2..))]
    pub trial_bound: u64,
}

#[derive(Debug, Clone, Args)]
pub struct Pair {
    #[arg(long, allow_hyphen_values = true)]
    pub a: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub b: i64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Residue scans behind the descent lemmas.
    Lemmas {
        #[arg(long, default_value_t = 200)]
        lmax: u64,
    },
    /// Case data, discriminant, conductor and trace at 3 for one pair.
    Frey {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 2)]
        d: u32,
        #[arg(long, default_value_t = 17)]
        p: u64,
    },
    /// The 2-isogeny and its dual, checked symbolically.
    Isogeny {
        #[command(flatten)]
        pair: Pair,
    },
    /// Local conductor exponents of E_γ and of its twist by 2.
    Conductor {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 2)]
        d: u32,
    },
    /// The splitting character, cocycle table and splitting map.
    Quer,
    /// Milne's formula, the conductor table and the Serre parameters.
    Weil,
    /// Schema, invariants and census of the dataset.
    NewformsValidate,
    /// Per-newform elimination for one exponent.
    Eliminate {
        #[arg(long, default_value_t = 2)]
        d: u32,
        /// Restrict to one newform id.
        #[arg(long)]
        form: Option<String>,
    },
    /// Assembled prime conditions for one exponent.
    Theorem {
        #[arg(long, default_value_t = 2)]
        d: u32,
    },
    /// Exhaustive search for small solutions.
    Search {
        #[arg(long, default_value_t = 2)]
        d: u32,
        #[arg(long, default_value_t = 17)]
        p: u64,
        #[arg(long, default_value_t = 200)]
        height: i64,
    },
    /// Primes up to x covered by the conditions for d.
    Eligible {
        #[arg(long, default_value_t = 2)]
        d: u32,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(100..))]
        x: u64,
        /// Include the list of primes in the report.
        #[arg(long)]
        list: bool,
    },
}

fn positive_u128(s: &str) -> Result<u128, String> {
    match s.parse::<u128>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

/// An input problem rather than a failed check; exits with 2.
#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error(transparent)]
    Core(#[from] quintic_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Lemmas { .. } => "lemmas",
            Command::Frey { .. } => "frey",
            Command::Isogeny { .. } => "isogeny",
            Command::Conductor { .. } => "conductor",
            Command::Quer => "quer",
            Command::Weil => "weil",
            Command::NewformsValidate => "newforms-validate",
            Command::Eliminate { .. } => "eliminate",
            Command::Theorem { .. } => "theorem",
            Command::Search { .. } => "search",
            Command::Eligible { .. } => "eligible",
        }
    }
}

fn records(config: &RunConfig) -> Result<Vec<NewformRecord>, RunError> {
    Ok(load_newforms(&resolve_dataset(config.dataset.as_deref()))?)
}

fn check_d(d: u32) -> Result<(), RunError> {
    if d == 2 || d == 3 {
        Ok(())
    } else {
        Err(RunError::Usage(format!("d must be 2 or 3, got {d}")))
    }
}

fn frey_report(r: &mut Report, cfg: &RunConfig, a: i64, b: i64, d: u32, p: u64) -> Result<(), RunError> {
    let case = classify_with_bound(a, b, d, p, cfg.trial_bound)?;
    r.push(
        &Check::pass(
            Claim::Classification,
            format!("({a}, {b}): {:?}, υ₂ = {}, υ₅ = {}, φ = {}", case.equation_tag, case.nu2, case.nu5, case.phi),
        )
        .with_values("c₀^p or 5c₀^p", if case.is_pth_power { "p-th power" } else { "not a p-th power" }),
    );
    r.push(&discriminant_check(a, b)?);
    r.push(&conductor_profile(a, b, d)?.check());
    if d == 3 {
        let pc = reduce_and_count(&frey_twist(a, b)?, &PrimeLocalization::p3(), cfg.point_bound)?;
        r.push(
            &Check::verdict(Claim::TraceAtP3, pc.trace == -18, format!("({a}, {b}): {} points over F_{}", pc.count, pc.q))
                .with_values("-18", pc.trace.to_string()),
        );
        r.set("trace_p3", pc.trace as i64);
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<Report, RunError> {
    let cfg = &cli.config;
    let mut r = Report::new(cli.command.name());
    match &cli.command {
        Command::Lemmas { lmax } => r.extend(&lemma_scan(*lmax)?),
        Command::Frey { pair, d, p } => {
            check_d(*d)?;
            frey_report(&mut r, cfg, pair.a, pair.b, *d, *p)?;
        }
        Command::Isogeny { pair } => r.extend(&verify_isogeny(pair.a, pair.b)?),
        Command::Conductor { pair, d } => {
            check_d(*d)?;
            let profile = conductor_profile(pair.a, pair.b, *d)?;
            r.push(&profile.check());
            r.set("ideal", profile.ideal());
            if let Ok(t) = twist2_conductor_at_2(pair.a, pair.b) {
                r.push(&t.check);
            }
        }
        Command::Quer => r.extend(&quintic_core::galois::galois_checks()?),
        Command::Weil => r.extend(&quintic_core::weil::weil_checks()),
        Command::NewformsValidate => {
            let recs = records(cfg)?;
            r.extend(&dataset_checks(&recs));
            let census = Census::of(&recs, classify_newform);
            for level in [100, 400, 800, 1600] {
                let t = census.totals(&[level]);
                r.set(&format!("census_{level}"), json!({"S1": t[0], "S2": t[1], "S3": t[2]}));
            }
        }
        Command::Eliminate { d, form } => {
            check_d(*d)?;
            let recs = records(cfg)?;
            let routes = s3_routes(*d, ROUTE_HEIGHT)?;
            let chosen: Vec<&NewformRecord> = recs
                .iter()
                .filter(|f| match form {
                    Some(id) => &f.id == id,
                    None => relevant_levels(*d).contains(&f.level),
                })
                .collect();
            if chosen.is_empty() {
                return Err(RunError::Usage(format!("no newform {}", form.as_deref().unwrap_or("at the relevant levels"))));
            }
            for f in chosen {
                if f.level == 1600 && classify_newform(f) == NewformClass::S3 {
                    r.push(&twist_and_match(f, &recs)?.check());
                }
                r.push(&eliminate_newform(f, *d, &recs, &routes)?.check());
            }
        }
        Command::Theorem { d } => {
            check_d(*d)?;
            let recs = records(cfg)?;
            let t = assemble_theorem(*d, &recs)?;
            r.extend(&t.checks);
            let (num, den) = t.conditions.density();
            r.set("conditions", t.conditions.to_string());
            r.set("lower_bound", t.conditions.lower);
            r.set("residues_mod_20", t.conditions.residues.clone());
            r.set("density", num as f64 / den as f64);
            r.set("twist2_exponents", t.routes.exponents.iter().copied().collect::<Vec<_>>());
        }
        Command::Search { d, p, height } => {
            check_d(*d)?;
            let hits = search_solutions(*d, *p, *height)?;
            let nontrivial: Vec<String> = hits.iter().filter(|h| !h.trivial).map(|h| format!("({}, {}, {})", h.a, h.b, h.z)).collect();
            r.push(
                &Check::verdict(
                    Claim::Search,
                    nontrivial.is_empty(),
                    format!("d = {d}, p = {p}, |a|, |b| ≤ {height}: {} solutions, all with |z| = 1", hits.len()),
                )
                .with_values("[]", format!("{nontrivial:?}")),
            );
            r.set("solutions", hits.iter().map(|h| json!([h.a, h.b, h.z as i64])).collect::<Vec<_>>());
        }
        Command::Eligible { d, x, list } => {
            check_d(*d)?;
            let c = stated_conditions(*d)?;
            let (primes, share) = eligible_primes(&c, *x);
            let (num, den) = c.density();
            let target = num as f64 / den as f64;
            // the deviation allowed shrinks like 1/log x
            let tol = 2.0 / (*x as f64).ln();
            r.push(
                &Check::verdict(
                    Claim::Density,
                    (share - target).abs() <= tol,
                    format!("{c}, x = {x}: {} primes, tolerance {tol:.3}", primes.len()),
                )
                .with_values(format!("{target}"), format!("{share:.4}")),
            );
            r.set("count", primes.len());
            r.set("density", share);
            if *list {
                r.set("primes", primes);
            }
        }
    }
    Ok(r)
}

/// Parses `argv`, runs the command and writes the report. Returns 0 when all
/// checks pass, 1 on a failed check and 2 on bad input.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let report = match execute(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let text = report.render(cli.config.format);
    if let Some(path) = &cli.config.output {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 2;
        }
    }
    if std::io::stdout().write_all(text.as_bytes()).is_err() {
        return 2;
    }
    report.exit_code(cli.config.strict)
}
