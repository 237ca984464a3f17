//! Command-line front end for the descent-statistics engine.

pub mod cache;
pub mod report;
pub mod scan;
pub mod suites;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use descentlab_core::cyclo::{observations, CandidatePolicy, FactorReport, ScanConfig};
use descentlab_core::descent::{rho, DescentTable, Dyadic, Limits};
use descentlab_core::numbers::{euler_number, factorial, signed_euler_number};
use descentlab_core::qsym::{f_boolean, f_cubical_b};

use report::{Format, ObservationRow, RhoRow};
use suites::{SuiteParams, UnknownSuite};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

/// A verification or golden comparison failed.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct Mismatch(pub String);

#[derive(Debug, Parser)]
#[command(
    name = "descentlab",
    version,
    about = "Exact descent statistics and cyclotomic factors"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build (or load) a descent table and check its sum and maximum.
    Table(TableArgs),
    /// Print rho(n) and 1/2 - rho(n).
    Rho(RhoArgs),
    /// Scan for cyclotomic factors of the descent set polynomial.
    Factors(FactorArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Evaluate the factor-table observations without asserting them.
    Observations(FactorArgs),
    /// Dump F(B_n) or F_B(C_n) in the M or L basis.
    Poly(PolyArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub workers: u16,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub signed: bool,
    #[arg(long, env = "DESCENTLAB_CACHE")]
    pub cache_dir: Option<PathBuf>,
    /// Table file to write; the table goes to stdout otherwise.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RhoArgs {
    #[arg(long)]
    pub n: u64,
    /// Last n of a range starting at `--n`.
    #[arg(long)]
    pub to: Option<u64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct FactorArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub to: Option<u64>,
    #[arg(long)]
    pub signed: bool,
    #[arg(long, default_value_t = 10_000)]
    pub max_index: u64,
    #[arg(long, default_value_t = 3)]
    pub multiplicity: u32,
    #[arg(long, default_value = "heuristic")]
    pub policy: CandidatePolicy,
    #[arg(long, env = "DESCENTLAB_CACHE")]
    pub cache_dir: Option<PathBuf>,
    /// Golden report file to compare against.
    #[arg(long)]
    pub golden: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Shrink every range to a quick run.
    #[arg(long)]
    pub desk_scale: bool,
    #[arg(long)]
    pub max_n: Option<u64>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub p: Option<u64>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PolyBasis {
    M,
    L,
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub signed: bool,
    #[arg(long, value_enum, default_value = "m")]
    pub basis: PolyBasis,
    /// Reduce coefficients modulo this.
    #[arg(long)]
    pub modulus: Option<u64>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(io::BufWriter::new(
            fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn warn(msg: &str) {
    eprintln!("warning: {msg}");
}

fn load(n: u64, signed: bool, cache_dir: Option<&Path>) -> Result<DescentTable> {
    cache::load_or_build(n, signed, &Limits::default(), cache_dir, warn)
}

fn range(n: u64, to: Option<u64>) -> Result<std::ops::RangeInclusive<u64>> {
    let to = to.unwrap_or(n);
    if to < n {
        bail!(descentlab_core::Error::Contract(
            "--to must not be below --n".into()
        ));
    }
    Ok(n..=to)
}

fn cmd_table(a: &TableArgs) -> Result<()> {
    let t = load(a.n, a.signed, a.cache_dir.as_deref())?;
    let expected_sum = if a.signed {
        factorial(a.n) << a.n
    } else {
        factorial(a.n)
    };
    let expected_max = if a.signed {
        signed_euler_number(a.n)
    } else {
        euler_number(a.n)
    };
    let sum = t.sum();
    let max = num_bigint::BigInt::from(t.max());
    let summary = format!(
        "n={} signed={} subsets={} sum={sum} ({}) max={max} ({})",
        a.n,
        u8::from(a.signed),
        t.len(),
        if sum == expected_sum {
            "ok"
        } else {
            "MISMATCH"
        },
        if max == expected_max {
            "ok"
        } else {
            "MISMATCH"
        },
    );
    match &a.output {
        Some(p) => {
            cache::save(p, &t).with_context(|| format!("writing {}", p.display()))?;
            println!("{summary}");
        }
        None => {
            cache::write_table(io::stdout().lock(), &t)?;
            eprintln!("{summary}");
        }
    }
    if sum != expected_sum || max != expected_max {
        bail!(Mismatch(summary));
    }
    Ok(())
}

fn cmd_rho(a: &RhoArgs) -> Result<()> {
    let rows = range(a.n, a.to)?
        .map(|n| {
            let r = rho(n)?;
            Ok(RhoRow {
                n,
                popcount: n.count_ones(),
                half_minus_rho: Dyadic::half().sub(&r),
                rho: r,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    report::write_rho_rows(sink(a.common.output.as_deref())?, &rows, a.common.format)?;
    Ok(())
}

fn scan_range(a: &FactorArgs) -> Result<Vec<FactorReport>> {
    let config = ScanConfig {
        max_index: a.max_index,
        max_multiplicity: a.multiplicity,
        policy: a.policy,
    };
    let pool = scan::pool(a.common.workers.into())?;
    range(a.n, a.to)?
        .map(|n| scan::par_factor_scan(&load(n, a.signed, a.cache_dir.as_deref())?, &config, &pool))
        .collect()
}

/// Compares computed reports with golden rows for the same `(n, signed)`.
pub fn golden_differences(golden: &[FactorReport], computed: &[FactorReport]) -> Vec<String> {
    let mut out = Vec::new();
    for r in computed {
        let Some(g) = golden.iter().find(|g| g.n == r.n && g.signed == r.signed) else {
            out.push(format!(
                "n={} signed={}: no golden row",
                r.n,
                u8::from(r.signed)
            ));
            continue;
        };
        let (missing, extra) = suites::diff_reports(g, r);
        if !missing.is_empty() || !extra.is_empty() {
            let show = |v: &[(u64, u32)]| {
                v.iter()
                    .map(|&(m, j)| {
                        if j == 1 {
                            format!("Phi_{m}")
                        } else {
                            format!("Phi_{m}^{j}")
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            out.push(format!(
                "n={} signed={}: missing [{}] extra [{}]",
                r.n,
                u8::from(r.signed),
                show(&missing),
                show(&extra)
            ));
        }
    }
    out
}

fn cmd_factors(a: &FactorArgs) -> Result<()> {
    let reports = scan_range(a)?;
    report::write_factor_reports(sink(a.common.output.as_deref())?, &reports, a.common.format)?;
    if let Some(path) = &a.golden {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let golden = suites::golden_rows(&text)?;
        let diffs = golden_differences(&golden, &reports);
        if !diffs.is_empty() {
            bail!(Mismatch(format!("golden mismatch:\n{}", diffs.join("\n"))));
        }
    }
    Ok(())
}

fn cmd_observations(a: &FactorArgs) -> Result<()> {
    let mut rows = Vec::new();
    for r in scan_range(a)? {
        let rho_n = rho(r.n)?;
        rows.extend(
            observations(&r, &rho_n)
                .into_iter()
                .map(|observation| ObservationRow {
                    n: r.n,
                    signed: r.signed,
                    observation,
                }),
        );
    }
    report::write_observations(sink(a.common.output.as_deref())?, &rows, a.common.format)?;
    Ok(())
}

fn cmd_verify(a: &VerifyArgs) -> Result<()> {
    let params = SuiteParams {
        desk_scale: a.desk_scale,
        max_n: a.max_n,
        n: a.n,
        p: a.p,
        workers: a.common.workers.into(),
    };
    let checks = suites::run_suite(&a.suite, &params)?;
    report::write_checks(sink(a.common.output.as_deref())?, &checks, a.common.format)?;
    let failed = checks.iter().filter(|c| !c.passed).count();
    eprintln!("{} passed, {failed} failed", checks.len() - failed);
    if failed > 0 {
        bail!(Mismatch(format!("{failed} checks failed")));
    }
    Ok(())
}

fn cmd_poly(a: &PolyArgs) -> Result<()> {
    let out = sink(a.output.as_deref())?;
    let mut p = if a.signed {
        f_cubical_b(a.n, a.modulus)?.as_qsym().clone()
    } else {
        f_boolean(a.n, a.modulus)?
    };
    if a.basis == PolyBasis::L {
        p = p.m_to_l()?;
    }
    report::dump_qsym(out, &p)?;
    Ok(())
}

pub fn execute(config: &RunConfig) -> Result<()> {
    match &config.command {
        Command::Table(a) => cmd_table(a),
        Command::Rho(a) => cmd_rho(a),
        Command::Factors(a) => cmd_factors(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Observations(a) => cmd_observations(a),
        Command::Poly(a) => cmd_poly(a),
    }
}

/// Exit status for an error returned by [`execute`].
pub fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Mismatch>().is_some() {
        return EXIT_MISMATCH;
    }
    if err.downcast_ref::<UnknownSuite>().is_some() {
        return EXIT_USAGE;
    }
    match err.downcast_ref::<descentlab_core::Error>() {
        Some(descentlab_core::Error::ResourceLimit { .. }) => EXIT_RESOURCE,
        _ => EXIT_USAGE,
    }
}

pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            });
        }
    };
    match execute(&config) {
        Ok(()) => ExitCode::from(EXIT_PASS),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
