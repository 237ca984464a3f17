use std::process::{Command, ExitCode};
use std::time::Instant;

use descentlab::report::Check;
use descentlab::scan::{par_factor_scan, pool};
use descentlab::suites::{
    diff_reports, golden_rows, run_suite, SuiteParams, SIGNED_GOLDEN, UNSIGNED_GOLDEN,
};
use descentlab_core::cyclo::{signed_derivative_theorem_check, ScanConfig};
use descentlab_core::descent::{beta_table, rho, Dyadic};
use descentlab_core::numbers::euler_number;
use num_bigint::BigInt;

type Outcome = anyhow::Result<(bool, String)>;
type Criterion = (&'static str, fn() -> Outcome);

fn dy(num: i64, exp: u32) -> Dyadic {
    Dyadic::new(BigInt::from(num), exp)
}

fn table_one() -> Outcome {
    let rows = [
        (1, dy(1, 0)),
        (3, dy(1, 1)),
        (7, dy(1, 1)),
        (15, dy(29, 6)),
        (31, dy(3991, 13)),
    ];
    let mut ok = true;
    let mut shown = Vec::new();
    for (n, want) in rows {
        let got = rho(n)?;
        ok &= got == want;
        shown.push(format!("rho({n})={got}"));
    }
    Ok((ok, shown.join(" ")))
}

fn popcount_invariance() -> Outcome {
    let mut first: [Option<Dyadic>; 6] = Default::default();
    let mut ok = true;
    for n in 1..=24u64 {
        let r = rho(n)?;
        let slot = &mut first[n.count_ones() as usize];
        match slot {
            Some(f) => ok &= *f == r,
            None => *slot = Some(r),
        }
    }
    Ok((ok, "n <= 24".into()))
}

fn compare_rows(text: &str, signed: bool, rows: impl Fn(u64) -> Option<bool>) -> Outcome {
    let pool = pool(4)?;
    let config = ScanConfig::default();
    let mut ok = true;
    let mut notes = Vec::new();
    for row in golden_rows(text)? {
        // Some(true): exact match; Some(false): listed factors must be present.
        let Some(exact) = rows(row.n) else { continue };
        let got = par_factor_scan(&beta_table(row.n, signed)?, &config, &pool)?;
        let (missing, extra) = diff_reports(&row, &got);
        let pass = missing.is_empty() && (!exact || extra.is_empty());
        ok &= pass;
        if !pass || !extra.is_empty() {
            notes.push(format!("n={} missing {missing:?} extra {extra:?}", row.n));
        }
    }
    Ok((ok, notes.join("; ")))
}

fn table_two() -> Outcome {
    compare_rows(UNSIGNED_GOLDEN, false, |n| match n {
        3..=15 => Some(true),
        16 => Some(false),
        _ => None,
    })
}

fn table_three() -> Outcome {
    compare_rows(SIGNED_GOLDEN, true, |n| {
        (2..=10).contains(&n).then_some(true)
    })
}

fn suite(name: &str, keep: impl Fn(&Check) -> bool) -> Outcome {
    let checks: Vec<Check> = run_suite(name, &SuiteParams::default())?
        .into_iter()
        .filter(|c| keep(c))
        .collect();
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.as_str())
        .collect();
    Ok((
        !checks.is_empty() && failed.is_empty(),
        format!("{} checks, failed {failed:?}", checks.len()),
    ))
}

fn derivative() -> Outcome {
    let mut ok = euler_number(6) == BigInt::from(61);
    let mut shown = Vec::new();
    for (p, magnitude) in [(3u64, 24), (5, 800), (7, 54656)] {
        let r = signed_derivative_theorem_check(p)?;
        ok &= r.holds() && r.magnitude == BigInt::from(magnitude);
        shown.push(format!("p={p}: {}", r.magnitude));
    }
    Ok((ok, shown.join(" ")))
}

fn desk_run() -> Outcome {
    let status = Command::new(env!("CARGO_BIN_EXE_descentlab"))
        .args(["verify", "--suite", "all", "--desk-scale", "--workers", "2"])
        .stdout(std::process::Stdio::null())
        .stderr(std::process::Stdio::null())
        .status()?;
    Ok((status.success(), format!("exit {:?}", status.code())))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("1 rho table", table_one),
        ("2 popcount invariance", popcount_invariance),
        ("3 unsigned factor table", table_two),
        ("4 signed factor table", table_three),
        ("5 oracle equivalence", || {
            suite("oracle", |c| c.name.contains("enumeration"))
        }),
        ("6 mod 4 structure", || suite("mod4", |_| true)),
        ("7 mod 2p classes", || suite("classes", |_| true)),
        ("8 quadratic factors", || suite("quadratic", |_| true)),
        ("9 derivative closed form", derivative),
        ("10 structural identities", || {
            suite("structure", |c| {
                !c.name.contains("single-d") && !c.name.contains("sum_i") && !c.name.contains("[d^")
            })
        }),
        ("11 desk-scale suite run", desk_run),
    ];
    let mut all = true;
    for (name, f) in criteria {
        let start = Instant::now();
        let (pass, detail) = f().unwrap_or_else(|e| (false, format!("error: {e:#}")));
        all &= pass;
        println!(
            "{} criterion {name} [{:.1}s] {detail}",
            if pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
