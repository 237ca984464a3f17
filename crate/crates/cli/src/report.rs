//! Output formats: text, CSV (decimal strings only) and JSON lines tagged
//! with the schema version.

use std::io::{self, Write};

use descentlab_core::cyclo::{FactorReport, Observation};
use descentlab_core::descent::Dyadic;
use descentlab_core::numbers::{composition_to_subset, Composition};
use descentlab_core::qsym::QSymPoly;
use serde::Serialize;

pub const SCHEMA: &str = "descentlab/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Serialize)]
struct FactorJson<'a> {
    schema: &'static str,
    n: u64,
    signed: bool,
    policy: &'a str,
    bound: u64,
    factors: Vec<FactorEntry>,
}

#[derive(Serialize)]
struct FactorEntry {
    m: u64,
    multiplicity: u32,
}

pub fn factor_json(r: &FactorReport) -> String {
    serde_json::to_string(&FactorJson {
        schema: SCHEMA,
        n: r.n,
        signed: r.signed,
        policy: r.policy.name(),
        bound: r.bound,
        factors: r
            .factors
            .iter()
            .map(|&(m, multiplicity)| FactorEntry { m, multiplicity })
            .collect(),
    })
    .expect("plain data serializes")
}

pub fn write_factor_reports<W: Write>(
    out: W,
    reports: &[FactorReport],
    format: Format,
) -> io::Result<()> {
    match format {
        Format::Text => lines(out, reports.iter().map(ToString::to_string)),
        Format::Json => lines(out, reports.iter().map(factor_json)),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["n", "signed", "policy", "bound", "m", "multiplicity"])?;
            for r in reports {
                for &(m, j) in &r.factors {
                    w.write_record([
                        r.n.to_string(),
                        u8::from(r.signed).to_string(),
                        r.policy.to_string(),
                        r.bound.to_string(),
                        m.to_string(),
                        j.to_string(),
                    ])?;
                }
            }
            w.flush()
        }
    }
}

fn lines<W: Write>(mut out: W, it: impl Iterator<Item = String>) -> io::Result<()> {
    for l in it {
        writeln!(out, "{l}")?;
    }
    out.flush()
}

/// One row of the ρ table.
#[derive(Debug, Clone)]
pub struct RhoRow {
    pub n: u64,
    pub popcount: u32,
    pub rho: Dyadic,
    pub half_minus_rho: Dyadic,
}

#[derive(Serialize)]
struct RhoJson {
    schema: &'static str,
    n: u64,
    popcount: u32,
    rho: String,
    half_minus_rho: String,
}

pub fn write_rho_rows<W: Write>(out: W, rows: &[RhoRow], format: Format) -> io::Result<()> {
    match format {
        Format::Text => lines(
            out,
            rows.iter().map(|r| {
                format!(
                    "n={} popcount={} rho={} half_minus_rho={}",
                    r.n, r.popcount, r.rho, r.half_minus_rho
                )
            }),
        ),
        Format::Json => lines(
            out,
            rows.iter().map(|r| {
                serde_json::to_string(&RhoJson {
                    schema: SCHEMA,
                    n: r.n,
                    popcount: r.popcount,
                    rho: r.rho.to_string(),
                    half_minus_rho: r.half_minus_rho.to_string(),
                })
                .expect("plain data serializes")
            }),
        ),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["n", "popcount", "rho", "half_minus_rho"])?;
            for r in rows {
                w.write_record([
                    r.n.to_string(),
                    r.popcount.to_string(),
                    r.rho.to_string(),
                    r.half_minus_rho.to_string(),
                ])?;
            }
            w.flush()
        }
    }
}

/// Result of one verification assertion.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(
        suite: &'static str,
        name: impl Into<String>,
        passed: bool,
        detail: impl Into<String>,
    ) -> Self {
        Check {
            suite,
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Serialize)]
struct CheckJson<'a> {
    schema: &'static str,
    #[serde(flatten)]
    check: &'a Check,
}

pub fn check_line(c: &Check) -> String {
    let status = if c.passed { "PASS" } else { "FAIL" };
    if c.detail.is_empty() {
        format!("{status} {}: {}", c.suite, c.name)
    } else {
        format!("{status} {}: {} ({})", c.suite, c.name, c.detail)
    }
}

pub fn write_checks<W: Write>(out: W, checks: &[Check], format: Format) -> io::Result<()> {
    match format {
        Format::Text => lines(out, checks.iter().map(check_line)),
        Format::Json => lines(
            out,
            checks.iter().map(|check| {
                serde_json::to_string(&CheckJson {
                    schema: SCHEMA,
                    check,
                })
                .expect("plain data serializes")
            }),
        ),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["suite", "name", "passed", "detail"])?;
            for c in checks {
                w.write_record([
                    c.suite,
                    &c.name,
                    if c.passed { "1" } else { "0" },
                    &c.detail,
                ])?;
            }
            w.flush()
        }
    }
}

/// One observation evaluated at one `n`.
#[derive(Debug, Clone)]
pub struct ObservationRow {
    pub n: u64,
    pub signed: bool,
    pub observation: Observation,
}

fn status(o: &Observation) -> &'static str {
    match o.holds {
        Some(true) => "holds",
        Some(false) => "fails",
        None => "not-applicable",
    }
}

#[derive(Serialize)]
struct ObservationJson<'a> {
    schema: &'static str,
    n: u64,
    signed: bool,
    label: &'a str,
    statement: &'a str,
    status: &'a str,
}

pub fn write_observations<W: Write>(
    out: W,
    rows: &[ObservationRow],
    format: Format,
) -> io::Result<()> {
    match format {
        Format::Text => lines(
            out,
            rows.iter().map(|r| {
                format!(
                    "n={} signed={} ({}) {}: {}",
                    r.n,
                    u8::from(r.signed),
                    r.observation.label,
                    r.observation.statement,
                    status(&r.observation)
                )
            }),
        ),
        Format::Json => lines(
            out,
            rows.iter().map(|r| {
                serde_json::to_string(&ObservationJson {
                    schema: SCHEMA,
                    n: r.n,
                    signed: r.signed,
                    label: r.observation.label,
                    statement: r.observation.statement,
                    status: status(&r.observation),
                })
                .expect("plain data serializes")
            }),
        ),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["n", "signed", "label", "statement", "status"])?;
            for r in rows {
                w.write_record([
                    r.n.to_string().as_str(),
                    if r.signed { "1" } else { "0" },
                    r.observation.label,
                    r.observation.statement,
                    status(&r.observation),
                ])?;
            }
            w.flush()
        }
    }
}

/// Polynomial dump: `composition : coefficient` per line, in mask order.
pub fn write_poly_dump<W: Write>(
    mut out: W,
    terms: &[(Composition, num_bigint::BigInt)],
) -> io::Result<()> {
    let mut keyed: Vec<(u64, &Composition, &num_bigint::BigInt)> = terms
        .iter()
        .map(|(g, c)| (composition_to_subset(g).map_or(0, |s| s.bits()), g, c))
        .collect();
    keyed.sort_by_key(|&(m, _, _)| m);
    for (_, g, c) in keyed {
        writeln!(out, "{g} : {c}")?;
    }
    out.flush()
}

pub fn dump_qsym<W: Write>(out: W, p: &QSymPoly) -> io::Result<()> {
    write_poly_dump(out, &p.composition_terms())
}

#[cfg(test)]
mod tests {
    use super::*;
    use descentlab_core::qsym::f_boolean;

    #[test]
    fn json_report_carries_schema() {
        let r: FactorReport = "n=8 signed=0 policy=heuristic bound=10000: Phi_4^2 Phi_28"
            .parse()
            .unwrap();
        let v: serde_json::Value = serde_json::from_str(&factor_json(&r)).unwrap();
        assert_eq!(v["schema"], "descentlab/1");
        assert_eq!(v["factors"][0]["m"], 4);
        assert_eq!(v["factors"][0]["multiplicity"], 2);
    }

    #[test]
    fn csv_has_one_row_per_factor() {
        let r: FactorReport = "n=8 signed=0 policy=heuristic bound=100: Phi_4^2 Phi_28"
            .parse()
            .unwrap();
        let mut buf = Vec::new();
        write_factor_reports(&mut buf, &[r], Format::Csv).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 3);
        assert!(text.contains("8,0,heuristic,100,28,1"));
    }

    #[test]
    fn poly_dump_is_mask_ordered() {
        let mut buf = Vec::new();
        dump_qsym(&mut buf, &f_boolean(3, None).unwrap()).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "3 : 1\n1,2 : 3\n2,1 : 3\n1,1,1 : 6\n"
        );
    }
}
