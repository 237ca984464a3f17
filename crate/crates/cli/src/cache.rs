//! Table cache files.
//!
//! Format: a header line `descentlab-table v1 n=<n> signed=<0|1>` followed by
//! one decimal value per subset, in increasing mask order.

use std::fs;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use descentlab_core::descent::{beta_table_with, universe_size, DescentTable, Limits};

pub const FORMAT_VERSION: &str = "v1";

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("io: {0}")]
    Io(#[from] io::Error),
    #[error("corrupt table file: {0}")]
    Corrupt(String),
}

pub fn header(n: u64, signed: bool) -> String {
    format!(
        "descentlab-table {FORMAT_VERSION} n={n} signed={}",
        u8::from(signed)
    )
}

pub fn write_table<W: Write>(mut out: W, table: &DescentTable) -> io::Result<()> {
    writeln!(out, "{}", header(table.n(), table.signed()))?;
    for v in table.values() {
        writeln!(out, "{v}")?;
    }
    out.flush()
}

/// Reads a table, checking the header against `expect` when given.
pub fn read_table<R: BufRead>(
    input: R,
    expect: Option<(u64, bool)>,
) -> Result<DescentTable, CacheError> {
    let corrupt = |m: &str| CacheError::Corrupt(m.to_string());
    let mut lines = input.lines();
    let head = lines.next().ok_or_else(|| corrupt("empty file"))??;
    let (n, signed) = parse_header(&head).ok_or_else(|| corrupt("bad header"))?;
    if let Some(e) = expect {
        if e != (n, signed) {
            return Err(corrupt("header does not match the requested table"));
        }
    }
    let expected_len = 1usize
        .checked_shl(universe_size(n, signed))
        .ok_or_else(|| corrupt("universe too large"))?;
    let mut values = Vec::with_capacity(expected_len.min(1 << 24));
    for line in lines {
        let line = line?;
        let v: i128 = line
            .trim()
            .parse()
            .map_err(|_| CacheError::Corrupt(format!("bad value {line:?}")))?;
        values.push(v);
    }
    if values.len() != expected_len {
        return Err(CacheError::Corrupt(format!(
            "expected {expected_len} values, found {}",
            values.len()
        )));
    }
    DescentTable::from_values(n, signed, values).map_err(|e| CacheError::Corrupt(e.to_string()))
}

fn parse_header(line: &str) -> Option<(u64, bool)> {
    let mut it = line.split_whitespace();
    if it.next()? != "descentlab-table" || it.next()? != FORMAT_VERSION {
        return None;
    }
    let n = it.next()?.strip_prefix("n=")?.parse().ok()?;
    let signed = match it.next()?.strip_prefix("signed=")? {
        "0" => false,
        "1" => true,
        _ => return None,
    };
    it.next().is_none().then_some((n, signed))
}

/// Cache file name; the format version is part of the key.
pub fn cache_path(dir: &Path, n: u64, signed: bool) -> PathBuf {
    let kind = if signed { "signed" } else { "unsigned" };
    dir.join(format!("beta-{FORMAT_VERSION}-{kind}-{n}.txt"))
}

pub fn save(path: &Path, table: &DescentTable) -> io::Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension("tmp");
    write_table(BufWriter::new(fs::File::create(&tmp)?), table)?;
    fs::rename(tmp, path)
}

pub fn load(path: &Path, n: u64, signed: bool) -> Result<DescentTable, CacheError> {
    read_table(BufReader::new(fs::File::open(path)?), Some((n, signed)))
}

/// Loads the table from `dir` if present and valid, otherwise computes it
/// and stores it. A corrupt file is reported through `warn` and replaced.
pub fn load_or_build(
    n: u64,
    signed: bool,
    limits: &Limits,
    dir: Option<&Path>,
    mut warn: impl FnMut(&str),
) -> anyhow::Result<DescentTable> {
    let Some(dir) = dir else {
        return Ok(beta_table_with(n, signed, limits)?);
    };
    let path = cache_path(dir, n, signed);
    if path.exists() {
        match load(&path, n, signed) {
            Ok(t) => return Ok(t),
            Err(e) => warn(&format!("{}: {e}; recomputing", path.display())),
        }
    }
    let table = beta_table_with(n, signed, limits)?;
    if let Err(e) = save(&path, &table) {
        warn(&format!("could not write {}: {e}", path.display()));
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use descentlab_core::descent::beta_table;

    #[test]
    fn round_trip() {
        for (n, signed) in [(1, false), (5, false), (5, true), (12, false)] {
            let t = beta_table(n, signed).unwrap();
            let mut buf = Vec::new();
            write_table(&mut buf, &t).unwrap();
            let back = read_table(&buf[..], Some((n, signed))).unwrap();
            assert_eq!(back, t);
        }
    }

    #[test]
    fn rejects_damage() {
        let t = beta_table(4, false).unwrap();
        let mut buf = Vec::new();
        write_table(&mut buf, &t).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let truncated = text.lines().take(5).collect::<Vec<_>>().join("\n");
        assert!(read_table(truncated.as_bytes(), None).is_err());
        let wrong = text.replace("n=4", "n=5");
        assert!(read_table(wrong.as_bytes(), None).is_err());
        assert!(read_table(text.as_bytes(), Some((4, true))).is_err());
        let v2 = text.replace("v1", "v2");
        assert!(read_table(v2.as_bytes(), None).is_err());
    }
}
