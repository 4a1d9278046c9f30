//! CSV and JSON output, readers for round-tripping, and checkpoint resume.
//!
//! CSV is the canonical format. Every file has one header row and only
//! complete rows are ever appended, so an interrupted scan leaves at worst a
//! partial last line, which [`resume_rows`] truncates.

use std::fs::{File, OpenOptions};
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::density::DensityRow;
use crate::slowest::{SeriesKind, SeriesRow, SlowestReport};
use crate::{Error, Result};

pub const DENSITY_HEADER: [&str; 9] = [
    "alpha",
    "beta",
    "p",
    "r",
    "c",
    "n_cr",
    "count",
    "empirical_density",
    "theory_density",
];
pub const SLOWEST_HEADER: [&str; 3] = ["n", "ss", "achievers"];
pub const SERIES_HEADER: [&str; 2] = ["n", "value"];

/// Fixed-point decimal with 10 significant digits.
pub fn fmt_sig10(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() {
            "0.000000000".into()
        } else {
            x.to_string()
        };
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (9 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    // Rounding can carry into a new digit (9.9999999999 → 10.000000000).
    let digits = s.chars().filter(|c| c.is_ascii_digit()).count() - leading_zeros(&s);
    if digits > 10 && decimals > 0 {
        let decimals = decimals - 1;
        return format!("{x:.decimals$}");
    }
    s
}

fn leading_zeros(s: &str) -> usize {
    s.chars()
        .filter(|c| c.is_ascii_digit())
        .take_while(|c| *c == '0')
        .count()
}

pub fn density_record(row: &DensityRow) -> Vec<String> {
    vec![
        row.alpha.to_string(),
        row.beta.to_string(),
        row.p.to_string(),
        row.r.to_string(),
        fmt_sig10(row.c),
        row.n_cr.to_string(),
        row.count.to_string(),
        fmt_sig10(row.empirical_density),
        row.theory_density.map(fmt_sig10).unwrap_or_default(),
    ]
}

pub fn slowest_record(report: &SlowestReport) -> Vec<String> {
    vec![
        report.n.to_string(),
        report.ss.to_string(),
        report.achiever_tokens(),
    ]
}

pub fn series_record(row: &SeriesRow, kind: SeriesKind) -> Vec<String> {
    let value = match kind {
        SeriesKind::Inclusive => row.count.to_string(),
        SeriesKind::Exclusive => fmt_sig10(row.value(kind)),
    };
    vec![row.n.to_string(), value]
}

/// Writes rows as CSV, with the header unless `append` is set.
pub fn write_csv<W: Write>(
    out: W,
    header: &[&str],
    rows: &[Vec<String>],
    append: bool,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if !append {
        w.write_record(header)?;
    }
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

/// The JSON mirror of a CSV table: an array of records keyed by the header.
/// Integer-looking fields become numbers, decimals become numbers, empty
/// fields become `null`, and everything else stays a string.
pub fn to_json(header: &[&str], rows: &[Vec<String>]) -> Value {
    Value::Array(
        rows.iter()
            .map(|row| {
                let obj: Map<String, Value> = header
                    .iter()
                    .zip(row)
                    .map(|(k, v)| (k.to_string(), json_field(v)))
                    .collect();
                Value::Object(obj)
            })
            .collect(),
    )
}

fn json_field(v: &str) -> Value {
    if v.is_empty() {
        return Value::Null;
    }
    if let Ok(i) = v.parse::<i64>() {
        return json!(i);
    }
    if v.contains('.') {
        if let Ok(f) = v.parse::<f64>() {
            return json!(f);
        }
    }
    json!(v)
}

pub fn write_json<W: Write>(mut out: W, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, &to_json(header, rows))?;
    writeln!(out)?;
    Ok(())
}

/// Reads a CSV table, checking the header.
pub fn read_csv<R: Read>(input: R, header: &[&str]) -> Result<Vec<Vec<String>>> {
    let mut r = csv::Reader::from_reader(input);
    let found: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if found != header {
        return Err(Error::InvalidArgument(format!(
            "unexpected CSV header {found:?}, wanted {header:?}"
        )));
    }
    r.records()
        .map(|rec| Ok(rec?.iter().map(str::to_string).collect()))
        .collect()
}

fn parse_field<T: std::str::FromStr>(v: &str, what: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::InvalidArgument(format!("bad {what} field {v:?}")))
}

pub fn parse_density_row(rec: &[String]) -> Result<DensityRow> {
    if rec.len() != DENSITY_HEADER.len() {
        return Err(Error::InvalidArgument(format!(
            "density row has {} fields",
            rec.len()
        )));
    }
    Ok(DensityRow {
        alpha: parse_field(&rec[0], "alpha")?,
        beta: parse_field(&rec[1], "beta")?,
        p: parse_field(&rec[2], "p")?,
        r: parse_field(&rec[3], "r")?,
        c: parse_field(&rec[4], "c")?,
        n_cr: parse_field(&rec[5], "n_cr")?,
        count: parse_field(&rec[6], "count")?,
        empirical_density: parse_field(&rec[7], "empirical_density")?,
        theory_density: if rec[8].is_empty() {
            None
        } else {
            Some(parse_field(&rec[8], "theory_density")?)
        },
    })
}

/// Recovers the raw count from a series row: `i` is stored as the count,
/// `e` as `count / n`.
pub fn parse_series_row(rec: &[String], kind: SeriesKind) -> Result<SeriesRow> {
    if rec.len() != SERIES_HEADER.len() {
        return Err(Error::InvalidArgument(format!(
            "series row has {} fields",
            rec.len()
        )));
    }
    let n: u64 = parse_field(&rec[0], "n")?;
    let count = match kind {
        SeriesKind::Inclusive => parse_field(&rec[1], "value")?,
        SeriesKind::Exclusive => {
            let e: f64 = parse_field(&rec[1], "value")?;
            (e * n as f64).round() as u64
        }
    };
    Ok(SeriesRow { n, count })
}

/// Prepares `path` for appending: drops a trailing partial line, checks the
/// header and returns the complete rows already present. A missing or empty
/// file yields `None`, meaning the scan starts fresh.
pub fn resume_rows(path: &Path, header: &[&str]) -> Result<Option<Vec<Vec<String>>>> {
    let mut file = match OpenOptions::new().read(true).write(true).open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut text = String::new();
    file.read_to_string(&mut text)?;
    let keep = text.rfind('\n').map_or(0, |i| i + 1);
    if keep < text.len() {
        file.set_len(keep as u64)?;
        file.seek(SeekFrom::End(0))?;
    }
    if keep == 0 {
        return Ok(None);
    }
    read_csv(&text.as_bytes()[..keep], header).map(Some)
}

/// Opens `path` for a scan: appends when resuming an existing table,
/// otherwise creates it.
pub fn open_output(path: &Path, append: bool) -> Result<File> {
    let file = if append {
        OpenOptions::new().append(true).open(path)?
    } else {
        File::create(path)?
    };
    Ok(file)
}
