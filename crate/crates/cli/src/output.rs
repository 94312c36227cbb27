//! Result rows and their CSV and JSON encodings.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::{BenchError, Result};

pub const CSV_HEADER: [&str; 11] = [
    "instance_id",
    "algorithm",
    "representation",
    "selection",
    "reduction",
    "status",
    "objective",
    "iterations",
    "peak_regions",
    "wall_time_s",
    "seed",
];

/// One solver run.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub instance_id: String,
    pub algorithm: String,
    pub representation: String,
    pub selection: String,
    /// `on` or `off`.
    pub reduction: String,
    /// A solver status label, or `error`.
    pub status: String,
    pub objective: f64,
    pub iterations: u64,
    pub peak_regions: u64,
    pub wall_time_s: f64,
    pub seed: u64,
    /// Failure message for `error` rows. Not serialized.
    pub error: Option<String>,
}

impl ResultRow {
    pub fn is_error(&self) -> bool {
        self.status == "error"
    }
}

/// `%.12g`: 12 significant digits, trailing zeros dropped, exponent form
/// outside `[1e-5, 1e12)`.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn csv_error(e: csv::Error) -> BenchError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => BenchError::io("<csv>", io),
        other => BenchError::field("csv", format!("{other:?}")),
    }
}

fn record(row: &ResultRow) -> [String; 11] {
    [
        row.instance_id.clone(),
        row.algorithm.clone(),
        row.representation.clone(),
        row.selection.clone(),
        row.reduction.clone(),
        row.status.clone(),
        format_float(row.objective),
        row.iterations.to_string(),
        row.peak_regions.to_string(),
        format_float(row.wall_time_s),
        row.seed.to_string(),
    ]
}

pub fn write_csv_to<W: Write>(rows: &[ResultRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_error)?;
    for row in rows {
        w.write_record(record(row)).map_err(csv_error)?;
    }
    w.flush().map_err(|e| BenchError::io("<csv>", e))
}

/// A float rounded through its 12-digit text, so JSON carries the same
/// precision as CSV; non-finite values become `null`.
fn json_float(v: f64) -> Option<f64> {
    format_float(v).parse::<f64>().ok().filter(|x| x.is_finite())
}

#[derive(Serialize)]
struct JsonRow<'a> {
    instance_id: &'a str,
    algorithm: &'a str,
    representation: &'a str,
    selection: &'a str,
    reduction: &'a str,
    status: &'a str,
    objective: Option<f64>,
    iterations: u64,
    peak_regions: u64,
    wall_time_s: Option<f64>,
    seed: u64,
}

impl<'a> From<&'a ResultRow> for JsonRow<'a> {
    fn from(row: &'a ResultRow) -> Self {
        Self {
            instance_id: &row.instance_id,
            algorithm: &row.algorithm,
            representation: &row.representation,
            selection: &row.selection,
            reduction: &row.reduction,
            status: &row.status,
            objective: json_float(row.objective),
            iterations: row.iterations,
            peak_regions: row.peak_regions,
            wall_time_s: json_float(row.wall_time_s),
            seed: row.seed,
        }
    }
}

pub fn write_json_to<W: Write>(rows: &[ResultRow], mut out: W) -> Result<()> {
    let doc: Vec<JsonRow<'_>> = rows.iter().map(JsonRow::from).collect();
    serde_json::to_writer_pretty(&mut out, &doc).map_err(|e| BenchError::io("<json>", e.into()))?;
    writeln!(out).map_err(|e| BenchError::io("<json>", e))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| BenchError::io(path, e))
}

pub fn write_csv(rows: &[ResultRow], path: &Path) -> Result<()> {
    write_csv_to(rows, create(path)?)
}

pub fn write_json(rows: &[ResultRow], path: &Path) -> Result<()> {
    write_json_to(rows, create(path)?)
}

fn parse_field<T: std::str::FromStr>(text: &str, field: &str, line: Option<u64>) -> Result<T> {
    text.parse().map_err(|_| BenchError::Parse {
        field: field.into(),
        line: line.map(|l| l as usize),
        column: None,
        message: format!("cannot parse `{text}`"),
    })
}

/// Reads rows written by [`write_csv_to`].
pub fn read_csv<R: Read>(input: R) -> Result<Vec<ResultRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(csv_error)?;
    if header.iter().ne(CSV_HEADER) {
        return Err(BenchError::field("header", format!("unexpected header {header:?}")));
    }
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_error)?;
        let line = rec.position().map(|p| p.line());
        let get = |i: usize| rec.get(i).unwrap_or_default();
        rows.push(ResultRow {
            instance_id: get(0).into(),
            algorithm: get(1).into(),
            representation: get(2).into(),
            selection: get(3).into(),
            reduction: get(4).into(),
            status: get(5).into(),
            objective: parse_field(get(6), "objective", line)?,
            iterations: parse_field(get(7), "iterations", line)?,
            peak_regions: parse_field(get(8), "peak_regions", line)?,
            wall_time_s: parse_field(get(9), "wall_time_s", line)?,
            seed: parse_field(get(10), "seed", line)?,
            error: None,
        });
    }
    Ok(rows)
}

/// Reads rows written by [`write_json_to`]; `null` floats read back as NaN.
pub fn read_json<R: Read>(input: R) -> Result<Vec<ResultRow>> {
    let doc: Value = serde_json::from_reader(input).map_err(|e| BenchError::Parse {
        field: "document".into(),
        line: Some(e.line()),
        column: Some(e.column()),
        message: e.to_string(),
    })?;
    let items = doc
        .as_array()
        .ok_or_else(|| BenchError::field("document", "expected an array"))?;
    items
        .iter()
        .map(|item| {
            let text = |k: &str| {
                item.get(k)
                    .and_then(Value::as_str)
                    .map(str::to_string)
                    .ok_or_else(|| BenchError::field(k, "expected a string"))
            };
            let int = |k: &str| {
                item.get(k)
                    .and_then(Value::as_u64)
                    .ok_or_else(|| BenchError::field(k, "expected an unsigned integer"))
            };
            let float = |k: &str| match item.get(k) {
                Some(Value::Null) => Ok(f64::NAN),
                Some(v) => v.as_f64().ok_or_else(|| BenchError::field(k, "expected a number")),
                None => Err(BenchError::field(k, "missing")),
            };
            Ok(ResultRow {
                instance_id: text("instance_id")?,
                algorithm: text("algorithm")?,
                representation: text("representation")?,
                selection: text("selection")?,
                reduction: text("reduction")?,
                status: text("status")?,
                objective: float("objective")?,
                iterations: int("iterations")?,
                peak_regions: int("peak_regions")?,
                wall_time_s: float("wall_time_s")?,
                seed: int("seed")?,
                error: None,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(objective: f64) -> ResultRow {
        ResultRow {
            instance_id: "wsr-K2-r0".into(),
            algorithm: "brb".into(),
            representation: "mmp".into(),
            selection: "best".into(),
            reduction: "off".into(),
            status: "eta-optimal".into(),
            objective,
            iterations: 42,
            peak_regions: 7,
            wall_time_s: 0.001234,
            seed: 9,
            error: None,
        }
    }

    #[test]
    fn float_format() {
        assert_eq!(format_float(1.0), "1");
        assert_eq!(format_float(0.1), "0.1");
        assert_eq!(format_float(1.0 / 3.0), "0.333333333333");
        assert_eq!(format_float(123456.7890123456), "123456.789012");
        assert_eq!(format_float(1e-7), "1e-07");
        assert_eq!(format_float(2.5e15), "2.5e+15");
        assert_eq!(format_float(-7.15330123456789), "-7.15330123457");
        assert_eq!(format_float(f64::NEG_INFINITY), "-inf");
        assert_eq!(format_float(0.0), "0");
        assert_eq!(format_float(0.00012345), "0.00012345");
    }

    #[test]
    fn empty_csv_is_header_only() {
        let mut out = Vec::new();
        write_csv_to(&[], &mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "instance_id,algorithm,representation,selection,reduction,status,objective,iterations,peak_regions,wall_time_s,seed\n"
        );
    }

    #[test]
    fn csv_round_trip() {
        let rows = vec![row(1.5), row(f64::NEG_INFINITY)];
        let mut out = Vec::new();
        write_csv_to(&rows, &mut out).unwrap();
        assert_eq!(String::from_utf8_lossy(&out).lines().count(), 3);
        assert_eq!(read_csv(out.as_slice()).unwrap(), rows);
    }

    #[test]
    fn json_round_trip() {
        let rows = vec![row(2.25), row(f64::NEG_INFINITY)];
        let mut out = Vec::new();
        write_json_to(&rows, &mut out).unwrap();
        let back = read_json(out.as_slice()).unwrap();
        assert_eq!(back[0], rows[0]);
        assert!(back[1].objective.is_nan());
        let doc: Value = serde_json::from_slice(&out).unwrap();
        assert_eq!(doc[1]["objective"], Value::Null);
        let text = String::from_utf8(out).unwrap();
        let positions: Vec<usize> = CSV_HEADER
            .iter()
            .map(|k| text.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn twelve_digit_precision_is_stable() {
        let rows = vec![row(std::f64::consts::PI)];
        let mut first = Vec::new();
        write_csv_to(&rows, &mut first).unwrap();
        let mut second = Vec::new();
        write_csv_to(&read_csv(first.as_slice()).unwrap(), &mut second).unwrap();
        assert_eq!(first, second);
        assert!(String::from_utf8(first).unwrap().contains(",3.14159265359,"));
    }
}
