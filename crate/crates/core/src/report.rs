//! Tables of the nontrivial rows of a sweep output.
//!
//! Thue output gives one row `g | a | b` per solution with `b >= 1`. Pib output
//! gives one row `m | x | ±y | z` per generator other than `α`, with the two
//! signs of `y` collapsed. Rows are sorted numerically. Empty input renders
//! the Thue header alone.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::Value;

use crate::error::ReportError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Markdown,
    Latex,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            "latex" | "tex" => Ok(ReportFormat::Latex),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(format!("unknown report format '{other}'")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Thue,
    Pib,
}

impl Kind {
    fn headers(self) -> &'static [&'static str] {
        match self {
            Kind::Thue => &["g", "a", "b"],
            Kind::Pib => &["m", "x", "±y", "z"],
        }
    }
}

fn malformed(line: usize, detail: impl Into<String>) -> ReportError {
    ReportError::Malformed { line, detail: detail.into() }
}

fn int_field(obj: &Value, key: &str, line: usize) -> Result<BigInt, ReportError> {
    let v = obj.get(key).ok_or_else(|| malformed(line, format!("missing field '{key}'")))?;
    let s = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        _ => return Err(malformed(line, format!("field '{key}' is not an integer"))),
    };
    s.parse().map_err(|_| malformed(line, format!("field '{key}' is not an integer: {s}")))
}

fn array_field<'a>(obj: &'a Value, key: &str, line: usize) -> Result<&'a Vec<Value>, ReportError> {
    obj.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| malformed(line, format!("missing array '{key}'")))
}

/// Nontrivial rows of a JSONL sweep output, sorted, with the detected kind.
fn collect_rows(input: &str) -> Result<(Kind, BTreeSet<Vec<BigInt>>), ReportError> {
    let mut kind = None;
    let mut rows = BTreeSet::new();
    for (i, text) in input.lines().enumerate() {
        let line = i + 1;
        if text.trim().is_empty() {
            continue;
        }
        let obj: Value = serde_json::from_str(text).map_err(|e| malformed(line, e.to_string()))?;
        let this = match (obj.get("g"), obj.get("m")) {
            (Some(_), None) => Kind::Thue,
            (None, Some(_)) => Kind::Pib,
            _ => return Err(malformed(line, "record has neither 'g' nor 'm'")),
        };
        if *kind.get_or_insert(this) != this {
            return Err(malformed(line, "Thue and pib records mixed in one file"));
        }
        match this {
            Kind::Thue => {
                let g = int_field(&obj, "g", line)?;
                for s in array_field(&obj, "solutions", line)? {
                    let (a, b) = (int_field(s, "a", line)?, int_field(s, "b", line)?);
                    if b.is_positive() {
                        rows.insert(vec![g.clone(), a, b]);
                    }
                }
            }
            Kind::Pib => {
                let m = int_field(&obj, "m", line)?;
                for gen in array_field(&obj, "generators", line)? {
                    let (x, y, z) = (int_field(gen, "x", line)?, int_field(gen, "y", line)?, int_field(gen, "z", line)?);
                    let trivial = x.is_zero() && y == BigInt::from(1) && z.is_zero();
                    if !trivial {
                        rows.insert(vec![m.clone(), x, y.abs(), z]);
                    }
                }
            }
        }
    }
    Ok((kind.unwrap_or(Kind::Thue), rows))
}

pub fn render_report(input: &str, format: ReportFormat) -> Result<String, ReportError> {
    let (kind, rows) = collect_rows(input)?;
    let headers = kind.headers();
    let mut out = String::new();
    let cells = |row: &Vec<BigInt>| row.iter().map(BigInt::to_string).collect::<Vec<_>>();
    match format {
        ReportFormat::Markdown => {
            out += &format!("| {} |\n", headers.join(" | "));
            out += &format!("|{}\n", "---:|".repeat(headers.len()));
            for row in &rows {
                out += &format!("| {} |\n", cells(row).join(" | "));
            }
        }
        ReportFormat::Latex => {
            out += &format!("\\begin{{tabular}}{{{}}}\n\\hline\n", "r".repeat(headers.len()));
            let tex: Vec<String> = headers
                .iter()
                .map(|h| format!("${}$", h.replace('±', "\\pm ")))
                .collect();
            out += &format!("{} \\\\\n\\hline\n", tex.join(" & "));
            for row in &rows {
                out += &format!("{} \\\\\n", cells(row).join(" & "));
            }
            out += "\\hline\n\\end{tabular}\n";
        }
        ReportFormat::Csv => {
            out += &format!("{}\n", headers.join(","));
            for row in &rows {
                out += &format!("{}\n", cells(row).join(","));
            }
        }
    }
    Ok(out)
}

pub fn render_report_file(path: &Path, format: ReportFormat) -> Result<String, ReportError> {
    let input = fs::read_to_string(path).map_err(|source| ReportError::Io { path: path.into(), source })?;
    render_report(&input, format)
}
