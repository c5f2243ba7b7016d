//! Check reports and their serializations.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::Value;
use thiserror::Error;

use crate::tensor::C64;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub check_id: String,
    pub params_digest: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub elapsed_ms: f64,
    pub notes: String,
}

impl CheckReport {
    pub fn is_negative_control(&self) -> bool {
        self.notes.contains("negative-control")
    }

    pub fn is_skipped(&self) -> bool {
        self.notes.starts_with("skipped:")
    }

    /// First dot-separated component of the id.
    pub fn suite(&self) -> &str {
        self.check_id.split('.').next().unwrap_or("")
    }
}

/// Every report passed; negative controls pass by detecting their perturbation.
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    JsonLines,
    SummaryText,
}

/// 17 significant digits; non-finite values become JSON strings.
fn number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "\"NaN\"".into()
    } else if x > 0.0 {
        "\"Infinity\"".into()
    } else {
        "\"-Infinity\"".into()
    }
}

fn quoted(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

pub fn json_line(r: &CheckReport) -> String {
    format!(
        "{{\"check_id\":{},\"params_digest\":{},\"residual\":{},\"tolerance\":{},\"passed\":{},\"elapsed_ms\":{},\"notes\":{}}}",
        quoted(&r.check_id),
        quoted(&r.params_digest),
        number(r.residual),
        number(r.tolerance),
        r.passed,
        number(r.elapsed_ms),
        quoted(&r.notes),
    )
}

pub fn emit_json_lines(reports: &[CheckReport]) -> String {
    reports.iter().map(|r| json_line(r) + "\n").collect()
}

/// Per suite: counts, failures and the worst residual among positive checks.
pub fn emit_summary(reports: &[CheckReport]) -> String {
    #[derive(Default)]
    struct Tally {
        total: usize,
        passed: usize,
        negative: usize,
        skipped: usize,
        worst: f64,
        failed: Vec<String>,
    }
    let mut by_suite: BTreeMap<&str, Tally> = BTreeMap::new();
    for r in reports {
        let t = by_suite.entry(r.suite()).or_default();
        t.total += 1;
        t.passed += r.passed as usize;
        if r.is_negative_control() {
            t.negative += 1;
        } else if r.is_skipped() {
            t.skipped += 1;
        } else if r.residual > t.worst || r.residual.is_nan() {
            t.worst = r.residual;
        }
        if !r.passed {
            t.failed.push(r.check_id.clone());
        }
    }
    let mut out = String::new();
    for (suite, t) in &by_suite {
        let _ = writeln!(
            out,
            "{suite:<11} {:>4} checks  {:>4} passed  {:>3} negative-control  {:>2} skipped  worst residual {:.3e}",
            t.total, t.passed, t.negative, t.skipped, t.worst
        );
        for id in &t.failed {
            let _ = writeln!(out, "    FAILED {id}");
        }
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    let _ = writeln!(
        out,
        "total {} checks, {passed} passed, {} failed: {}",
        reports.len(),
        reports.len() - passed,
        if all_passed(reports) { "OK" } else { "FAIL" }
    );
    out
}

pub fn emit(reports: &[CheckReport], format: Format) -> String {
    match format {
        Format::JsonLines => emit_json_lines(reports),
        Format::SummaryText => emit_summary(reports),
    }
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {source}")]
    Json { line: usize, source: serde_json::Error },
    #[error("line {line}: field {field:?} is missing or has the wrong type")]
    Field { line: usize, field: &'static str },
}

fn as_number(v: &Value) -> Option<f64> {
    match v {
        Value::Number(n) => n.as_f64(),
        Value::String(s) => match s.as_str() {
            "NaN" => Some(f64::NAN),
            "Infinity" => Some(f64::INFINITY),
            "-Infinity" => Some(f64::NEG_INFINITY),
            _ => None,
        },
        _ => None,
    }
}

/// Inverse of [`emit_json_lines`].
pub fn parse_json_lines(text: &str) -> Result<Vec<CheckReport>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        if raw.trim().is_empty() {
            continue;
        }
        let line = i + 1;
        let v: Value = serde_json::from_str(raw).map_err(|source| ParseError::Json { line, source })?;
        let s = |field: &'static str| v.get(field).and_then(Value::as_str).map(str::to_string).ok_or(ParseError::Field { line, field });
        let x = |field: &'static str| v.get(field).and_then(as_number).ok_or(ParseError::Field { line, field });
        out.push(CheckReport {
            check_id: s("check_id")?,
            params_digest: s("params_digest")?,
            residual: x("residual")?,
            tolerance: x("tolerance")?,
            passed: v.get("passed").and_then(Value::as_bool).ok_or(ParseError::Field { line, field: "passed" })?,
            elapsed_ms: x("elapsed_ms")?,
            notes: s("notes")?,
        });
    }
    Ok(out)
}

/// One spectrum row: eigenvalue and the size of the cluster it belongs to.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumRow {
    pub label: String,
    pub index: usize,
    pub value: C64,
    pub multiplicity: usize,
}

pub const SPECTRUM_HEADER: &str = "chain,index,re,im,multiplicity";

pub fn emit_csv(rows: &[SpectrumRow]) -> String {
    let mut out = String::from(SPECTRUM_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(out, "{},{},{:.16e},{:.16e},{}", r.label, r.index, r.value.re, r.value.im, r.multiplicity);
    }
    out
}
