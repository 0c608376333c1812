//! Matrix parsing and JSON rendering.
//!
//! Matrices are accepted in two formats, auto-detected:
//!
//! * text: a first line with the dimension `d`, then `d` lines of `d`
//!   whitespace-separated integers (arbitrary precision);
//! * JSON: `{"dim": d, "rows": [[...], ...]}` with `i64` entries.
//!
//! Both parsers reject ragged rows.  JSON output mirrors the JSON input
//! schema; entries outside the `i64`/`u64` range are refused with a hint to
//! use the text format instead.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Deserialize;
use serde_json::{json, Number, Value};

use hstar_core::{DeltaVector, IntMatrix};

/// Input or output could not be converted.
#[derive(Debug)]
pub struct FormatError(pub String);

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for FormatError {}

fn err<T>(msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError(msg.into()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    dim: usize,
    rows: Vec<Vec<i64>>,
}

/// Parses a matrix from either accepted format.
pub fn parse_matrix(text: &str) -> Result<IntMatrix, FormatError> {
    if text.trim_start().starts_with('{') {
        parse_matrix_json(text)
    } else {
        parse_matrix_text(text)
    }
}

fn parse_matrix_json(text: &str) -> Result<IntMatrix, FormatError> {
    let parsed: MatrixJson =
        serde_json::from_str(text).map_err(|e| FormatError(format!("bad matrix JSON: {e}")))?;
    if parsed.rows.len() != parsed.dim {
        return err(format!(
            "matrix JSON declares dim {} but has {} rows",
            parsed.dim,
            parsed.rows.len()
        ));
    }
    if let Some(row) = parsed.rows.iter().find(|r| r.len() != parsed.dim) {
        return err(format!(
            "ragged matrix JSON: row of length {} in a dim-{} matrix",
            row.len(),
            parsed.dim
        ));
    }
    IntMatrix::from_rows(parsed.rows).map_err(|e| FormatError(e.to_string()))
}

fn parse_matrix_text(text: &str) -> Result<IntMatrix, FormatError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let dim_line = match lines.next() {
        Some(l) => l,
        None => return err("empty matrix input"),
    };
    let dim: usize = match dim_line.parse() {
        Ok(d) if d >= 1 => d,
        _ => {
            return err(format!(
                "expected a positive dimension on the first line, got {dim_line:?}"
            ))
        }
    };
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(dim);
    for i in 0..dim {
        let line = match lines.next() {
            Some(l) => l,
            None => return err(format!("expected {dim} rows, found {i}")),
        };
        let row: Result<Vec<BigInt>, _> = line
            .split_whitespace()
            .map(|tok| BigInt::from_str(tok).map_err(|_| FormatError(format!("bad entry {tok:?}"))))
            .collect();
        let row = row?;
        if row.len() != dim {
            return err(format!(
                "ragged matrix: row {} has {} entries, expected {dim}",
                i + 1,
                row.len()
            ));
        }
        rows.push(row);
    }
    if lines.next().is_some() {
        return err(format!("trailing input after {dim} rows"));
    }
    IntMatrix::from_rows(rows).map_err(|e| FormatError(e.to_string()))
}

/// Parses the comma-separated delta-vector flag format, e.g. `1,0,3,2,0`.
pub fn parse_delta(text: &str) -> Result<DeltaVector, FormatError> {
    text.parse()
        .map_err(|e: hstar_core::Error| FormatError(e.to_string()))
}

fn bigint_number(e: &BigInt) -> Result<Number, FormatError> {
    i128::try_from(e)
        .ok()
        .and_then(Number::from_i128)
        .ok_or_else(|| {
            FormatError(format!(
                "value {e} exceeds the JSON numeric range; use the text format"
            ))
        })
}

/// `{"dim": d, "rows": [[...], ...]}`.
pub fn matrix_json(m: &IntMatrix) -> Result<Value, FormatError> {
    let rows: Result<Vec<Value>, FormatError> = m
        .rows()
        .map(|row| {
            row.iter()
                .map(|e| bigint_number(e).map(Value::Number))
                .collect::<Result<Vec<Value>, _>>()
                .map(Value::Array)
        })
        .collect();
    Ok(json!({ "dim": m.dim(), "rows": rows? }))
}

/// Delta-vectors render as plain JSON arrays of their coefficients.
pub fn delta_json(v: &DeltaVector) -> Result<Value, FormatError> {
    let coeffs: Result<Vec<Value>, FormatError> = v
        .coeffs()
        .iter()
        .map(|c| bigint_number(c).map(Value::Number))
        .collect();
    Ok(Value::Array(coeffs?))
}

pub fn bigint_json(e: &BigInt) -> Result<Value, FormatError> {
    Ok(Value::Number(bigint_number(e)?))
}
