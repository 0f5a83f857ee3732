//! Command-line inputs: terms in the s-expression grammar, vectors and
//! matrices as JSON arrays of `"p/q"` strings. Each argument is either the
//! text itself or the path of a file holding it.

use std::path::Path;

use rieszlab::rational::{self, Rational};
use rieszlab::{BilinearMap, FinVec, PLTerm};
use serde_json::Value;

use crate::error::CliError;

/// The argument itself, or the file contents when it names a file.
pub fn resolve(arg: &str) -> Result<String, CliError> {
    let path = Path::new(arg);
    if !arg.trim_start().starts_with(['(', '[']) && path.is_file() {
        Ok(std::fs::read_to_string(path)?)
    } else {
        Ok(arg.to_string())
    }
}

pub fn term(arg: &str, dim: usize) -> Result<PLTerm, CliError> {
    Ok(rieszlab::pl::parse_term(&resolve(arg)?, Some(dim))?)
}

/// Whether the (resolved) argument looks like a JSON vector.
pub fn is_vector(arg: &str) -> Result<bool, CliError> {
    Ok(resolve(arg)?.trim_start().starts_with('['))
}

fn rat(v: &Value) -> Result<Rational, CliError> {
    match v {
        Value::String(s) => Ok(rational::parse(s)?),
        Value::Number(n) if n.is_i64() => Ok(rational::int(n.as_i64().unwrap_or_default())),
        other => Err(CliError::Input(format!(
            "expected a rational string \"p/q\", found {other}"
        ))),
    }
}

fn row(v: &Value) -> Result<Vec<Rational>, CliError> {
    v.as_array()
        .ok_or_else(|| CliError::Input(format!("expected a JSON array, found {v}")))?
        .iter()
        .map(rat)
        .collect()
}

pub fn vector(arg: &str) -> Result<FinVec, CliError> {
    let v: Value = serde_json::from_str(&resolve(arg)?)?;
    Ok(FinVec::new(row(&v)?)?)
}

pub fn matrix(arg: &str) -> Result<BilinearMap, CliError> {
    let v: Value = serde_json::from_str(&resolve(arg)?)?;
    let rows = v
        .as_array()
        .ok_or_else(|| CliError::Input("a matrix is a JSON array of rows".into()))?
        .iter()
        .map(row)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BilinearMap::new(rows)?)
}
