//! Machine-readable reports. Every rational is a `"p/q"` string and every
//! term its s-expression text, so a report round-trips exactly.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use rieszlab::rational::{self, Rational};
use rieszlab::{FinVec, PLTerm};
use serde::Serialize;
use serde_json::Value;

use crate::config::{ConfigEcho, RunConfig};
use crate::error::CliError;

pub const TOOL_VERSION: &str = concat!("rieszlab ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Check {
    pub name: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: BTreeMap<String, Value>,
    pub passed: bool,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            inputs: BTreeMap::new(),
            results: BTreeMap::new(),
            passed: true,
        }
    }

    pub fn input(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.into(), v.into());
        self
    }

    pub fn result(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.results.insert(key.into(), v.into());
        self
    }

    /// Records a named boolean condition; any false one fails the check.
    pub fn expect(&mut self, key: &str, ok: bool) -> &mut Self {
        self.passed &= ok;
        self.result(key, ok)
    }

    /// A check that could not be evaluated.
    pub fn error(&mut self, e: &dyn std::fmt::Display) -> &mut Self {
        self.passed = false;
        self.result("error", e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub tool_version: String,
    pub timestamp: String,
    pub command: String,
    pub config: ConfigEcho,
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl Report {
    pub fn new(command: impl Into<String>, config: &RunConfig, checks: Vec<Check>) -> Self {
        let passed = checks.iter().filter(|c| c.passed).count();
        Report {
            tool_version: TOOL_VERSION.into(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            command: command.into(),
            config: config.echo(),
            summary: Summary {
                total: checks.len(),
                passed,
                failed: checks.len() - passed,
            },
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self)
            .expect("reports contain only strings, integers and booleans")
    }

    /// The JSON document without its timestamp, for comparing runs.
    pub fn without_timestamp(&self) -> String {
        let mut r = self.clone();
        r.timestamp.clear();
        r.to_json()
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    /// One line per check, then the summary.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            let results: Vec<String> = c
                .results
                .iter()
                .map(|(k, v)| format!("{k}={}", short(v)))
                .collect();
            let _ = writeln!(out, "{verdict} {} {}", c.name, results.join(" "));
        }
        let _ = writeln!(
            out,
            "{}: {} checks, {} passed, {} failed",
            self.command, self.summary.total, self.summary.passed, self.summary.failed
        );
        out
    }
}

fn short(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Whether any JSON number in `v` is not an integer.
pub fn contains_float(v: &Value) -> bool {
    match v {
        Value::Number(n) => !(n.is_i64() || n.is_u64()),
        Value::Array(xs) => xs.iter().any(contains_float),
        Value::Object(m) => m.values().any(contains_float),
        _ => false,
    }
}

pub fn q(x: &Rational) -> Value {
    Value::String(rational::to_text(x))
}

pub fn term(t: &PLTerm) -> Value {
    Value::String(t.to_string())
}

pub fn terms<'a>(ts: impl IntoIterator<Item = &'a PLTerm>) -> Value {
    Value::Array(ts.into_iter().map(term).collect())
}

pub fn vector(v: &FinVec) -> Value {
    point(v.entries())
}

pub fn vectors<'a>(vs: impl IntoIterator<Item = &'a FinVec>) -> Value {
    Value::Array(vs.into_iter().map(vector).collect())
}

pub fn point(xs: &[Rational]) -> Value {
    Value::Array(xs.iter().map(q).collect())
}

pub fn matrix(rows: &[Vec<Rational>]) -> Value {
    Value::Array(rows.iter().map(|r| point(r)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rieszlab::rational::ratio;

    #[test]
    fn summary_counts_failures() {
        let mut a = Check::new("a");
        a.expect("ok", true);
        let mut b = Check::new("b");
        b.expect("ok", false).result("x", q(&ratio(-1, 3)));
        let r = Report::new("test", &RunConfig::default(), vec![a, b]);
        assert_eq!(
            r.summary,
            Summary {
                total: 2,
                passed: 1,
                failed: 1
            }
        );
        assert!(!r.all_passed());
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert!(!contains_float(&v));
        assert_eq!(v["checks"][1]["results"]["x"], "-1/3");
        assert_eq!(v["toolVersion"], TOOL_VERSION);
    }

    #[test]
    fn floats_are_detected() {
        let v: Value = serde_json::from_str(r#"{"a": [1, {"b": 0.5}]}"#).unwrap();
        assert!(contains_float(&v));
        let v: Value = serde_json::from_str(r#"{"a": [1, {"b": "1/2"}]}"#).unwrap();
        assert!(!contains_float(&v));
    }
}
