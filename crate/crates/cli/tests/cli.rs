use std::process::{Command, Output};

use rieszlab_cli::report::contains_float;
use serde_json::Value;

fn rieszlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rieszlab"))
        .args(args)
        .env_remove("RIESZLAB_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn relations_suite_in_one_dimension() {
    let out = rieszlab(&[
        "suite",
        "relations",
        "--seed",
        "42",
        "--cases",
        "100",
        "--dim",
        "1",
    ]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(r["summary"]["passed"], 100);
    assert_eq!(r["config"]["seed"], 42);
    assert!(r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["inputs"]["dim"] == 1));
}

#[test]
fn ledger_suite_with_fixed_size() {
    let out = rieszlab(&["suite", "ledger", "--m", "6", "--k", "16", "--cases", "50"]);
    assert!(out.status.success());
    let r = json(&out);
    let checks = r["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 51);
    for c in &checks[..50] {
        assert_eq!(c["inputs"]["m"], 6);
        assert_eq!(c["results"]["epsilon"], "1/16");
        assert_eq!(c["results"]["ledger"].as_object().unwrap().len(), 10);
    }
    assert!(!contains_float(&r));
}

#[test]
fn unknown_suite_is_a_structured_error() {
    let out = rieszlab(&["suite", "foo"]);
    assert!(!out.status.success());
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "unknown-suite");
    assert!(err["error"]["message"].as_str().unwrap().contains("foo"));
}

#[test]
fn decide_leq_reports_a_counterexample() {
    let tent = "(meet (gen 0) (+ (unit) (scale (rat -1 1) (gen 0))))";
    let out = rieszlab(&["decide-leq", tent, "(scale (rat 1 2) (unit))"]);
    assert!(out.status.success());
    let out = rieszlab(&["decide-leq", "(scale (rat 1 2) (unit))", tent]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    let c = &r["checks"][0]["results"];
    assert_eq!(c["leq"], false);
    assert!(c["counterexample"].is_array());
}

#[test]
fn syntax_errors_carry_a_position() {
    let out = rieszlab(&["norm", "(rat 1 0)"]);
    assert_eq!(out.status.code(), Some(2));
    let out = rieszlab(&["norm", "(join (gen 0)\n  (bogus))"]);
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["error"]["message"].as_str().unwrap().contains("line 2"));
}

#[test]
fn norm_on_a_custom_box() {
    let out = rieszlab(&["norm", "(+ (gen 0) (gen 1))", "--box", "-1:1/2,0:1"]);
    assert!(out.status.success());
    let c = &json(&out)["checks"][0]["results"];
    assert_eq!(c["norm"], "3/2");
    assert_eq!(c["inf"], "-1");
    assert_eq!(c["sup"], "3/2");
}

#[test]
fn dominates_finds_the_least_multiplier() {
    let out = rieszlab(&["dominates", "(gen 0)", "(scale (rat 1 3) (gen 0))"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["checks"][0]["results"]["multiplier"], 3);
    let out = rieszlab(&["dominates", "(unit)", "(gen 0)"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["checks"][0]["results"]["witness"][0], "0");
}

#[test]
fn partitions_approximations_and_lattice() {
    let out = rieszlab(&["partition", r#"["1/3", "1", "0"]"#, "--k", "3"]);
    assert!(out.status.success());
    assert_eq!(
        json(&out)["checks"][0]["results"]["parts"]
            .as_array()
            .unwrap()
            .len(),
        4
    );
    let out = rieszlab(&[
        "partition",
        "--cover",
        "(gen 0)",
        "(+ (unit) (scale (rat -1 1) (gen 0)))",
    ]);
    assert!(out.status.success());
    let out = rieszlab(&["approx", "(gen 0)", "--n", "4"]);
    assert!(out.status.success());
    let out = rieszlab(&["approx", "(gen 0)", "--n", "4", "--cover"]);
    assert!(out.status.success());
    let out = rieszlab(&[
        "lattice",
        "(gen 0)",
        "(+ (unit) (scale (rat -1 1) (gen 0)))",
    ]);
    assert!(out.status.success());
    assert_eq!(json(&out)["checks"][0]["results"]["join is top"], true);
}

#[test]
fn ledger_and_dini_commands() {
    let out = rieszlab(&[
        "ledger",
        "--matrix",
        r#"[["1/2","0"],["0","1"]]"#,
        "--f",
        r#"["1/3","1"]"#,
        "--g",
        r#"["1","1/4"]"#,
        "--k",
        "8",
    ]);
    assert!(out.status.success());
    let r = json(&out);
    assert_eq!(
        r["checks"][0]["results"]["A(f,g)"],
        r["checks"][0]["results"]["A(g,f)"]
    );
    let out = rieszlab(&["ledger", "--matrix", r#"[["1","1"],["0","1"]]"#]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["checks"][0]["results"]["witness"].is_object());
    let out = rieszlab(&["dini", "--m", "10", "--seed", "3"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["checks"][0]["results"]["n"], 100);
}

#[test]
fn reports_go_to_files_and_text() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = rieszlab(&[
        "suite",
        "normality",
        "--cases",
        "5",
        "--format",
        "text",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 5);
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["summary"]["total"], 5);
}

#[test]
fn seed_falls_back_to_the_environment() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_rieszlab"));
        cmd.args(["suite", "dini", "--cases", "3"])
            .env_remove("RIESZLAB_SEED");
        if let Some(s) = env {
            cmd.env("RIESZLAB_SEED", s);
        }
        if let Some(s) = flag {
            cmd.args(["--seed", s]);
        }
        json(&cmd.output().unwrap())["config"]["seed"].clone()
    };
    assert_eq!(run(None, None), 0);
    assert_eq!(run(Some("9"), None), 9);
    assert_eq!(run(Some("9"), Some("4")), 4);
}

#[test]
fn invalid_configuration_is_rejected() {
    assert_eq!(
        rieszlab(&["suite", "dini", "--cases", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        rieszlab(&["norm", "(gen 0)", "--box", "1:0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        rieszlab(&["norm", "(gen 0)", "--dim", "2", "--box", "0:1"])
            .status
            .code(),
        Some(2)
    );
}
