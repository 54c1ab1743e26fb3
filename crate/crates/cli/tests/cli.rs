use std::process::Command;

use serde_json::Value;
use splitcount_cli::{run, suites, EXIT_OK, EXIT_USAGE};

fn call(args: &[&str]) -> (i32, String) {
    run(std::iter::once("splitcount").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let (code, out) = call(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {out}");
    serde_json::from_str(&out).unwrap_or_else(|e| panic!("{args:?}: {e}: {out}"))
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn count_small_splitting() {
    let v = json(&["count", "--q", "2", "--m", "2", "--n", "2", "--via", "oracle,closed"]);
    assert_eq!(v["count"], "20");
    assert_eq!(v["agreement"], true);
    assert_eq!(v["provenance"], serde_json::json!(["oracle", "closed-form"]));
}

#[test]
fn count_plain_and_symbolic() {
    assert_eq!(call(&["count", "--q", "3", "--m", "2", "--n", "2", "--plain"]), (EXIT_OK, "90".into()));
    let v = json(&["count", "--q", "2", "--m", "2", "--n", "2", "--symbolic"]);
    assert_eq!(v["polynomial"], serde_json::json!(["0", "0", "1", "0", "1"]));
}

#[test]
fn count_beyond_brute_force_uses_formulas() {
    let v = json(&["count", "--q", "2", "--m", "2", "--n", "4"]);
    assert_eq!(v["provenance"], serde_json::json!(["recursion", "closed-form"]));
    assert_eq!(v["agreement"], true);
    let (code, out) = call(&["count", "--q", "2", "--m", "2", "--n", "4", "--via", "oracle"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.contains("--N"), "{out}");
}

#[test]
fn count_with_explicit_operator() {
    let v = json(&["count", "--q", "2", "--m", "1", "--n", "2", "--matrix", "0,1;1,0"]);
    assert_eq!(v["count"], "2");
    let v = json(&["count", "--q", "2", "--m", "2", "--n", "2", "--matrix", "1,0,0,0;0,1,0,0;0,0,1,0;0,0,0,1"]);
    assert_eq!(v["count"], "0");
    let (code, _) = call(&["count", "--q", "2", "--m", "1", "--n", "2", "--matrix", "1,1;1,1"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn prime_power_field() {
    for args in [&["--q", "4"][..], &["--q", "4", "--base-poly", "1,1,1"][..]] {
        let mut a = vec!["pair", "--N", "3", "--a", "2", "--b", "1"];
        a.extend_from_slice(args);
        let v = json(&a);
        assert_eq!(v["count"], "21", "{args:?}");
        assert_eq!(v["agreement"], true);
    }
    let (code, out) = call(&["count", "--q", "4", "--base-poly", "1,1,1,1", "--m", "1", "--n", "2"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.contains("--base-poly"), "{out}");
}

#[test]
fn empty_flag_tuple_counts_once() {
    let v = json(&["flag", "--q", "2", "--N", "4", "--tuple", "(0,0)"]);
    assert_eq!(v["count"], "1");
    assert_eq!(v["agreement"], true);
}

#[test]
fn flag_paths_agree() {
    for tuple in ["[(3,1),(1,0)]", "(4,2),(2,1)", "[(2,1)]", "(3,2)"] {
        let v = json(&["flag", "--q", "3", "--N", "5", "--tuple", tuple]);
        assert_eq!(v["provenance"].as_array().unwrap().len(), 3, "{tuple}");
        assert_eq!(v["agreement"], true, "{tuple}");
    }
}

#[test]
fn oracle_guard_on_large_n() {
    let (code, _) = call(&["flag", "--N", "9", "--tuple", "(2,1)", "--via", "oracle"]);
    assert_eq!(code, EXIT_USAGE);
    let v = json(&["flag", "--N", "9", "--tuple", "(2,1)"]);
    assert_eq!(v["count"], "511");
}

#[test]
fn angle_tuple() {
    let v = json(&["angle", "--q", "2", "--N", "5", "--tuple", "⟨[4,2],[1,0]⟩"]);
    assert_eq!(v["count"], "651");
    assert_eq!(v["agreement"], true);
}

#[test]
fn recursion_trace_lists_dependencies() {
    let v = json(&["recursion", "--N", "5", "--tuple", "(3,1)", "--trace"]);
    assert_eq!(v["count"], "124");
    let trace: Vec<&str> = v["details"]["trace"].as_array().unwrap().iter().map(|k| k.as_str().unwrap()).collect();
    assert!(trace.contains(&"(0,0)"));
    assert!(!trace.contains(&"(3,1)"));
}

#[test]
fn closed_only() {
    assert_eq!(call(&["closed", "--N", "5", "--tuple", "(3,2)", "--plain"]), (EXIT_OK, "31".into()));
}

#[test]
fn identity_sweeps_exit_zero() {
    for lemma in ["1", "2"] {
        let v = json(&["identity", "--lemma", lemma, "--max-A", "10"]);
        assert_eq!(v["agreement"], true);
        assert_eq!(v["details"]["cases"], 715);
    }
    let v = json(&["identity", "--lemma", "2", "--params", "5,3,1,2"]);
    assert_eq!(v["details"]["holds"], true);
}

#[test]
fn q1_modes() {
    assert_eq!(call(&["q1", "--m", "2", "--n", "3", "--plain"]), (EXIT_OK, "3".into()));
    let v = json(&["q1", "--a", "3", "--b", "1", "--N", "6"]);
    assert_eq!(v["agreement"], true);
    let v = json(&["q1", "--tuple", "(4,2)", "--N", "7"]);
    assert_eq!(v["count"], "21");
    assert_eq!(call(&["q1", "--m", "2"]).0, EXIT_USAGE);
}

#[test]
fn bijection_sizes() {
    let v = json(&["bijection", "--q", "3", "--N", "4"]);
    assert_eq!(v["count"], "40");
    assert_eq!(v["details"]["reports"].as_array().unwrap().len(), 2);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["count", "--q", "2", "--m", "2"][..],
        &["count", "--q", "6", "--m", "1", "--n", "2"][..],
        &["flag", "--N", "4", "--tuple", "(2,3)"][..],
        &["flag", "--N", "4", "--tuple", "garbage"][..],
        &["identity", "--lemma", "3"][..],
        &["verify", "--suite", "nope"][..],
        &["frobnicate"][..],
    ] {
        let (code, out) = call(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}: {out}");
        assert!(!out.is_empty());
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["count", "--q", "2", "--m", "2", "--n", "2", "--N", "5"];
    let a = without_timing(json(&args));
    let b = without_timing(json(&args));
    assert_eq!(a, b);
}

#[test]
fn quick_suites_pass() {
    for suite in [suites::Suite::Pascal, suites::Suite::Bijection, suites::Suite::Lr, suites::Suite::GeneralT] {
        let report = suites::run_suite(suite).unwrap();
        assert!(report.all_passed(), "{}", report.plain());
    }
    let (code, out) = call(&["verify", "--suite", "expand"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["failed"], 0);
    assert!(v["passed"].as_u64().unwrap() > 0);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_splitcount");
    let ok = Command::new(bin).args(["pair", "--N", "3", "--a", "1", "--b", "0", "--plain"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).trim(), "7");
    let bad = Command::new(bin).args(["pair", "--N", "3"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("--a"));
}
