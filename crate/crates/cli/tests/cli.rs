use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(rel)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_idealforge")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn two_forms_on_a2_passes() {
    let out = run(&["verify", "two-forms", "--qo", &fixture("qo/a2.json"), "--maxlen", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["seed"], 0);
    assert_eq!(v["report"]["prime_classes"], 5);
}

#[test]
fn atoms_of_a2() {
    let out = run(&["hier", "atoms", "--qo", &fixture("qo/a2.json"), "--alpha", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["count"], 5);
    assert_eq!(v["report"]["atoms"].as_array().unwrap().len(), 5);
}

#[test]
fn missing_label_is_a_format_error() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("broken.json");
    std::fs::write(&path, r#"{"elements": ["a"], "order": [["a", "b"]]}"#).unwrap();
    let out = run(&["qo", "validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`b`"));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "reflect"]).status.code(), Some(2));
    let dot_less = run(&["ideals", &fixture("qo/a2.json"), "--format", "dot"]);
    assert_eq!(dot_less.status.code(), Some(2));
}

#[test]
fn failing_check_reports_counterexample_and_input() {
    let out = run(&["verify", "axioms", "--monoid", &fixture("monoid/broken_square.json"), "--samples", "200", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["passed"], false);
    assert_eq!(v["seed"], 5);
    assert!(v["report"]["input"]["mult"].is_array());
    let checks = v["report"]["axioms"]["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["passed"] == false && c["counterexample"].is_array()));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "axioms", "--monoid", &fixture("monoid/capped_addition_2.json"), "--samples", "300", "--seed", "9"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 9);
}

#[test]
fn monoid_expectations_decide_the_exit_code() {
    for name in ["capped_addition_2", "idempotent_flat_3", "broken_square"] {
        let out = run(&["monoid", "check", &fixture(&format!("monoid/{name}.json"))]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert_eq!(json(&out)["report"]["matches_expectations"], true, "{name}");
    }
    let flat3 = json(&run(&["monoid", "check", &fixture("monoid/idempotent_flat_3.json")]));
    assert_eq!(flat3["report"]["plus"]["passed"], false);
}

#[test]
fn factor_and_primes() {
    let m = fixture("monoid/capped_addition_4.json");
    let f = json(&run(&["monoid", "factor", &m, "3"]));
    assert_eq!(f["report"]["factors"], serde_json::json!(["1", "1", "1"]));
    let p = json(&run(&["monoid", "primes", &m]));
    assert_eq!(p["report"]["primes"], serde_json::json!(["1"]));
}

#[test]
fn higman_leq_uses_idempotent_letters() {
    let a = fixture("alphabet/chain2_top_idem.json");
    let v = json(&run(&["higman", "leq", "--alphabet", &a, "a,a,b", "b"]));
    assert_eq!(v["report"]["leq"], true);
    assert_eq!(v["report"]["bruteforce"], true);
    let classical = fixture("alphabet/classical_a2.json");
    let w = json(&run(&["higman", "leq", "--alphabet", &classical, "a,a", "a"]));
    assert_eq!(w["report"]["leq"], false);
}

#[test]
fn remaining_verifiers_pass_on_a2() {
    let q = fixture("qo/a2.json");
    for args in [
        vec!["verify", "containment", "--qo", &q],
        vec!["verify", "xywz", "--qo", &q],
        vec!["verify", "reflect", "--qo", &q, "--alpha", "2"],
        vec!["verify", "higman-dp", "--alphabet", &fixture("alphabet/a2_level1_atoms.json"), "--maxlen", "3"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn dot_outputs() {
    let out = run(&["qo", "dot", &fixture("qo/n_shape.json"), "--format", "dot"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph n_shape {"));
    assert_eq!(text.matches("->").count(), 3);
    let lv = run(&["hier", "build", "--qo", &fixture("qo/a2.json"), "--alpha", "2", "--kind", "vstar", "--format", "dot"]);
    assert!(String::from_utf8(lv.stdout).unwrap().starts_with("digraph"));
}

#[test]
fn member_bound_is_enforced() {
    let out = run(&["hier", "build", "--qo", &fixture("qo/a2.json"), "--alpha", "3", "--kind", "vstar", "--max-members", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let env = Command::new(env!("CARGO_BIN_EXE_idealforge"))
        .args(["hier", "build", "--qo", &fixture("qo/a2.json"), "--alpha", "3", "--kind", "vstar"])
        .env("IDEALFORGE_MAX_MEMBERS", "3")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(2));
}
