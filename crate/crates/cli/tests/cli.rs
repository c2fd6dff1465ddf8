use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_simpgrp")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

fn group_at(v: &Value, n: usize, method: &str) -> (u64, Vec<String>) {
    let d = &v["result"]["degrees"][n][method];
    let torsion = d["torsion"].as_array().unwrap().iter().map(|t| t.as_str().map(String::from).unwrap_or_else(|| t.to_string())).collect();
    (d["betti"].as_u64().unwrap(), torsion)
}

#[test]
fn cyclic_two_both_methods() {
    let o = run(&["homology", "--group", "cyclic:2", "--max-degree", "3", "--method", "both"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(group_at(&v, 1, "e"), (0, vec!["2".to_string()]));
    assert_eq!(group_at(&v, 2, "e"), (0, vec![]));
    assert_eq!(group_at(&v, 3, "e"), (0, vec!["2".to_string()]));
    for n in 0..=3 {
        assert_eq!(v["result"]["degrees"][n]["match"], Value::Bool(true));
    }
}

#[test]
fn trivial_group_is_acyclic() {
    let o = run(&["homology", "--group", "trivial", "--max-degree", "4"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(group_at(&v, 0, "e"), (1, vec![]));
    for n in 1..=4 {
        assert_eq!(group_at(&v, n, "e"), (0, vec![]));
    }
}

#[test]
fn torus_from_file() {
    let spec = format!("presentation:{}", data("torus.json"));
    let o = run(&["homology", "--group", &spec, "--max-degree", "2", "--method", "e"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(group_at(&v, 1, "e"), (2, vec![]));
    assert_eq!(group_at(&v, 2, "e"), (1, vec![]));
    assert_eq!(v["result"]["degrees"][2]["e"]["verified"], Value::Bool(true));
}

#[test]
fn bar_method_needs_a_finite_group() {
    let o = run(&["homology", "--group", "free:2", "--method", "bar"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(run(&["homology", "--group", "cyclic:0"]).status.code(), Some(2));
    assert_eq!(run(&["homology", "--group", "dihedral:4"]).status.code(), Some(2));
}

#[test]
fn cube_suite_and_fault() {
    let o = run(&["verify", "--suite", "cube", "--seed", "7", "--trials", "4"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let bad = run(&["verify", "--suite", "cube", "--seed", "7", "--trials", "2", "--inject-fault"]);
    assert_eq!(bad.status.code(), Some(1));
    let v = json(&bad);
    let first = v["result"]["suites"][0]["report"]["failures"][0].as_str().unwrap();
    assert!(first.contains("simplicial identity"), "{first}");
}

#[test]
fn moore_fault_names_the_identity() {
    let bad = run(&["verify", "--suite", "moore", "--trials", "2", "--inject-fault"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("d0 s0 = id"));
}

/// The word-level `A_n` identity breaks at levels 3 and 4, so the suite fails;
/// the abelianized and graded forms are reported alongside.
#[test]
fn retraction_suite_reports_identity_counts() {
    let o = run(&["verify", "--suite", "retraction", "--seed", "1", "--trials", "10"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let passed = &v["result"]["suites"][0]["report"]["passed"];
    assert_eq!(passed["boundary identity, graded recursion"], 80);
    assert_eq!(passed["boundary identity, abelianized"], 80);
    assert_eq!(passed["moore membership"], 280);
    let failures = v["result"]["suites"][0]["report"]["failures"].as_array().unwrap();
    assert!(failures.iter().all(|f| f.as_str().unwrap().contains("boundary identity")));
}

#[test]
fn reports_are_reproducible() {
    let args = ["verify", "--suite", "all", "--seed", "3", "--trials", "2"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn torus_pairing() {
    let spec = format!("presentation:{}", data("torus.json"));
    let o = run(&["pairing", "--group", &spec, "--cocycles", &data("torus_cocycles.json"), "--degree", "2", "--coboundary-trials", "5"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    let rows = v["result"]["pairings"].as_array().unwrap();
    let classes = v["result"]["classes"].as_array().unwrap();
    let relator = classes.iter().position(|c| c["name"] == "relator r1").unwrap();
    assert_eq!(rows[0]["values"][relator], "1");
    assert!(rows[1]["values"].as_array().unwrap().iter().all(|x| x == "0"));
    assert_eq!(v["result"]["coboundaries_zero"], 5);
}

#[test]
fn exponent_pairing_on_integers() {
    let o = run(&["pairing", "--group", "free:1", "--cocycles", &data("z_cocycles.json"), "--degree", "1"]);
    assert!(o.status.success());
    let v = json(&o);
    let x: i64 = v["result"]["pairings"][0]["values"][0].as_str().unwrap().parse().unwrap();
    assert_eq!(x.abs(), 1);
}

#[test]
fn non_cocycles_fail_the_run() {
    let o = run(&["pairing", "--group", "cyclic:2", "--cocycles", &data("z2_cocycles.json"), "--degree", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["result"]["pairings"][0]["is_cocycle"], Value::Bool(false));
}

#[test]
fn filtrations() {
    let o = run(&["filtration", "--functor", "constant:2"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["result"]["degrees"][0]["stage_dims"][0], 2);
    let o = run(&["filtration", "--functor", "staircase"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["result"]["degrees"][0]["stage_dims"], serde_json::json!([0, 1]));
}

#[test]
fn out_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("simpgrp-cli-{}.json", std::process::id()));
    let p = path.display().to_string();
    let o = run(&["homology", "--group", "cyclic:3", "--max-degree", "2", "--out", &p]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["ok"], Value::Bool(true));
    std::fs::remove_file(path).ok();
}
