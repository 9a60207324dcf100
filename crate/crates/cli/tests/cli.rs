use std::f64::consts::PI;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_descff")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn value(doc: &Value) -> (f64, f64) {
    let v = &doc["result"]["value"];
    (v["re"].as_f64().unwrap(), v["im"].as_f64().unwrap())
}

#[test]
fn eval_exponential() {
    let doc = json(&run(&["eval", "--element", "1", "--x", "0.7", "--a", "0.2"]));
    assert_eq!(doc["schema"], "descff/1");
    let (re, im) = value(&doc);
    assert!((re - 2.0 * (0.2 * PI).cos()).abs() < 1e-14 && im.abs() < 1e-14);
    let doc = json(&run(&["eval", "--n", "0", "--a", "0.37"]));
    assert_eq!(value(&doc), (1.0, 0.0));
}

#[test]
fn eval_level_two_closed_form() {
    let doc = json(&run(&["eval", "--element", "c-1^2", "--x", "1,2", "--a", "0.1", "--p", "0.3"]));
    let (re, im) = value(&doc);
    let want = 4.0 * (0.1 * PI).cos().powi(2) * 9.0;
    assert!((re - want).abs() < 1e-12 * want && im.abs() < 1e-12);
}

#[test]
fn eval_symbolic_and_form_factor() {
    let doc = json(&run(&["eval", "--element", "c-2", "--n", "3", "--seed", "4"]));
    assert!(doc["result"]["value"]["rho_poly"].is_object() || doc["result"]["value"]["rho_poly"].is_array());
    assert!(doc["result"]["a"].is_null());
    let doc = json(&run(&["eval", "--element", "h2", "--a", "0.13", "--theta", "0.1,-0.4", "--p", "0.31"]));
    let ff = &doc["form_factor"];
    assert!(ff["value"]["re"].is_f64() && ff["err_estimate"].as_f64().unwrap() >= 0.0);
}

#[test]
fn verify_suites_pass() {
    for suite in ["oracle", "eom", "em", "kink"] {
        let out = run(&["verify", "--suite", suite, "--seed", "7"]);
        let doc = json(&out);
        assert_eq!(doc["failed"], 0, "{suite}");
        assert!(doc["passed"].as_u64().unwrap() > 0);
    }
}

#[test]
fn verify_failure_exits_one() {
    let out = run(&["verify", "--suite", "eom", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(doc["failed"].as_u64().unwrap() > 0);
}

#[test]
fn reflect_levels() {
    let doc = json(&run(&["reflect", "--level", "0", "--a", "0.2"]));
    let m = &doc["solution"]["matrix"];
    assert_eq!(m.as_array().unwrap().len(), 1);
    assert!((m[0][0]["re"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    let doc = json(&run(&["reflect", "--level", "2", "--a", "0.13", "--p", "0.31"]));
    assert!(doc["involution_defect"].as_f64().unwrap() < 1e-8);
    assert_eq!(doc["solution"]["matrix"].as_array().unwrap().len(), 2);
}

#[test]
fn reflect_on_the_lattice_names_the_point() {
    let out = run(&["reflect", "--level", "2", "--a", "0.15", "--p", "0.3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("p/2"), "{err}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["eval", "--element", "c-1^^2", "--n", "1", "--a", "0.1"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--element", "h2", "--a", "0.5", "--n", "2"]).status.code(), Some(3));
    assert_eq!(run(&["eval", "--n", "1", "--tol", "-1"]).status.code(), Some(2));
}

#[test]
fn deterministic_output_and_json_out() {
    let dir = std::env::temp_dir().join(format!("descff-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let args = ["verify", "--suite", "reflection", "--seed", "3", "--n", "2", "--json-out", path.to_str().unwrap()];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(std::fs::read(&path).unwrap(), a.stdout);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn thread_cap_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_descff"))
        .args(["eval", "--n", "12", "--a", "0.1", "--seed", "2"])
        .env("DESCFF_THREADS", "1")
        .output()
        .unwrap();
    let single = json(&out);
    let multi = json(&run(&["eval", "--n", "12", "--a", "0.1", "--seed", "2"]));
    assert_eq!(single["result"]["value"], multi["result"]["value"]);
}
