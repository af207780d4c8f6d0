//! End-to-end runs of the `plumbsw` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plumbsw")).args(args).env_remove("PLUMBSW_BUDGET").output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn sw_methods_agree_on_the_trefoil() {
    let r = json(&["sw", &fixture("trefoil.pg"), "--method", "both"]);
    assert_eq!(r["methods"], serde_json::json!(["closed-form", "oracle"]));
    let rows = r["classes"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["sw_closed"], rows[0]["sw_oracle"]);
    assert_eq!(rows[0]["sw_closed"], "-1/1");
    assert_eq!(rows[0]["pc"], "1/1");
}

#[test]
fn analyze_l21() {
    let r = json(&["analyze", &fixture("l21.pg")]);
    assert_eq!(r["graph"]["det"], 2);
    assert_eq!(r["graph"]["invariant_factors"], serde_json::json!([2]));
    assert_eq!(r["graph"]["closed_form"], "lens");
    let classes: Vec<&Value> = r["classes"].as_array().unwrap().iter().map(|c| &c["class"]).collect();
    assert_eq!(classes, [&serde_json::json!([0]), &serde_json::json!([1])]);
}

#[test]
fn ehrhart_fit_trefoil() {
    let r = json(&["ehrhart-fit", &fixture("trefoil.pg"), "--ray", "node:E0", "--max", "12"]);
    let e = &r["ehrhart"];
    assert_eq!(e["classes"][0]["fit"], "7λ³+10λ²+4λ");
    assert_eq!(e["classes"][0]["period"], 1);
    assert_eq!(e["ray"], serde_json::json!(["42/1", "21/1", "14/1", "6/1"]));
    let counts: Vec<u64> = e["classes"][0]["counts"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
    assert_eq!(&counts[..6], [0, 21, 104, 291, 624, 1145]);
    let r = json(&["ehrhart-fit", &fixture("trefoil.pg"), "--ray", "2*node:E0", "--max", "6"]);
    assert_eq!(r["ehrhart"]["classes"][0]["fit"], "56λ³+40λ²+8λ");
}

#[test]
fn pretty_output() {
    let out = run(&["sw", &fixture("l31.pg"), "--method", "both", "--pretty"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("|V| = 1  det = 3  H = Z/3"));
    assert!(text.contains("sw (closed)  sw (oracle)"));
}

#[test]
fn class_selection() {
    let r = json(&["sw", &fixture("det16.pg"), "--class", "(2,2),(0,1)"]);
    let rows = r["classes"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["class"], serde_json::json!([0, 1]));
    assert_eq!(rows[1]["class"], serde_json::json!([2, 2]));
    assert_eq!(rows[1]["pc"], "1/1");
    let r = json(&["sw", &fixture("l73.pg"), "--class", "3"]);
    assert_eq!(r["classes"][0]["class"], serde_json::json!([3]));
    assert_eq!(run(&["sw", &fixture("det16.pg"), "--class", "4"]).status.code(), Some(1));
}

#[test]
fn verify_fixtures() {
    for name in ["trefoil.pg", "l73.pg", "det16.pg", "unimodular.pg"] {
        let r = json(&["verify", &fixture(name)]);
        let checks = r["checks"].as_array().unwrap();
        assert!(checks.iter().all(|c| c["status"] != "fail"), "{name}");
        let passed = |n: &str| checks.iter().any(|c| c["name"] == n && c["status"] == "pass");
        assert!(passed("sw_closed_vs_oracle") && passed("k2_plus_v"), "{name}");
    }
    let r = json(&["verify", &fixture("unimodular.pg")]);
    assert!(r["checks"].as_array().unwrap().iter().any(|c| c["name"] == "node_coefficients" && c["status"] == "pass"));
}

#[test]
fn output_is_deterministic() {
    let args = ["analyze", &fixture("example65.pg")];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let r = json(&args);
    assert!(r.get("timing_ms").is_none());
    let r = json(&["analyze", &fixture("example65.pg"), "--timing"]);
    assert!(r["timing_ms"]["closed_form"].is_u64());
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["analyze", &fixture("malformed.pg")]).status.code(), Some(1));
    assert_eq!(run(&["analyze", &fixture("missing.pg")]).status.code(), Some(1));
    assert_eq!(run(&["analyze"]).status.code(), Some(1));
    assert_eq!(run(&["analyze", &fixture("indefinite.pg")]).status.code(), Some(2));
    assert_eq!(run(&["sw", &fixture("twonode.pg"), "--method", "oracle", "--budget", "100"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let err = String::from_utf8(run(&["analyze", &fixture("malformed.pg")]).stderr).unwrap();
    assert!(err.contains("malformed.pg:2:7:"), "{err}");
}

#[test]
fn budget_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_plumbsw"))
        .args(["ehrhart-fit", &fixture("trefoil.pg"), "--max", "12"])
        .env("PLUMBSW_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
