use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crossdef")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn mu1_on_x_z() {
    let o = run(&["mu1", "--preset", "klein-dt", "--q1", "1", "x", "z"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "[a]");
    let o = run(&["mu1", "--preset", "klein-dt", "--q1", "1", "--format", "json", "x", "z"]);
    assert_eq!(json(&o)["lift_agrees"], Value::Bool(true));
}

#[test]
fn deform_mul_on_x_z() {
    let o = run(&["deform-mul", "--preset", "klein-dt", "--q1", "1", "x", "z"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x*z + t*[a]");
    let o = run(&["deform-mul", "--preset", "klein-dt", "--q1", "1", "z", "x"]);
    assert_eq!(stdout(&o), "x*z");
}

#[test]
fn hh_tables_match() {
    let o = run(&["hh", "--preset", "klein-dt", "--dmax", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let tables = v["tables"].as_array().unwrap();
    assert_eq!(tables.len(), 8);
    assert!(tables.iter().all(|t| t["closed_form"] == "match"));
}

#[test]
fn hh_degree_zero() {
    let o = run(&["hh", "--preset", "klein-trivial", "--dmax", "0"]);
    let v = json(&o);
    let hh0 = v["tables"]
        .as_array()
        .unwrap()
        .iter()
        .find(|t| t["n"] == 0 && t["invariants_only"] == true)
        .unwrap();
    assert_eq!(hh0["summary"][0]["total"], 1);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["hh", "--dmax", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["hh", "--preset", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["mu1", "x", "x +"]).status.code(), Some(2));
    assert_eq!(run(&["deform-mul", "--preset", "klein-trivial", "--q1", "1", "x", "z"]).status.code(), Some(2));
}

#[test]
fn center_report() {
    let o = run(&["center", "--i", "0", "--j", "0", "--k", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["reproducing_scaling"], "2");
    assert_eq!(v["exponents"], serde_json::json!([0, 0, 0]));
    let o = run(&["center", "--scaling", "0", "--format", "text"]);
    assert!(stdout(&o).starts_with("realized: W^2 = X*Y*Z\n"));
}

#[test]
fn chainmap_check_passes() {
    let o = run(&["chainmap-check", "--dmax", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o).as_array().unwrap().len(), 3);
}

#[test]
fn hopf_verify_confirms_expected_failures() {
    let o = run(&["hopf-verify", "--dmax", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let failures: Vec<_> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["expected"] == "fail")
        .collect();
    assert_eq!(failures.len(), 3);
    assert!(failures.iter().all(|c| c["verdict"] == "fail" && c["witness"].is_array()));
}

#[test]
fn verify_vacuous_at_zero() {
    let o = run(&["verify", "--dmax", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["verdict"] == "vacuous"));
}

#[test]
fn verify_with_square_parameter() {
    let o = run(&["verify", "--preset", "klein-dt", "--q1", "y^2", "--dmax", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn verify_reports_non_invariant_class() {
    // p1 = 1 is a Koszul cocycle whose lift is not a Hochschild cocycle
    let o = run(&["verify", "--preset", "klein-dt", "--p1", "1", "--dmax", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let c = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "Hochschild cocycle identity")
        .unwrap();
    assert_eq!(c["verdict"], "fail");
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("crossdef-center-{}.json", std::process::id()));
    let o = run(&["center", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(text.contains("realized_relation"));
}

#[test]
fn json_is_deterministic() {
    let a = run(&["hh", "--preset", "klein-trivial", "--dmax", "3"]);
    let b = run(&["hh", "--preset", "klein-trivial", "--dmax", "3"]);
    assert_eq!(a.stdout, b.stdout);
}
