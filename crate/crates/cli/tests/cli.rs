use std::process::{Command, Output};

fn quintic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quintic")).args(args).env_remove("QUINTIC_DATASET").output().unwrap()
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = quintic(&all);
    (out.status.code().unwrap(), serde_json::from_slice(&out.stdout).unwrap())
}

#[test]
fn theorem_d2_passes() {
    let (code, v) = json(&["theorem", "--d", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "theorem");
    assert_eq!(v["data"]["density"], 0.25);
    assert_eq!(v["data"]["lower_bound"], 13);
    assert_eq!(v["data"]["residues_mod_20"], serde_json::json!([1, 9]));
    assert_eq!(v["summary"]["fail"], 0);
}

#[test]
fn theorem_d3_reports_weaker_bound() {
    let (code, v) = json(&["theorem", "--d", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["lower_bound"], 13);
    assert_eq!(v["data"]["density"], 0.5);
    let d3 = v["entries"].as_array().unwrap().iter().find(|e| e["claim"] == "theorem.d3").unwrap();
    assert_eq!(d3["status"], "discrepancy");
    assert_eq!(quintic(&["theorem", "--d", "3", "--strict"]).status.code(), Some(1));
}

#[test]
fn frey_trace_at_3() {
    let (code, v) = json(&["frey", "--a", "1", "--b", "2", "--d", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["trace_p3"], -18);
}

#[test]
fn negative_arguments() {
    let (code, v) = json(&["conductor", "--a", "1", "--b", "-1", "--d", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["ideal"], "P2^4 P5^0");
}

#[test]
fn lemmas_pass() {
    assert_eq!(quintic(&["lemmas", "--lmax", "200"]).status.code(), Some(0));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(quintic(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(quintic(&["theorem", "--d", "5"]).status.code(), Some(2));
    assert_eq!(quintic(&["frey", "--a", "1", "--b", "2", "--d", "2"]).status.code(), Some(2));
    assert_eq!(quintic(&["theorem", "--d", "2", "--dataset", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn strict_turns_findings_into_failures() {
    assert_eq!(quintic(&["weil"]).status.code(), Some(0));
    assert_eq!(quintic(&["weil", "--strict"]).status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let a = quintic(&["newforms-validate", "--format", "json"]);
    let b = quintic(&["newforms-validate", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = quintic(&["quer", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), out.stdout);
}

#[test]
fn search_and_eligible() {
    let (code, v) = json(&["search", "--d", "2", "--p", "17", "--height", "50"]);
    assert_eq!(code, 0);
    assert!(v["data"]["solutions"].as_array().unwrap().iter().all(|s| s[2].as_i64().unwrap().abs() == 1));
    let (code, v) = json(&["eligible", "--d", "2", "--x", "1000", "--list"]);
    assert_eq!(code, 0);
    assert_eq!(v["data"]["primes"][0], 29);
}

#[test]
fn eliminate_single_form() {
    let (code, v) = json(&["eliminate", "--d", "2", "--form", "1600.9"]);
    assert_eq!(code, 0);
    assert_eq!(v["entries"][0]["claim"], "eliminate.twist-match");
    assert_eq!(quintic(&["eliminate", "--d", "2", "--form", "9.9"]).status.code(), Some(2));
}
