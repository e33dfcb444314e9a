use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_algebroid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = run(&full);
    (o.status.code().unwrap(), serde_json::from_slice(&o.stdout).expect("json report"))
}

#[test]
fn validate_so3() {
    let o = run(&["validate", &data("so3.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "algebroid: valid\n");
}

#[test]
fn broken_anchor_names_the_identity() {
    let o = run(&["validate", &data("broken_anchor.json")]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("anchor(e1,e2)"), "{out}");
}

#[test]
fn malformed_polynomial_is_a_parse_error() {
    let o = run(&["validate", &data("malformed.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
    let (code, v) = json(&["validate", &data("malformed.json")]);
    assert_eq!(code, 2);
    assert_eq!(v["status"], "parse_error");
}

#[test]
fn missing_file_is_a_parse_error() {
    let o = run(&["validate", &data("does_not_exist.json")]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn so3_betti_numbers() {
    let (code, v) = json(&["cohomology", &data("so3.json"), "--max-degree", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["betti"], serde_json::json!([1, 0, 0, 1]));
    assert_eq!(v["schema"], "algebroid-report/1");
    assert_eq!(v["input_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn tangent_plane_betti_numbers() {
    let o = run(&["cohomology", &data("tangent_plane.json"), "--max-degree", "2", "--max-weight", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("betti: 1 0 0\n"));
}

#[test]
fn quadratic_anchor_exceeds_the_cap() {
    let (code, v) = json(&["cohomology", &data("quadratic_anchor.json"), "--max-degree", "1", "--max-weight", "2"]);
    assert_eq!(code, 3);
    assert_eq!(v["status"], "cap_exceeded");
    assert!(v["error"].as_str().unwrap().contains("weight 3"));
    assert_eq!(v["result"]["overflow"], serde_json::json!({"degree": 0, "weight": 3, "cap": 2}));
}

#[test]
fn aff1_modular_class() {
    let (code, v) = json(&["modular", &data("aff1.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["cocycle"], serde_json::json!({"e1": "1"}));
    assert_eq!(v["result"]["exactness"]["verdict"], "not_exact");
}

#[test]
fn gl2_first_class_with_metric() {
    let (code, v) = json(&["charclass", &data("gl2.json"), "--rep", "std", "--metric", "skew", "--max-weight", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["cocycle"], serde_json::json!({"e11": "1", "e22": "1"}));
    assert_eq!(v["result"]["closed"], true);
}

#[test]
fn charclass_rejects_out_of_range_k() {
    let o = run(&["charclass", &data("gl2.json"), "--rep", "std", "--k", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn aff1_linear_modular_vector_field() {
    let (code, v) = json(&["poisson", &data("poisson_aff1.json"), "modular"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["vector_field"], serde_json::json!({"x": "1"}));
}

#[test]
fn aff1_linear_cross_check() {
    let (code, v) = json(&["poisson", &data("poisson_aff1.json"), "cross-check"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["relation"]["verdict"], "proportional");
    assert_eq!(v["result"]["relation"]["lambda"], "2");
}

#[test]
fn jacobiator_detects_failure() {
    let o = run(&["poisson", &data("poisson_broken.json"), "jacobiator"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["poisson", &data("poisson_so3.json"), "jacobiator"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn cotangent_output_round_trips() {
    let o = run(&["poisson", &data("poisson_so3.json"), "cotangent"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = algebroid::io::Document::parse(&stdout(&o)).unwrap();
    assert_eq!(doc.algebroid.rank(), 3);
    assert!(doc.algebroid.validated().is_ok());
}

#[test]
fn vanest_chain_map_on_the_pair_groupoid() {
    let (code, v) = json(&["vanest", "--family", "pair", "--dim", "1", "--check", "chainmap", "--trials", "25", "--seed", "7"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["sign"], 1);
    assert_eq!(v["result"]["passed"], true);
}

#[test]
fn vanest_all_checks_on_an_action_groupoid() {
    let (code, v) = json(&[
        "vanest", "--family", "action", "--group", "g", "--base", "x", "--action", "g+x", "--seed", "3", "--trials", "5",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["counterexamples"], serde_json::json!([]));
}

#[test]
fn vanest_requires_a_seed() {
    let o = run(&["vanest", "--family", "pair"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical() {
    let args = ["--json", "poisson", &data("poisson_so3.json"), "cohomology", "--max-degree", "3", "--max-weight", "1"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let args = ["--json", "vanest", "--family", "pair", "--dim", "2", "--seed", "11", "--trials", "4"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn timings_are_opt_in() {
    let (_, v) = json(&["validate", &data("so3.json")]);
    assert!(v.get("timings_ms").is_none());
    let (_, v) = json(&["--timings", "validate", &data("so3.json")]);
    assert!(v["timings_ms"].is_number());
}
