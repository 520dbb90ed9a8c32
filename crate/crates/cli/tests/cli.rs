use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_banakh")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("banakh-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

const LINE_SPEC: &str = r#"{"radii": [{"r": "1", "monoid": {"variant": "fingen", "generators": ["1"]}}], "stages": 1, "window": "5", "seed": 0}"#;

const TWO_CLASS_SPEC: &str = r#"{
  "radii": [
    {"r": "1", "monoid": {"variant": "fingen", "generators": ["1"]}},
    {"r": {"rat": "0", "surds": {"2": "1"}}, "monoid": "naturals"}
  ],
  "stages": 2,
  "window": "2",
  "seed": 0
}"#;

#[test]
fn halfgroup_witness() {
    let o = run(&["halfgroup", "--gens", "2,3"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout_json(&o)["witness"], "1 = 3-2 not in M");
    let o = run(&["halfgroup", "--gens", "2,4"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["half_group"], true);
}

#[test]
fn ddot_of_omega_minus_one() {
    let o = run(&["ddot", "--monoid", "omega-minus-1", "--window", "10"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["ddot"], serde_json::json!(["2", "3"]));
    let o = run(&["--human", "ddot", "--monoid", "omega-minus-1", "--window", "10"]);
    assert_eq!(String::from_utf8_lossy(&o.stdout), "{2, 3}\n");
}

#[test]
fn build_then_certify() {
    let d = scratch("build");
    let spec = d.join("spec.json");
    let frag = d.join("frag.json");
    fs::write(&spec, LINE_SPEC).unwrap();
    let o = run(&["build", "--spec", path(&spec), "--seed", "7", "--out", path(&frag)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let first = fs::read(&frag).unwrap();
    let o = run(&["certify", path(&frag), path(&spec)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert_eq!(stdout_json(&o)["certified"], true);
    assert_eq!(code(&run(&["verify", path(&frag)])), 0);
    let e = run(&["embed", path(&frag)]);
    assert_eq!(code(&e), 0);
    assert_eq!(stdout_json(&e)["coords"]["5"], "10");

    let again = run(&["build", "--spec", path(&spec), "--seed", "7", "--out", path(&frag)]);
    assert_eq!(code(&again), 0);
    assert_eq!(fs::read(&frag).unwrap(), first);
}

#[test]
fn tampered_certificate_fails() {
    let d = scratch("tamper");
    let spec = d.join("spec.json");
    let frag = d.join("frag.json");
    fs::write(&spec, LINE_SPEC).unwrap();
    assert_eq!(code(&run(&["build", "--spec", path(&spec), "--seed", "1", "--out", path(&frag)])), 0);
    let mut v: Value = serde_json::from_slice(&fs::read(&frag).unwrap()).unwrap();
    v["certificate"]["realized_distances"].as_array_mut().unwrap().pop();
    fs::write(&frag, serde_json::to_string(&v).unwrap()).unwrap();
    let o = run(&["certify", path(&frag), path(&spec)]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout_json(&o)["certified"], false);
}

#[test]
fn two_classes_do_not_embed() {
    let d = scratch("two");
    let spec = d.join("spec.json");
    let frag = d.join("frag.json");
    fs::write(&spec, TWO_CLASS_SPEC).unwrap();
    assert_eq!(code(&run(&["build", "--spec", path(&spec), "--seed", "3", "--out", path(&frag)])), 0);
    let o = run(&["embed", path(&frag)]);
    assert_eq!(code(&o), 1);
    assert!(stdout_json(&o)["obstruction"].as_array().is_some_and(|a| a.len() >= 3));
    assert_eq!(code(&run(&["certify", path(&frag), path(&spec)])), 0);
}

#[test]
fn geometry_on_a_built_line() {
    let d = scratch("geo");
    let spec = d.join("spec.json");
    let frag = d.join("frag.json");
    fs::write(&spec, LINE_SPEC).unwrap();
    assert_eq!(code(&run(&["build", "--spec", path(&spec), "--seed", "2", "--out", path(&frag)])), 0);
    let f = path(&frag);

    let o = run(&["line", f, "--a", "0", "--b", "1", "--n", "2"]);
    assert_eq!(stdout_json(&o)["line"], serde_json::json!(["-2", "-1", "0", "1", "2"]));
    let o = run(&["orient", f, "--origin", "0", "--x", "1", "--y", "-3"]);
    assert_eq!(stdout_json(&o)["orientation"], "antiparallel");
    let o = run(&["gps", f, "--a", "-1", "--b", "2", "--ra", "2", "--rb", "1"]);
    assert_eq!(stdout_json(&o)["point"], "1");
    let o = run(&["segment", f, "--mode", "extend", "--x", "0", "--y", "2", "--r", "1"]);
    assert_eq!(stdout_json(&o)["point"], "3");
    let o = run(&["segment", f, "--mode", "directed", "--x", "0", "--y", "-1", "--r", "4"]);
    assert_eq!(stdout_json(&o)["point"], "-4");
    let o = run(&["segment", f, "--mode", "split", "--x", "-2", "--y", "2", "--a", "3", "--b", "1"]);
    assert_eq!(stdout_json(&o)["point"], "1");
    // the window ends at 5
    let o = run(&["line", f, "--a", "0", "--b", "1", "--n", "6"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn mu_extend_verify_round_trip() {
    let d = scratch("mu");
    let g = d.join("mu.json");
    let full = d.join("full.json");
    let o = run(&["mu", "--monoid", "omega-minus-1", "--window", "4"]);
    assert_eq!(code(&o), 0);
    fs::write(&g, &o.stdout).unwrap();
    assert_eq!(code(&run(&["verify", path(&g)])), 0);
    assert_eq!(code(&run(&["floppy", "--graph", path(&g)])), 0);
    let o = run(&["extend", path(&g), "--seed", "11", "--out", path(&full)]);
    assert_eq!(code(&o), 0);
    assert!(!stdout_json(&o)["assignments"].as_array().unwrap().is_empty());
    let v = run(&["verify", path(&full)]);
    assert_eq!(code(&v), 0);
    assert_eq!(stdout_json(&v)["full"], true);
    assert!(run(&["extend", path(&g)]).status.code() == Some(2), "seed is required");
}

#[test]
fn monoid_verdicts() {
    let o = run(&["floppy", "--monoid", "dyadic-thirds", "--window", "1", "--denom", "12"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout_json(&o)["witness"]["r"], "1/3");
    assert_eq!(code(&run(&["floppy", "--monoid", "omega-minus-1"])), 0);
    let o = run(&["dzik", "6", "10", "--p", "2"]);
    assert_eq!(stdout_json(&o)["value"], 1);
}

#[test]
fn group_operations() {
    assert_eq!(code(&run(&["group", "norm-equal", "e1+e2", "-e1-e2"])), 0);
    assert_eq!(code(&run(&["group", "norm-equal", "e1", "e2"])), 1);
    let o = run(&["group", "dist", "e1", "-e1"]);
    assert_eq!(stdout_json(&o), serde_json::json!({"coeffs": {"1": "2"}, "sign_normalized": true}));
    assert_eq!(code(&run(&["group", "scale", "e1", "1/2"])), 1);
    let o = run(&["group", "sphere", "0", "e3"]);
    assert_eq!(stdout_json(&o)["sphere"].as_array().unwrap().len(), 2);
}

#[test]
fn malformed_input_reports_the_field() {
    let d = scratch("bad");
    let f = d.join("bad.json");
    fs::write(&f, r#"{"points": ["a", "b"], "dist": [[0, 1, "1/0"]]}"#).unwrap();
    let o = run(&["verify", path(&f)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("$.dist[0][2]"));
    fs::write(&f, "{\n  \"points\": [\n").unwrap();
    let o = run(&["embed", path(&f)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(code(&run(&["nonsense"])), 2);
}
