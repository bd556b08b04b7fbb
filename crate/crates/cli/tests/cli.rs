use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_orbitcrit"))
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("orbitcrit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn degrees(v: &Value) -> Vec<(String, u64)> {
    let mut out: Vec<_> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["partition"].to_string(), e["degree"].as_u64().unwrap()))
        .collect();
    out.sort();
    out
}

#[test]
fn solve_sphere() {
    let out = run(&["solve", data("sphere.json").to_str().unwrap(), "--seed", "3"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let expect = vec![("[[1,1],[2,1]]".to_string(), 4), ("[[1,3]]".into(), 0), ("[[3,1]]".into(), 2)];
    assert_eq!(degrees(&json(&out)), expect);
}

#[test]
fn solve_is_deterministic() {
    let a = run(&["solve", data("sphere.json").to_str().unwrap(), "--seed", "11"]);
    let b = run(&["solve", data("sphere.json").to_str().unwrap(), "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn solve_then_verify() {
    let input = data("sphere.json");
    let out = scratch("sphere-out.json");
    let s = run(&["solve", input.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(s.status.success());
    let v = run(&["verify", out.to_str().unwrap(), input.to_str().unwrap()]);
    assert_eq!(v.status.code(), Some(0), "{}", String::from_utf8_lossy(&v.stdout));
    assert_eq!(json(&v)["ok"], Value::Bool(true));
}

#[test]
fn verify_rejects_tampering() {
    let input = data("sphere.json");
    let out = scratch("tampered.json");
    let s = run(&["solve", input.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(s.status.success());
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    // Shift every v-coefficient of the first nonempty entry.
    let entry = v["entries"].as_array_mut().unwrap().iter_mut().find(|e| e["degree"].as_u64() != Some(0)).unwrap();
    let first = &mut entry["v"][0][0];
    *first = Value::from((first.as_u64().unwrap() + 1) % 65521);
    std::fs::write(&out, v.to_string()).unwrap();
    let r = run(&["verify", out.to_str().unwrap(), input.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(2));
}

#[test]
fn naive_solve_and_verify() {
    let input = data("sphere.json");
    let out = scratch("sphere-naive.json");
    let s = run(&["solve", input.to_str().unwrap(), "--naive", "--out", out.to_str().unwrap()]);
    assert!(s.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["naive"]["degree"], Value::from(14));
    let r = run(&["verify", out.to_str().unwrap(), input.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(0));
}

#[test]
fn bounds_table_row() {
    let out = run(&["bounds", "4", "4", "2"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!((v["c"].as_str(), v["c_naive"].as_str(), v["sum_of_ceils"].as_str()), (Some("560"), Some("864"), Some("80")));
    let text = run(&["bounds", "4", "4", "2", "--table"]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("22/3"));
}

#[test]
fn gen_oracle_round_trip() {
    let problem = scratch("gen.json");
    let g = run(&["gen", "3", "1", "3", "--seed", "4", "--prime", "101"]);
    assert!(g.status.success());
    std::fs::write(&problem, &g.stdout).unwrap();
    let o = run(&["oracle", problem.to_str().unwrap()]);
    assert!(o.status.success());
    let count = json(&o)["count"].as_u64().unwrap();
    let by_type = json(&o)["by_type"].as_array().unwrap().len();
    assert!(count == 0 || by_type > 0);
}

#[test]
fn oracle_refuses_large_primes() {
    let o = run(&["oracle", data("sphere.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn positive_dimensional_exit_code() {
    // Quadratic data in three variables: the 2-minors share the factor
    // (x_j - x_i) times a linear form in e1, so the naive system has a curve.
    let problem = scratch("curve.json");
    let g = run(&["gen", "3", "1", "2", "--seed", "1000", "--prime", "101"]);
    std::fs::write(&problem, &g.stdout).unwrap();
    let s = run(&["solve", problem.to_str().unwrap(), "--naive"]);
    assert_eq!(s.status.code(), Some(3), "{}", String::from_utf8_lossy(&s.stderr));
}

#[test]
fn parse_errors_and_usage() {
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{\"n\": 3,\n \"s\": }").unwrap();
    let r = run(&["solve", bad.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&r.stderr).contains("line 2"));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&["solve", "/nonexistent/file.json"]).status.code(), Some(20));
}
