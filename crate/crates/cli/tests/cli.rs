use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chowtope"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn gen(dir: &Path, expr: &str) -> PathBuf {
    let path = dir.join(format!("{}.json", expr.replace(['(', ')', ','], "_")));
    let out = run(&["gen", expr, "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn vertex_count(path: &Path) -> usize {
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    doc["vertices"].as_array().unwrap().len()
}

/// The interval of largest length, i.e. source to sink.
fn top(report: &Value) -> &Value {
    report["intervals"]
        .as_array()
        .unwrap()
        .iter()
        .max_by_key(|i| i["rho"].as_u64())
        .unwrap()
}

fn coeffs(v: &Value) -> Vec<i64> {
    v.as_array().unwrap().iter().map(|c| c.as_i64().unwrap()).collect()
}

#[test]
fn gen_vertex_counts() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(vertex_count(&gen(dir.path(), "cube(3)")), 8);
    assert_eq!(vertex_count(&gen(dir.path(), "trapezohedron(4)")), 10);
    assert_eq!(vertex_count(&gen(dir.path(), "prod(simplex(2),simplex(1))")), 6);
}

#[test]
fn gen_to_stdout_matches_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), "pyrMin(quadSep)");
    let out = run(&["gen", "pyrMin(quadSep)"]);
    let a: Value = serde_json::from_slice(&out.stdout).unwrap();
    let b: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn analyze_condition_vectors() {
    let dir = tempfile::tempdir().unwrap();
    let r = json_of(&run(&["analyze", gen(dir.path(), "nostrat5").to_str().unwrap()]));
    assert_eq!(r["conditions"], serde_json::json!([false, false, true, true, true, true, false, false]));
    let r = json_of(&run(&["analyze", gen(dir.path(), "ngon(5)").to_str().unwrap()]));
    assert_eq!(r["stratification"]["minus"], Value::Bool(false));
    assert_eq!(r["stratification"]["plus"], Value::Bool(false));
    let r = json_of(&run(&["analyze", gen(dir.path(), "cube(3)").to_str().unwrap()]));
    assert!(r["conditions"].as_array().unwrap().iter().all(|c| c == &Value::Bool(true)));
    assert_eq!(r["vertex_poset"]["rank"].as_array().unwrap().len(), 8);
}

#[test]
fn analyze_dot_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen(dir.path(), "trapezohedron(4)");
    let out = run(&["analyze", p.to_str().unwrap(), "--dot", "skeleton"]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("digraph"));
    let out = run(&["analyze", p.to_str().unwrap(), "--dot", "hasse"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("->").count(), 16);
}

#[test]
fn chow_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["chow", gen(dir.path(), "cube(3)").to_str().unwrap(), "--oracle", "--simple"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["f_vector"], serde_json::json!([1, 6, 6, 1]));
    assert_eq!(r["simple"], Value::Bool(true));
    assert_eq!(r["oracle"]["isomorphic"], Value::Bool(true));

    let r = json_of(&run(&["chow", gen(dir.path(), "pyrMax(pyrMin(quadSep))").to_str().unwrap(), "--simple"]));
    assert_eq!(r["simple"], Value::Bool(false));

    let r = json_of(&run(&["chow", gen(dir.path(), "simplex(3)").to_str().unwrap()]));
    assert_eq!(r["vertices"].as_array().unwrap().len(), 4);
}

#[test]
fn poly_reports() {
    let dir = tempfile::tempdir().unwrap();
    let r = json_of(&run(&["poly", gen(dir.path(), "simplex(4)").to_str().unwrap()]));
    let t = top(&r);
    assert_eq!(coeffs(&t["kappa"]), [0, 0, 0, -1, 1]);
    // the monotone path polytope of a 4-simplex is a 3-cube
    assert_eq!(coeffs(&t["H"]), [1, 3, 3, 1]);

    let r = json_of(&run(&["poly", gen(dir.path(), "trapezohedron(4)").to_str().unwrap()]));
    assert_eq!(coeffs(&top(&r)["kappa"]), [-1, 3, -3, 1]);

    let out = run(&["poly", gen(dir.path(), "cube(3)").to_str().unwrap(), "--verify-main"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["main_theorem"]["all_pass"], Value::Bool(true));

    let r = json_of(&run(&["poly", gen(dir.path(), "cube(2)").to_str().unwrap(), "--kernel", "chi"]));
    assert_eq!(r["kernel"], Value::String("chi".into()));
    assert_eq!(r["is_kernel"], Value::Bool(true));
}

#[test]
fn non_simple_output_is_labelled() {
    let dir = tempfile::tempdir().unwrap();
    let r = json_of(&run(&["poly", gen(dir.path(), "pyrMax(pyrMin(quadSep))").to_str().unwrap(), "--verify-main"]));
    assert_eq!(r["ch_simple"], Value::Bool(false));
    assert!(r["note"].is_string());
    assert_eq!(r["main_theorem"]["all_pass"], Value::Bool(true));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"vertices\": [[1, 2], [3").unwrap();
    assert_eq!(run(&["analyze", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["verify", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["gen", "cube(3"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));

    let out = run(&["chow", gen(dir.path(), "ngon(5)").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"], Value::String("NotStratified".into()));
    let out = run(&["poly", gen(dir.path(), "nostrat5").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn vertex_guard() {
    let out = bin().args(["gen", "cube(3)"]).env("MONOPATH_MAX_VERTICES", "7").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = bin().args(["gen", "cube(3)"]).env("MONOPATH_MAX_VERTICES", "8").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn deterministic_and_read_only() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen(dir.path(), "prod(cube(2),simplex(1))");
    let before = std::fs::read(&p).unwrap();
    for cmd in [["analyze"].as_slice(), &["chow", "--oracle", "--simple"], &["poly", "--verify-main"]] {
        let mut args = cmd.to_vec();
        args.insert(1, p.to_str().unwrap());
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
    assert_eq!(std::fs::read(&p).unwrap(), before);
}

#[test]
fn verify_suites() {
    let out = run(&["verify", "--suite", "quick"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json_of(&out);
    assert_eq!(r["criteria"].as_array().unwrap().len(), 12);
    assert_eq!(r["pass"], Value::Bool(true));

    let dir = tempfile::tempdir().unwrap();
    let a = gen(dir.path(), "cube(3)");
    let b = gen(dir.path(), "ngon(6)");
    let out = run(&["verify", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}
