use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mextremal"))
}

fn examples_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas/v1/examples")
}

/// Runs `verb` on `input`, returning the exit code and the parsed report.
fn run(dir: &TempDir, verb: &str, input: &str, extra: &[&str]) -> (i32, Option<Value>) {
    let inp = dir.path().join(format!("{verb}.in.json"));
    let out = dir.path().join(format!("{verb}.out.json"));
    let _ = fs::remove_file(&out);
    fs::write(&inp, input).unwrap();
    let status = bin()
        .arg(verb)
        .arg("--input")
        .arg(&inp)
        .arg("--output")
        .arg(&out)
        .args(extra)
        .status()
        .unwrap();
    let report = fs::read_to_string(&out).ok().map(|s| serde_json::from_str(&s).unwrap());
    (status.code().unwrap(), report)
}

#[test]
fn certify_l1_squared_instance() {
    let dir = TempDir::new().unwrap();
    let (code, rep) = run(&dir, "certify", r#"{"kind": "l1_squared", "m": 4, "a": 0.3}"#, &[]);
    let rep = rep.unwrap();
    assert_eq!(code, 0);
    assert_eq!(rep["status"], "success");
    assert_eq!(rep["result"]["verdict"], "certified");
    assert_eq!(rep["result"]["m"], 4);
    assert!(rep["result"]["residual_composition"].as_f64().unwrap() <= 1e-9);
    assert_eq!(rep["schema_version"], "1");
    assert_eq!(rep["policy"]["boundary_samples"], 100_000);
}

#[test]
fn sn_non_member_exits_two_with_reason() {
    let dir = TempDir::new().unwrap();
    let (code, rep) = run(&dir, "sn", r#"{"p": [0.5, 1.5]}"#, &[]);
    assert_eq!(code, 2);
    let rep = rep.unwrap();
    assert_eq!(rep["result"]["decision"]["member"], false);
    assert!(rep["result"]["decision"]["explanation"].as_str().unwrap().contains("2·min < max"));
}

#[test]
fn pick_infeasible_data_exits_two() {
    let dir = TempDir::new().unwrap();
    let input = r#"{"nodes": [[0, 0], [0.5, 0]], "values": [[0, 0], [0.9, 0]]}"#;
    let (code, rep) = run(&dir, "pick", input, &[]);
    assert_eq!(code, 2);
    assert_eq!(rep.unwrap()["result"]["verdict"]["class"]["tag"], "indefinite");
    let (code, rep) = run(&dir, "schur", input, &[]);
    assert_eq!(code, 2);
    assert!(rep.unwrap()["result"]["infeasible"].is_string());
}

#[test]
fn falsifier_unknown_exits_three() {
    let dir = TempDir::new().unwrap();
    // (λ, 0) is extremal in the polydisc for any two nodes.
    let input = r#"{
        "map": {"components": [{"op": "var"}, {"op": "const", "value": [0, 0]}]},
        "domain": {"type": "polydisc", "n": 2},
        "nodes": [[0, 0], [0.4, 0.1]],
        "budget": {"restarts": 2, "sweeps": 10}
    }"#;
    let (code, rep) = run(&dir, "falsify", input, &["--seed", "9"]);
    assert_eq!(code, 3);
    let rep = rep.unwrap();
    assert_eq!(rep["seed"], 9);
    assert_eq!(rep["result"]["budget"]["seed"], 9);
    assert_eq!(rep["result"]["outcome"]["outcome"], "unknown");
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let input = r#"{"kind": "half_ellipsoid", "m": 3, "a": 0.4}"#;
    let args = ["--seed", "17", "--samples", "2000"];
    run(&dir, "certify", input, &args);
    let first = fs::read(dir.path().join("certify.out.json")).unwrap();
    run(&dir, "certify", input, &args);
    let second = fs::read(dir.path().join("certify.out.json")).unwrap();
    assert_eq!(first, second);
}

#[test]
fn profile_writes_csv_beside_report() {
    let dir = TempDir::new().unwrap();
    let input = fs::read_to_string(examples_dir().join("profile.json")).unwrap();
    let (code, rep) = run(&dir, "profile", &input, &[]);
    assert_eq!(code, 0);
    assert_eq!(rep.unwrap()["result"]["csv"], "profile.out.csv");
    let csv = fs::read_to_string(dir.path().join("profile.out.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("zeta_re,zeta_im,r,defect"));
    assert_eq!(lines.count(), 16 * 3);
}

#[test]
fn malformed_input_exits_one_without_report() {
    let dir = TempDir::new().unwrap();
    let (code, rep) = run(&dir, "sn", r#"{"p": [1.0], "q": 2}"#, &[]);
    assert_eq!((code, rep.is_none()), (1, true));
    let (code, rep) = run(&dir, "pick", r#"{"nodes": [[0, 0]], "values": [[2, 0]]}"#, &[]);
    assert_eq!((code, rep.is_none()), (1, true));
    let (code, _) = run(&dir, "sn", "not json", &[]);
    assert_eq!(code, 1);
    let (code, _) = run(&dir, "sn", r#"{"p": [1.0]}"#, &["--tol", "2"]);
    assert_eq!(code, 1);
}

#[test]
fn unknown_verb_is_an_error() {
    let out = bin().args(["bogus", "--input", "x.json"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn every_schema_example_runs() {
    let dir = TempDir::new().unwrap();
    let mut seen = 0;
    for entry in fs::read_dir(examples_dir()).unwrap() {
        let path = entry.unwrap().path();
        let stem = path.file_stem().unwrap().to_str().unwrap().to_owned();
        let verb = stem.split('_').next().unwrap();
        let input = fs::read_to_string(&path).unwrap();
        let (code, rep) = run(&dir, verb, &input, &[]);
        assert_ne!(code, 1, "{stem} failed");
        let rep = rep.unwrap();
        assert_eq!(rep["verb"], verb);
        assert_eq!(rep["input"], serde_json::from_str::<Value>(&input).unwrap());
        seen += 1;
    }
    assert!(seen >= 9);
}
