use qso4_core::io::{So4RepJson, TensorJson};
use qso4_core::{ExactRep, IrrepLabel};
use std::path::Path;
use std::process::{Command, Output};

fn qso4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qso4")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn path(dir: &tempfile::TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

#[test]
fn build_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let r = path(&dir, "r.json");
    let o = qso4(&["build", "--label", "classical:j=1/2,jp=1/2", "--out", &r]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("dim: 4"));
    let json: So4RepJson = serde_json::from_str(&std::fs::read_to_string(&r).unwrap()).unwrap();
    assert_eq!(json.dim, 4);
    assert_eq!(json.label, Some("classical:j=1/2,jp=1/2".parse().unwrap()));

    let o = qso4(&["verify", &r]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("relations (6)-(10): PASS (exact)"));

    // read -> write reproduces the file
    let again = path(&dir, "again.json");
    let rep: ExactRep = qso4_core::io::read_rep(Path::new(&r)).unwrap();
    qso4_core::io::write_rep(&rep, Path::new(&again)).unwrap();
    assert_eq!(std::fs::read_to_string(&r).unwrap(), std::fs::read_to_string(&again).unwrap());
}

#[test]
fn verify_reports_a_broken_rep() {
    let dir = tempfile::tempdir().unwrap();
    let r = path(&dir, "r.json");
    assert_eq!(code(&qso4(&["build", "--label", "classical:j=1,jp=0", "--out", &r])), 0);
    let mut json: So4RepJson = serde_json::from_str(&std::fs::read_to_string(&r).unwrap()).unwrap();
    json.i32[0][1] = "2".into();
    std::fs::write(&r, serde_json::to_string(&json).unwrap()).unwrap();
    let report = path(&dir, "report.json");
    let o = qso4(&["verify", &r, "--report", &report]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL"));
    let text = std::fs::read_to_string(&report).unwrap();
    assert!(text.contains("\"pass\": false"));
}

#[test]
fn casimir_spectrum_decompose() {
    let o = qso4(&["casimir", "--label", "nonclassical:j=3/2,jp=1,eps=+,-,+"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("closed form: MATCH"));

    let o = qso4(&["spectrum", "--label", "classical:j=1,jp=1/2"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("type: classical"));
    assert_eq!(out.lines().filter(|l| l.starts_with("weight")).count(), 6);

    let dir = tempfile::tempdir().unwrap();
    let d = path(&dir, "d.json");
    let o = qso4(&["decompose", "--label", "classical:j=1,jp=1/2", "--out", &d]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("component: classical:j=1,jp=1/2 (dim 6)"));
    assert!(std::fs::read_to_string(&d).unwrap().contains("change_of_basis"));
}

#[test]
fn tensor_decomposes() {
    let dir = tempfile::tempdir().unwrap();
    let t = path(&dir, "t.json");
    let o = qso4(&["tensor", "classical:j=1/2,jp=1/2", "classical:j=1/2,jp=1/2", "--decompose", "--out", &t]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("dims: 1,3,3,9"));
    let json: TensorJson = serde_json::from_str(&std::fs::read_to_string(&t).unwrap()).unwrap();
    assert_eq!(json.rep.dim, 16);
    let labels: Vec<IrrepLabel> = ["classical:j=0,jp=0", "classical:j=0,jp=1", "classical:j=1,jp=0", "classical:j=1,jp=1"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    assert_eq!(json.decomposition, Some(labels));
}

#[test]
fn phi_admissible_and_excluded() {
    let o = qso4(&["phi", "--l", "1/2", "--lp", "1", "--eps", "-i", "--epsp", "+1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("dim: 6"));
    let o = qso4(&["phi", "--l", "1/2", "--lp", "1/2", "--eps", "-i", "--epsp", "+1"]);
    assert_eq!(code(&o), 1);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&qso4(&["build", "--label", "classical:j=1/3,jp=0"])), 2);
    assert_eq!(code(&qso4(&["verify", "/nonexistent/r.json"])), 2);
    assert_eq!(code(&qso4(&["--field", "numeric", "build", "--label", "classical:j=0,jp=0"])), 2);
    assert_eq!(code(&qso4(&["--field", "numeric", "--q", "-1", "build", "--label", "classical:j=0,jp=0"])), 2);
    assert_eq!(code(&qso4(&["selfcheck", "12"])), 2);
}

#[test]
fn numeric_field() {
    let o = qso4(&["--field", "numeric", "--q", "0.7", "verify", "--label", "classical:j=1,jp=1/2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("PASS (numeric)"));
}

#[test]
fn selfcheck_subset() {
    let o = qso4(&["selfcheck", "2", "8"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("criterion 2: PASS"));
    assert!(out.contains("criterion 8: PASS"));
}
