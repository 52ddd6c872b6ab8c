use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_combgenus"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("JSON report")
}

const ELLIPTIC5: &str =
    r#"{"field":{"kind":"Fp","p":10007},"curve":"y^2 = x^3 - x","elements":["1","x","y","x^2","x*y"]}"#;

#[test]
fn gamma_of_elliptic_instance() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("elliptic5.json");
    std::fs::write(&path, ELLIPTIC5).unwrap();
    let r = json(&run(&["gamma", "-i", path.to_str().unwrap()]));
    assert_eq!(r["dim_square"], 10);
    assert_eq!(r["gamma"], 1);
}

#[test]
fn stdin_instance() {
    let r = json(&run_stdin(&["gamma", "-i", "-"], ELLIPTIC5));
    assert_eq!(r["dim"], 5);
}

#[test]
fn rr_basis() {
    let r = json(&run(&["rr", "--curve", "y^2 = x^3 - x", "--divisor", "5*O"]));
    assert_eq!(r["result"]["basis"].as_array().unwrap().len(), 5);
    assert_eq!(r["result"]["dim"], 5);
}

#[test]
fn classify_hole_progression() {
    let r = json(&run(&["classify", "--field", "Q", "--curve", "rational", "1", "x^2", "x^3", "x^4"]));
    let c = &r["classification"];
    assert_eq!(c["form"]["type"], "Genus0TypeII");
    assert_eq!(c["form"]["alpha"], "0");
    assert_eq!(c["p_index"], 2);
}

#[test]
fn generated_instances_round_trip() {
    let gen = run(&["generate", "--kind", "rr", "--curve", "y^2 = x^3 - x", "-n", "6", "--seed", "1"]);
    let text = String::from_utf8(gen.stdout.clone()).unwrap();
    let again = run(&["generate", "--kind", "rr", "--curve", "y^2 = x^3 - x", "-n", "6", "--seed", "1"]);
    assert_eq!(gen.stdout, again.stdout);
    let first = run_stdin(&["classify", "-i", "-"], &text);
    let second = run_stdin(&["classify", "-i", "-"], &text);
    assert_eq!(first.stdout, second.stdout);
    let r = json(&first);
    assert_eq!(r["classification"]["genus"], 1);
    assert_eq!(r["classification"]["form"]["type"], "Genus1RR");
    // The echoed instance reproduces the computation.
    let echoed = serde_json::to_string(&r["instance"]).unwrap();
    assert_eq!(run_stdin(&["classify", "-i", "-"], &echoed).stdout, first.stdout);
}

#[test]
fn generate_with_truth() {
    let r = json(&run(&["generate", "--kind", "codim1", "-n", "5", "--seed", "2", "--truth"]));
    assert_eq!(r["truth"]["genus"], 0);
    assert_eq!(r["truth"]["codim"], 1);
    assert!(r["instance"]["elements"].is_array());
}

#[test]
fn lattice_csv_and_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("dims.csv");
    let out = dir.path().join("report.json");
    let o = run_stdin(
        &["lattice", "-i", "-", "--csv", csv.to_str().unwrap(), "--json", out.to_str().unwrap()],
        ELLIPTIC5,
    );
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let table = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(table.lines().last().unwrap(), "5,5,7,8,9,10");
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["lattice"]["p_index"], 2);
    assert_eq!(r["consistent"], true);
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(run(&["gamma", "--curve", "y^2 = x^2", "1"]).status.code(), Some(2));
    assert_eq!(run_stdin(&["gamma", "-i", "-"], "{not json").status.code(), Some(2));
    assert_eq!(run(&["gamma", "-i", "/nonexistent/instance.json"]).status.code(), Some(2));
    assert_eq!(run(&["rr", "--curve", "rational", "--divisor", "3*Q(1)"]).status.code(), Some(2));
    assert_eq!(run(&["gamma", "--field", "Fp:2", "--curve", "rational", "1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn quick_verify_passes() {
    let o = run(&["verify", "--quick", "--seed", "7"]);
    let r = json(&o);
    assert_eq!(r["failed"], 0);
    assert_eq!(r["passed"], 12);
    let log = String::from_utf8_lossy(&o.stderr);
    assert_eq!(log.lines().filter(|l| l.starts_with("PASS")).count(), 12);
}
