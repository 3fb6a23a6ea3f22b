use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_unrolling"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &[u8]) -> Output {
    feed(bin().args(args), input)
}

fn feed(cmd: &mut Command, input: &[u8]) -> Output {
    let mut child = cmd.stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn group_unroll_reedy_pipeline() {
    let z2 = run(&["zoo", "group", "Z2"]);
    assert_eq!(code(&z2), 0);
    let dr = run_stdin(&["unroll"], &z2.stdout);
    assert_eq!(code(&dr), 0, "{}", String::from_utf8_lossy(&dr.stderr));
    let reedy = run_stdin(&["check-reedy", "--strict", "--direct"], &dr.stdout);
    assert_eq!(code(&reedy), 0, "{}", stdout(&reedy));
    assert!(stdout(&reedy).contains("PASS  strict-reedy `D_R.reedy`"));
}

#[test]
fn unroll_writes_a_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("z3.txt");
    assert_eq!(code(&run(&["zoo", "group", "Z3", "--out", path(&input)])), 0);
    let out = dir.path().join("u");
    assert_eq!(code(&run(&["unroll", path(&input), "--out", path(&out)])), 0);
    let side: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("sidecar.json")).unwrap()).unwrap();
    assert_eq!(side["objects"].as_array().unwrap().len(), 3);
    assert_eq!(code(&run(&["check-reedy", path(&out.join("dr.txt"))])), 0);
}

#[test]
fn density_fixture_fails_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let fixture = dir.path().join("nd.txt");
    let witness = dir.path().join("w.txt");
    assert_eq!(code(&run(&["zoo", "fixture", "non-dense", "--out", path(&fixture)])), 0);
    let o = run(&["check-density", path(&fixture), "--witness", path(&witness)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("factorization-disconnected"));
    let w = std::fs::read_to_string(&witness).unwrap();
    assert!(w.starts_with("category witness"));
    assert_eq!(code(&run(&["check-cat", path(&witness)])), 0);
    assert_eq!(code(&run(&["check-density", path(&fixture), "--presentation", "fixture"])), 0);
}

#[test]
fn cofibering_fixture_fails() {
    let dir = tempfile::tempdir().unwrap();
    let fixture = dir.path().join("nc.txt");
    run(&["zoo", "fixture", "non-cofibering", "--out", path(&fixture)]);
    let o = run(&["check-cofibering", path(&fixture)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("fact-disconnected"));
}

#[test]
fn fibrancy_fixture_fails_and_kan_unit_is_iso() {
    let dir = tempfile::tempdir().unwrap();
    let fixture = dir.path().join("nf.txt");
    run(&["zoo", "fixture", "non-fibrant", "--out", path(&fixture)]);
    let o = run(&["tribe", "check-fibrant", path(&fixture), "--diagram", "x"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("relative-matching-not-isofibration: <g1>"));
    assert_eq!(code(&run(&["tribe", "kan", path(&fixture), "--diagram", "x"])), 0);
    assert_eq!(code(&run(&["tribe", "check-fibrant", path(&fixture), "--diagram", "y"])), 0);
    let fx = dir.path().join("fx.txt");
    let o = run(&["tribe", "factorize", path(&fixture), "--out", path(&fx)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS  composite equals the map"));
    assert!(std::fs::read_to_string(&fx).unwrap().contains("map second"));
}

#[test]
fn lifting_and_cubes() {
    let z2 = run(&["zoo", "group", "Z2"]);
    assert_eq!(code(&run_stdin(&["check-lifting", "-"], &z2.stdout)), 0);
    let cube = run(&["zoo", "cube", "--dim", "2", "--symmetries"]);
    assert_eq!(code(&cube), 0);
    assert_eq!(code(&run_stdin(&["check-reedy", "-"], &cube.stdout)), 0);
}

#[test]
fn verify_single_criterion() {
    let o = run(&["verify-paper", "--criterion", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("PASS  criterion 1"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&run(&["check-cat", "/nonexistent/input.txt"])), 2);
    assert_eq!(code(&run(&["zoo", "cube", "--dim", "4"])), 2);
    assert_eq!(code(&run(&["zoo", "group", "Q8x"])), 2);
    assert_eq!(code(&run(&["verify-paper", "--criterion", "12"])), 2);
    assert_eq!(code(&run(&["frobnicate"])), 2);
    let z2 = run(&["zoo", "group", "Z2"]);
    assert_eq!(code(&feed(bin().args(["unroll", "-"]).env("HOM_BOUND", "many"), &z2.stdout)), 2);
}

#[test]
fn malformed_input_is_a_failing_verdict() {
    let o = run_stdin(&["check-cat", "-"], b"category c\n  objects:\n    a\n");
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("parse error"));
}

#[test]
fn json_reports_parse() {
    let o = run(&["zoo", "group", "S3", "--format", "json", "--out", "/dev/null"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "unrolling-report/1");
    assert_eq!(v["passed"], true);
}

#[test]
fn output_is_deterministic() {
    let a = run(&["zoo", "group", "S3"]);
    let b = run(&["zoo", "group", "S3"]);
    assert_eq!(a.stdout, b.stdout);
    let da = run_stdin(&["unroll", "-"], &a.stdout);
    let db = run_stdin(&["unroll", "-"], &b.stdout);
    assert_eq!(da.stdout, db.stdout);
}
