//! End-to-end runs of the `mixspec` binary: output, piping and exit codes.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn mixspec(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mixspec"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const TWO_PATH: &str = "E a b\nA a b\n";

#[test]
fn generated_complete_mixed_triangle_pipes_into_spectrum() {
    let generated = mixspec(&["gen", "KM", "3"], "");
    assert_eq!(generated.status.code(), Some(0));
    let out = mixspec(&["spectrum", "IL"], &stdout(&generated));
    assert_eq!(out.status.code(), Some(0));
    let groups: Vec<String> = stdout(&out).lines().filter(|l| !l.starts_with('#')).map(String::from).collect();
    assert_eq!(groups, ["6 2", "4 3", "0 1"]);
    assert!(stdout(&out).contains("tol_group = 1e-7"));
}

#[test]
fn single_vertex_laplacian_is_a_zero_block() {
    let out = mixspec(&["matrix", "IL"], "V x\n");
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0,0\n0,0\n");
}

#[test]
fn check_all_on_the_two_path_succeeds() {
    let out = mixspec(&["check", "--all"], TWO_PATH);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["violations"], 0);
    assert_eq!(report["seed"], 7);
    assert_eq!(report["graph"]["source"], "V a\nV b\nE a b\nA a b\n");
}

#[test]
fn check_single_bound_with_arguments() {
    let out = mixspec(&["check", "--bound", "N.dist", "--sets", "a;b", "--csv"], TWO_PATH);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("bound_id,applicable,holds,slack\nN.dist,"));
}

#[test]
fn parse_errors_exit_with_two_and_cite_the_line() {
    let out = mixspec(&["components"], "E a b\nX a b\n");
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(mixspec(&["spectrum", "XX"], "").status.code(), Some(2));
    assert_eq!(mixspec(&["frobnicate"], "").status.code(), Some(2));
    assert_eq!(mixspec(&["check", "--bound", "nope"], TWO_PATH).status.code(), Some(2));
}

#[test]
fn distances_by_name() {
    let out = mixspec(&["distance", "a", "b"], TWO_PATH);
    let d: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!((d["d1"].clone(), d["d3"].clone(), d["d"].clone()), (1.into(), 3.into(), 1.into()));
    let sets = mixspec(&["distance", "--sets", "a", "b"], TWO_PATH);
    assert_eq!(stdout(&sets).trim(), "1");
}

#[test]
fn random_graphs_are_seeded() {
    let one = mixspec(&["random", "6", "--simple", "--seed", "11"], "");
    let two = mixspec(&["random", "6", "--simple", "--seed", "11"], "");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
    let text = stdout(&one);
    assert!(text.lines().filter(|l| l.starts_with("V ")).count() == 6);
    assert!(mixspec(&["random", "0"], "").status.code() == Some(2));
}

#[test]
fn reports_are_reproducible_through_the_binary() {
    let graph = stdout(&mixspec(&["random", "5", "--seed", "4"], ""));
    let one = mixspec(&["report", "--matrices", "IL,IN"], &graph);
    let two = mixspec(&["report", "--matrices", "IL,IN"], &graph);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
    let report: serde_json::Value = serde_json::from_str(&stdout(&one)).unwrap();
    assert_eq!(report["matrices"].as_array().unwrap().len(), 2);
    assert_eq!(report["spectra"].as_array().unwrap().len(), 4);
}
