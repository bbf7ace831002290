use std::process::{Command, Output};

use serde_json::Value;

fn qzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qzeta")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn monomial_prints_measure_example() {
    let o = qzeta(&["monomial", "--group", "(2;1,1)", "--N", "0,0", "--nu", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "L^-2 * (1 + L)\n");
}

#[test]
fn tetra_stringy_matches_class_count() {
    let o = qzeta(&["tetra", "--d", "3", "--q", "2", "--stringy"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l == "11"));
    assert!(out.lines().any(|l| l == "conjugacy classes: 11 (match)"));
}

#[test]
fn tetra_non_small_is_reduced_with_notice() {
    let o = qzeta(&["tetra", "--d", "5", "--q", "2", "--euler"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("notice: G_{5,2} is not small"));
    assert!(out.contains("topological: (8*s^2 + 16*s + 9) / (3 * (s + 1)^3)"));
}

#[test]
fn hj_cross_check() {
    let o = qzeta(&["hj", "--d", "7", "--a", "1", "--b", "3", "--N", "1,1", "--nu", "1,1", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("cross-check vs quotient formula: EQUAL"));
    assert!(stdout(&o).contains("self-intersections: -(3, 2, 2)"));
}

#[test]
fn yomdin_monodromy_report() {
    let o = qzeta(&["yomdin", "--m", "3", "--k", "1", "--p", "2", "--q", "3", "--a", "2", "--monodromy", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["monodromy"]["degree"], 10);
    assert_eq!(v["monodromy"]["milnor"], 10);
    assert_eq!(v["monodromy"]["pole_checks"][0]["eigenvalue"], true);
}

#[test]
fn group_report() {
    let o = qzeta(&["group", "--group", "(4;1,2)"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("small: false"));
    assert!(out.contains("small reduction: (2; 1,1)"));
    assert!(out.contains("gorenstein measure at origin: L^-2 + L^-1"));
}

#[test]
fn latex_and_series_output() {
    let o = qzeta(&["monomial", "--group", "(1;0)", "--N", "1", "--nu", "1", "--latex", "--euler"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\\frac"));
    let o = qzeta(&["monomial", "--group", "(1;0)", "--N", "1", "--nu", "1", "--series", "3", "--eval-L", "2"]);
    let out = stdout(&o);
    assert!(out.contains("coefficients at L = 2:"));
    assert!(out.contains("  T^1: 1/4"));
    assert!(out.contains("  T^3: 1/16"));
}

#[test]
fn symbols_need_values_for_evaluation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.strata");
    std::fs::write(
        &path,
        "dimension = 1\ngindex = 1\nsymbol C\nstratum { class = [C] - 1; N = [1]; nu = [1]; group = (1; 0) }\n",
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let o = qzeta(&["strata", p, "--series", "1", "--eval-L", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let o = qzeta(&["strata", p, "--series", "1", "--eval-L", "2", "--sym", "C=5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("  T^1: 1\n"));
    let o = qzeta(&["strata", p, "--euler"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("[C]"));
}

#[test]
fn exit_statuses() {
    assert_eq!(qzeta(&["--help"]).status.code(), Some(0));
    assert_eq!(qzeta(&["monomial"]).status.code(), Some(2));
    assert_eq!(qzeta(&["nonsense"]).status.code(), Some(2));
    assert_eq!(qzeta(&["tetra", "--d", "6", "--q", "2"]).status.code(), Some(1));
    assert_eq!(qzeta(&["strata", "/nonexistent/file"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.strata");
    std::fs::write(&path, "dimension = 2\ngindex = 1\nstratum { class = 1 + ; }\n").unwrap();
    let o = qzeta(&["strata", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error at 3:"));
}

#[test]
fn non_small_needs_override() {
    let args = ["monomial", "--group", "(4;1,2)", "--N", "1,1", "--nu", "1,1"];
    assert_eq!(qzeta(&args).status.code(), Some(1));
    let mut with = args.to_vec();
    with.push("--allow-nonsmall");
    let o = qzeta(&with);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("notice: (4; 1,2) is not small"));
}
