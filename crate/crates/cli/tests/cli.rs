use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_autlin")).args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_autlin"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn one_json(args: &[&str]) -> (i32, Value) {
    let out = run(args);
    let mut v = json_lines(&out);
    assert_eq!(v.len(), 1, "{}", String::from_utf8_lossy(&out.stdout));
    (out.status.code().unwrap(), v.remove(0))
}

#[test]
fn factor_recomposes_exactly() {
    let (code, v) = one_json(&["--format", "json", "factor", "(y, x + y^2)"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema"], "autlin/v1");
    assert_eq!(v["kind"], "factor");
    assert_eq!(v["input_sha256"], v["recomposed_sha256"]);
    assert_eq!(v["recomposition_equal"], true);
}

#[test]
fn exit_codes() {
    let (code, v) = one_json(&["--format", "json", "factor", "(x, x*y)"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "NotAnAutomorphism");

    let (code, v) = one_json(&["--format", "json", "factor", "(x, y +)"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "SyntaxError");

    assert_eq!(run(&["--field", "R", "invert", "(x, y)"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn rho_has_unit_determinant() {
    let (code, v) = one_json(&["--format", "json", "rho", "--N", "3", "--word", "[(d0, t^2)]"]);
    assert_eq!(code, 0);
    assert_eq!(v["dim"], 7);
    assert_eq!(v["det"], "1");
    let m = v["matrix"].as_array().unwrap();
    assert_eq!(m.len(), 7);
    assert!(m.iter().all(|row| row.as_array().unwrap().len() == 7));
}

#[test]
fn pingpong_is_reproducible() {
    let args = ["--format", "json", "--seed", "11", "rho", "--N", "3", "--pingpong", "20", "[(d0, t^2)]"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verdict_for_orthogonal_group() {
    let (code, v) = one_json(&["--format", "json", "verdict", "--S", "SO(x^2+y^2)"]);
    assert_eq!(code, 0);
    assert!(v.to_string().contains("LinearOverField"), "{v}");
}

#[test]
fn batch_input_from_stdin() {
    let out = run_stdin(&["--format", "json", "invert"], "# comment\n(y, x)\n\n(x + y^3, y)\n(x, x*y)\n");
    let v = json_lines(&out);
    assert_eq!(v.len(), 3);
    assert_eq!(v[0]["inverse"]["aut"], "(y, x)");
    assert_eq!(v[1]["verified"], true);
    assert!(v[2]["error"].is_object());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn printed_maps_parse_back() {
    let (_, v) = one_json(&["--format", "json", "compose", "(y, 2*x)", "(x, y + x^2)"]);
    let printed = v["aut"].as_str().unwrap().to_string();
    let (code, w) = one_json(&["--format", "json", "compose", &printed]);
    assert_eq!(code, 0);
    assert_eq!(w["aut"], printed.as_str());
}

#[test]
fn finite_group_verbs() {
    let (code, v) = one_json(&["--format", "json", "nilpotency", "--p", "2", "--r", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["class"], 3);
    assert_eq!(v["series"], serde_json::json!([64, 8, 2, 1]));
    let (code, _) = one_json(&["--format", "json", "sumprod", "--p", "3", "--r", "1"]);
    assert_eq!(code, 0);
    let (code, _) = one_json(&["--format", "json", "bs"]);
    assert_eq!(code, 0);
}
