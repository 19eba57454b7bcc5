use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn e36(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_e36")).args(args).output().expect("run e36")
}

fn e36_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_e36"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("run e36");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const D1P_X1SQ: &str = r#"{"context":{"family":"p","p_or_q":2,"r":null,"theta":null},
  "terms":[{"dhat":[0,0,0],"dminus":[],"dplus":[1],"v_exp":[2,0,0],"t_j":null,"coeff":"1"}]}"#;

const D1P_X2SQ: &str = r#"{"context":{"family":"p","p_or_q":2,"r":null,"theta":null},
  "terms":[{"dhat":[0,0,0],"dminus":[],"dplus":[1],"v_exp":[0,2,0],"t_j":null,"coeff":"1"}]}"#;

#[test]
fn check_relations_passes() {
    let o = e36(&["check-relations"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("f0: 2/2 OK"));
    assert!(s.contains("abcd products: 9/9 OK"));
    assert!(!s.contains("FAIL"));
    let v = e36(&["check-relations", "--verbose"]);
    assert!(stdout(&v).contains("[ok] f0       [e0, f0] = h0"));
}

#[test]
fn flipped_epsilon_fails() {
    let o = e36(&["check-relations", "--flip-epsilon"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL [e0minus, f0] = -f2 (expected f2)"));
}

#[test]
fn structure_constants_export() {
    let o = e36(&["export-structure-constants"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let entries = v["entries"].as_array().unwrap();
    let e = entries.iter().find(|e| e["left"] == "e0" && e["right"] == "dplus1").unwrap();
    assert!(!e["result"].as_array().unwrap().is_empty());
    assert_eq!(o.stdout, e36(&["export-structure-constants"]).stdout);
}

#[test]
fn apply_operators() {
    let o = e36_stdin(&["apply", "e0minus", "-", "--format", "text"], D1P_X2SQ);
    assert_eq!(o.status.code(), Some(0));
    // [e0⁻, d⁺₁] = f₂ and f₂x₂² = 2x₂x₃
    assert_eq!(stdout(&o).trim(), "2 x₂x₃");
    let o = e36_stdin(&["apply", "e0minus", "-", "--format", "text"], D1P_X1SQ);
    assert_eq!(stdout(&o).trim(), "0");
    let o = e36_stdin(&["apply", "D3", "-", "--format", "text"], D1P_X1SQ);
    assert_eq!(stdout(&o).trim(), "∂̂₃d⁺₁x₁²");
    let o = e36_stdin(&["apply", "e1", "-"], D1P_X1SQ);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["terms"].as_array().unwrap().is_empty());
}

#[test]
fn apply_errors() {
    assert_eq!(e36_stdin(&["apply", "bogus", "-"], D1P_X1SQ).status.code(), Some(2));
    assert_eq!(e36_stdin(&["apply", "e0", "-"], "{").status.code(), Some(2));
    assert_eq!(e36(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn render_styles() {
    let o = e36_stdin(&["render", "-"], D1P_X1SQ);
    assert_eq!(stdout(&o).trim(), "d⁺₁x₁²");
    let o = e36_stdin(&["render", "-", "--style", "plain"], D1P_X1SQ);
    assert_eq!(stdout(&o).trim(), "dp1 x1^2");
    let zero = r#"{"context":{"family":"p","p_or_q":0,"r":null,"theta":null},"terms":[]}"#;
    assert_eq!(stdout(&e36_stdin(&["render", "-"], zero)).trim(), "0");
}

#[test]
fn singular_verify_exit_codes() {
    let o = e36(&["singular", "verify", "--case", "1b", "--p", "1", "--r", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("θ=6"));
    let o = e36(&["singular", "verify", "--case", "1b", "--p", "1", "--r", "2", "--theta", "5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("e0 ≠ 0: x₁ · z₊z₋[5]"));
    assert_eq!(e36(&["singular", "verify", "--case", "4", "--r", "2"]).status.code(), Some(2));
    assert_eq!(e36(&["singular", "verify", "--case", "12"]).status.code(), Some(2));
}

#[test]
fn singular_verify_case_6_reports_theta() {
    let o = e36(&["singular", "verify", "--case", "6", "--r", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["printed_theta"], "0/1");
    assert_eq!(v["verified_theta"], "2/1");
    assert_eq!(v["proof_ratio"], "-2/1");
}

#[test]
fn case_3_renders() {
    let o = e36(&["singular", "verify", "--case", "3", "--r", "2", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let el = serde_json::to_string(&v["vector"]).unwrap();
    assert_eq!(stdout(&e36_stdin(&["render", "-"], &el)).trim(), "d⁺₁₂₃ · z₊²[−2]");
}

#[test]
fn singular_search() {
    let o = e36(&["singular", "search", "--family", "q", "--param", "1", "--r", "0", "--udeg-max", "5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let cases: Vec<(&str, &str)> =
        v["hits"].as_array().unwrap().iter().map(|h| (h["case"].as_str().unwrap(), h["theta"].as_str().unwrap())).collect();
    assert_eq!(cases, vec![("7", "-2"), ("11", "0")]);
    assert_eq!(v["complete"], true);
    assert_eq!(o.stdout, e36(&["singular", "search", "--family", "q", "--param", "1", "--r", "0", "--udeg-max", "5", "--format", "json"]).stdout);
}

#[test]
fn classify_reports() {
    let o = e36(&["classify", "--family", "p", "--param", "1", "--sdeg-max", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let o = e36(&["classify", "--family", "q", "--param", "2", "--kind", "semi", "--sdeg-max", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["all_match"], true);
    let o = e36(&["highest", "--family", "q", "--param", "1"]);
    assert_eq!(o.status.code(), Some(0));
}
