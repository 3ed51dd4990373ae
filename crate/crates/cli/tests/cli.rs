use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_blockcalc")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf8"))
}

fn json(args: &[&str]) -> Value {
    let (code, out) = run(args);
    assert_eq!(code, 0, "{args:?}");
    serde_json::from_str(&out).expect("json output")
}

#[test]
fn zigzag_ext1() {
    assert_eq!(json(&["zigzag", "ext1", "L(0)", "L(1)"])["dim"], 1);
    assert_eq!(json(&["zigzag", "--window", "-6..6", "ext1", "L(0)", "L(2)"])["dim"], 0);
    assert_eq!(json(&["zigzag", "exts", "L(0)", "L(2)", "2"])["dim"], 1);
}

#[test]
fn zigzag_loewy_dot() {
    let (code, out) = run(&["zigzag", "loewy", "P(0)"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph"));
    assert_eq!(out.matches("->").count(), 4);
}

#[test]
fn affine_commands() {
    let census = json(&["affine", "--u", "3", "--v", "2", "blocks"]);
    assert_eq!(census["atypical_blocks"].as_array().unwrap().len(), 4);
    assert_eq!(census["violations"].as_array().unwrap().len(), 0);
    let chain = json(&["affine", "--u", "3", "--v", "2", "chain", "--r", "1", "--n", "-1..1"]);
    assert_eq!(chain["chain"].as_array().unwrap().len(), 3);
    let e = json(&["affine", "--u", "3", "--v", "2", "extpair", "D+(1,1,0)", "D+(1,1,1)"]);
    assert!(e["dim"].as_u64().unwrap() <= 1);
    assert_eq!(json(&["affine", "--u", "5", "--v", "3", "delta-check"])["holds"], true);
}

#[test]
fn qg_ext_table() {
    let t = json(&["qg", "--r", "2", "--window", "2"]);
    for e in t["ext1"].as_array().unwrap() {
        let (n, m) = (e["n"].as_i64().unwrap(), e["m"].as_i64().unwrap());
        assert_eq!(e["dim"].as_u64().unwrap(), u64::from((n - m).abs() == 1), "{n} {m}");
    }
}

#[test]
fn verify_reports_no_mismatches() {
    let rep = json(&["verify", "--suite", "zigzag", "--window", "6", "--json"]);
    assert_eq!(rep["suite"], "zigzag");
    assert!(rep["mismatches"].as_array().unwrap().is_empty());
    assert!(rep["checks"].as_u64().unwrap() > 0);
}

#[test]
fn bad_input_fails() {
    assert_ne!(run(&["zigzag", "ext1", "L(0)", "Q(1)"]).0, 0);
    assert_ne!(run(&["affine", "--u", "4", "--v", "2", "blocks"]).0, 0);
}
