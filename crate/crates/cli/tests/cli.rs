use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn motivic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_motivic"))
        .args(args)
        .env_remove("MOTIVIC_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = motivic(&full);
    (o.status.code().unwrap(), serde_json::from_str(&stdout(&o)).expect("stdout is JSON"))
}

fn assert_record_shape(v: &Value) {
    let obj = v.as_object().expect("record is an object");
    let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "input", "result", "status", "diagnostics"]);
    let status = v["status"].as_str().unwrap();
    assert!(status == "ok" || status == "error");
    if status == "error" {
        assert!(!v["diagnostics"].as_array().unwrap().is_empty());
    }
}

#[test]
fn normalize_golden() {
    let o = motivic(&["normalize", "blowup(P(3); 8*pt, codim=3)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "L^3 + 9*L^2 + 9*L + 1\n");
    assert!(stderr(&o).is_empty());
    let o = motivic(&["normalize", "atom(\"C\", dim=1) * A(1) + 8*A(1)"]);
    assert_eq!(stdout(&o), "8*L + L*C\n");
}

#[test]
fn equiv_golden() {
    let (code, v) = json(&["equiv", "P(1)", "P(2)"]);
    assert_eq!(code, 0);
    assert_record_shape(&v);
    assert_eq!(v["result"]["verdict"], false);
    assert_eq!(v["result"]["difference"]["text"], "-L^2");
    let o = motivic(&["equiv", "P(2)", "P(1) + A(2)"]);
    assert!(stdout(&o).starts_with("verdict: true\ndifference: 0\n"));
}

#[test]
fn verify_golden() {
    let (code, v) = json(&["verify", "blowup(P(3); pt, codim=3)", "--primes", "2,3,5,7"]);
    assert_eq!(code, 0);
    assert_record_shape(&v);
    let counts: Vec<u64> = v["result"]["samples"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["count"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, [21, 52, 186, 456]);
    assert_eq!(v["result"]["fitted"]["text"], "L^3 + 2*L^2 + 2*L + 1");
    assert_eq!(v["result"]["verdict"], "MATCH");
}

#[test]
fn rational_and_modl() {
    let o = motivic(&["rational", "blowup(P(3); 8*pt)", "--dim", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("witness: 8*L + 8\n"));
    let o = motivic(&["rational", "P(1) * P(1) + pt", "--dim", "2"]);
    assert!(stdout(&o).contains("witness: none\n"));
    let o = motivic(&["modl", "blowup(P(3); 8*pt)"]);
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn demo_golden() {
    let (code, v) = json(&["demo", "lesieutre", "--points", "8"]);
    assert_eq!(code, 0);
    assert_record_shape(&v);
    assert_eq!(v["result"]["class"]["text"], "L^3 + 9*L^2 + 9*L + 1");
    assert_eq!(v["result"]["equal_across_configurations"], true);
    let (_, v) = json(&["demo", "lesieutre", "--points", "1"]);
    assert_eq!(v["result"]["class"]["text"], "L^3 + 2*L^2 + 2*L + 1");
    let o = motivic(&["demo", "lesieutre", "--points", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!stderr(&o).is_empty());
}

#[test]
fn count_and_budget() {
    let (code, v) = json(&["count", "blowup(P(3); 8*pt)", "--p", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"], serde_json::json!({"q": 3, "count": 136}));
    let o = motivic(&["--budget", "10", "count", "P(3)", "--p", "5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("budget"));
    let o = Command::new(env!("CARGO_BIN_EXE_motivic"))
        .args(["count", "P(3)", "--p", "5"])
        .env("MOTIVIC_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn count_problem_file() {
    let path = data("one_point.json");
    let (code, v) = json(&["count-problem", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], 186);
}

#[test]
fn scripts() {
    let path = data("lesieutre.mot");
    let o = motivic(&["run", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("> normalize blowup(P(3); 8*pt, codim=3)\nL^3 + 9*L^2 + 9*L + 1\n"), "{text}");
    assert!(text.contains("> count blowup(P(3); 8*pt, codim=3), p=3\nq: 3\ncount: 136\n"));
    let (_, v) = json(&["run", path.to_str().unwrap()]);
    assert_record_shape(&v);
    for rec in v["result"].as_array().unwrap() {
        assert_record_shape(rec);
    }

    let bad = data("bad.mot");
    let o = motivic(&["run", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.mot:4:1:"), "{}", stderr(&o));
    let o = motivic(&["run", "/nonexistent/file.mot"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!stderr(&o).is_empty());
}

#[test]
fn errors_go_to_stderr_with_codes() {
    for (args, code) in [
        (&["normalize", "P(1) + L"][..], 2),
        (&["normalize", "blowup(P(3); P(1))"][..], 2),
        (&["count", "P(1)", "--p", "4"][..], 1),
        (&["verify", "P(3)", "--primes", "2,3"][..], 1),
        (&["count", "fib(P(1); P(1))", "--p", "2"][..], 3),
        (&["frobnicate"][..], 1),
        (&[][..], 1),
    ] {
        let o = motivic(args);
        assert_eq!(o.status.code(), Some(code), "{args:?}");
        assert!(!stderr(&o).trim().is_empty(), "{args:?}");
    }
    let (code, v) = json(&["normalize", "P(1) +"]);
    assert_eq!(code, 2);
    assert_record_shape(&v);
    assert!(v["diagnostics"][0].as_str().unwrap().contains("1:7"));
}

#[test]
fn output_is_deterministic() {
    let args = ["--json", "--seed", "1", "demo", "lesieutre"];
    let a = motivic(&args);
    let b = motivic(&["--json", "--seed", "2", "demo", "lesieutre"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, motivic(&args).stdout);
}
