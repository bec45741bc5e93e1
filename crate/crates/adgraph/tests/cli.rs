use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

const EXAMPLE: &str = "log(x1)+x1*x2-sin(x2)";

fn adgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adgraph"))
        .args(args)
        .output()
        .expect("run adgraph")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = adgraph(args);
    assert!(out.status.success(), "{}", stderr(&out));
    serde_json::from_str(&stdout(&out)).unwrap()
}

fn keys(v: &Value) -> Vec<&str> {
    v.as_object().unwrap().keys().map(String::as_str).collect()
}

#[test]
fn eval_prints_six_significant_digits() {
    let out = adgraph(&["eval", EXAMPLE, "--at", "x1=2,x2=5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "y = 11.6521\n");
    assert_eq!(stdout(&adgraph(&["eval", "x", "--at", "x=7"])), "y = 7\n");
    assert_eq!(
        stdout(&adgraph(&["eval", "-x^2", "--at", "x=3"])),
        "y = -9\n"
    );
    let out = adgraph(&["eval", "x1 * x2", "--at", "x1=2", "--at", "x2=3"]);
    assert_eq!(stdout(&out), "y = 6\n");
}

#[test]
fn exit_codes() {
    let cases: [(&[&str], i32, &str); 8] = [
        (
            &["eval", "x +", "--at", "x=1"],
            2,
            "parse error at offset 3",
        ),
        (&["eval", "x", "--at", "x"], 2, "invalid --at binding"),
        (&["eval", "x + y", "--at", "x=1"], 3, "unbound variable `y`"),
        (
            &["eval", "log(x)", "--at", "x=0"],
            4,
            "domain error: log of 0",
        ),
        (
            &["eval", "1 / (x - 1)", "--at", "x=1"],
            4,
            "domain error: division by 0",
        ),
        (
            &[
                "grad",
                EXAMPLE,
                "--at",
                "x1=2,x2=5",
                "--mode",
                "forward",
                "--wrt",
                "x3",
            ],
            5,
            "unknown variable `x3`",
        ),
        (
            &["trace", EXAMPLE, "--at", "x1=2,x2=5", "--mode", "forward"],
            5,
            "needs --wrt",
        ),
        (
            &["check", "x", "--at", "x=1", "--tolerance", "0"],
            2,
            "tolerance must be positive",
        ),
    ];
    for (args, code, message) in cases {
        let out = adgraph(args);
        assert_eq!(out.status.code(), Some(code), "{args:?}");
        assert!(stdout(&out).is_empty(), "{args:?}");
        assert!(stderr(&out).contains(message), "{args:?}: {}", stderr(&out));
    }
}

#[test]
fn grad_output() {
    let out = adgraph(&[
        "grad",
        EXAMPLE,
        "--at",
        "x1=2,x2=5",
        "--mode",
        "forward",
        "--wrt",
        "x1",
    ]);
    assert_eq!(stdout(&out), "dy/dx1 = 5.5\n");
    let out = adgraph(&["grad", EXAMPLE, "--at", "x1=2,x2=5", "--mode", "forward"]);
    assert_eq!(stdout(&out), "dy/dx1 = 5.5\ndy/dx2 = 1.71634\n");
    let out = adgraph(&["grad", EXAMPLE, "--at", "x1=2,x2=5", "--wrt", "nonexistent"]);
    assert_eq!(out.status.code(), Some(0), "reverse mode ignores --wrt");
    assert_eq!(stdout(&out), "dy/dx1 = 5.5\ndy/dx2 = 1.71634\n");
}

#[test]
fn json_schemas() {
    let v = json(&["eval", EXAMPLE, "--at", "x1=2,x2=5", "--json"]);
    assert_eq!(keys(&v), ["value"]);
    assert!((v["value"].as_f64().unwrap() - 11.652071455223084).abs() < 1e-15);

    for mode in ["forward", "reverse"] {
        let v = json(&[
            "grad",
            EXAMPLE,
            "--at",
            "x1=2,x2=5",
            "--mode",
            mode,
            "--json",
        ]);
        assert_eq!(keys(&v), ["value", "gradient", "mode"]);
        assert_eq!(keys(&v["gradient"]), ["x1", "x2"]);
        assert_eq!(v["mode"], mode);
        assert_eq!(v["gradient"]["x1"].as_f64(), Some(5.5));
        let x2 = v["gradient"]["x2"].as_f64().unwrap();
        assert!((x2 - (2.0 - 5f64.cos())).abs() < 1e-12);
    }
    let v = json(&["grad", "3", "--mode", "reverse", "--json"]);
    assert_eq!(
        v,
        serde_json::json!({"value": 3.0, "gradient": {}, "mode": "reverse"})
    );

    let v = json(&["trace", "x", "--at", "x=3", "--mode", "forward", "--json"]);
    assert_eq!(keys(&v), ["rows"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(keys(&rows[0]), ["name", "formula", "value"]);
    assert_eq!(
        rows[1],
        serde_json::json!({"name": "d(x)", "formula": "1", "value": 1.0})
    );

    let v = json(&["check", "x*x*x", "--at", "x=2", "--json"]);
    assert_eq!(keys(&v), ["pass", "tolerance", "variables"]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["tolerance"].as_f64(), Some(1e-5));
    let var = &v["variables"][0];
    assert_eq!(keys(var), ["name", "ad", "fd", "rel_error"]);
    assert_eq!(var["ad"].as_f64(), Some(12.0));
}

#[test]
fn trace_tables() {
    let out = adgraph(&[
        "trace",
        EXAMPLE,
        "--at",
        "x1=2,x2=5",
        "--mode",
        "forward",
        "--wrt",
        "x1",
        "--unicode",
    ]);
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> = text
        .lines()
        .map(|l| l.split('|').map(str::trim).collect())
        .collect();
    assert!(rows.contains(&vec!["v1", "log(x1)", "0.693"]));
    assert!(rows.contains(&vec!["v\u{307}4", "v\u{307}1 + v\u{307}2", "5.500"]));

    let out = adgraph(&["trace", EXAMPLE, "--at", "x1=2,x2=5", "--mode", "reverse"]);
    let text = stdout(&out);
    assert!(text
        .lines()
        .any(|l| l.contains("bar(v3) * cos(x2)") && l.ends_with("-0.284")));
    assert!(text.lines().last().unwrap().ends_with("5.500"));

    let out = adgraph(&["trace", "x", "--at", "x=3", "--mode", "forward"]);
    assert_eq!(stdout(&out).lines().count(), 2);
}

#[test]
fn check_pass_and_fail() {
    let out = adgraph(&["check", EXAMPLE, "--at", "x1=2,x2=5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("PASS (tolerance 1e-5)\n"));
    let out = adgraph(&["check", "x*x*x", "--at", "x=2"]);
    assert_eq!(out.status.code(), Some(0));
    let out = adgraph(&[
        "check",
        EXAMPLE,
        "--at",
        "x1=2,x2=5",
        "--tolerance",
        "1e-16",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn dot_export() {
    let first = stdout(&adgraph(&["dot", EXAMPLE, "--at", "x1=2,x2=5"]));
    let second = stdout(&adgraph(&["dot", EXAMPLE, "--at", "x1=2,x2=5"]));
    assert_eq!(first, second);
    assert_eq!(first.lines().filter(|l| l.contains("[label=")).count(), 7);
    assert_eq!(first.lines().filter(|l| l.contains(" -> ")).count(), 8);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sum.dot");
    let out = adgraph(&["dot", "x+x", "--at", "x=1", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
    let written = fs::read_to_string(&path).unwrap();
    assert_eq!(written.lines().filter(|l| l.contains("[label=")).count(), 2);
    let edges: Vec<&str> = written
        .lines()
        .filter(|l| l.contains(" -> "))
        .map(str::trim)
        .collect();
    assert_eq!(edges, ["n0 -> n1;", "n0 -> n1;"]);
}

#[test]
fn dot_write_failure() {
    let dir = tempfile::tempdir().unwrap();
    let out = adgraph(&[
        "dot",
        "x",
        "--at",
        "x=1",
        "-o",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(6));
    assert!(stderr(&out).contains("cannot write"));
    let missing = dir.path().join("no/such/dir.dot");
    let out = adgraph(&["dot", "x", "--at", "x=1", "-o", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(6));
}
