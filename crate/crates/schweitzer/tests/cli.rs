use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

use schweitzer::core::shapes::{make_dot, make_square};
use schweitzer::core::DoubleComplex;
use schweitzer::format::emit_complex;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_schweitzer")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let r = run(&all);
    let v: Value = serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{e}: {}", r.stdout));
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", r.stdout, "JSON output is canonical");
    (r.code, v)
}

fn write_complex(dir: &Path, name: &str, a: &DoubleComplex) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, emit_complex(a)).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate() {
    let r = run(&["validate", "--builtin", "iwasawa"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("valid"));

    let dir = tempfile::tempdir().unwrap();
    let mut a = make_square(0, 0, 1).unwrap();
    let flipped = a.delbar(1, 0).neg();
    a.set_delbar(1, 0, flipped).unwrap();
    let bad = write_complex(dir.path(), "bad.json", &a);
    let r = run(&["validate", "--input", s(&bad)]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("invalid") && r.stdout.contains("at (0,0)"), "{}", r.stdout);
    assert_eq!(run(&["invariants", "--input", s(&bad)]).code, 2);

    let r = run(&["validate", "--input", "/no/such/file.json"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("/no/such/file.json"));

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{\"n\": 1, \"dims\": {\"0,0\": 1}, \"del\": [{\"from\": [0,0], \"matrix\": [[\"x\"]]}]}").unwrap();
    assert_eq!(run(&["validate", "--input", s(&garbage)]).code, 2);
    assert_eq!(run(&["validate"]).code, 2);
    assert_eq!(run(&["validate", "--builtin", "iwasawa", "--model", "x.json"]).code, 2);
}

#[test]
fn invariants() {
    let r = run(&["invariants", "--builtin", "torus(1)"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("Betti b_k: 1 2 1"));
    let (code, v) = json(&["invariants", "--builtin", "torus(1)"]);
    assert_eq!(code, 0);
    assert_eq!(v["betti"], serde_json::json!([1, 2, 1]));
    assert_eq!(v["h_dolbeault"], serde_json::json!([[1, 1], [1, 1]]));

    let (_, v) = json(&["invariants", "--builtin", "iwasawa"]);
    assert_eq!(v["frolicher_column"]["e_infinity"][0][1], 2);
    assert_eq!(v["betti"][1], 4);
    assert_eq!(v["h_bc"][0][1], 2);
    for key in ["n", "dims", "h_a", "chi_p", "frolicher_row", "fd", "grgr", "schweitzer"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["schweitzer"]["entries"].as_array().unwrap().len(), 25);
}

#[test]
fn schweitzer_table() {
    let r = run(&["schweitzer", "--builtin", "iwasawa", "--p", "0", "--q", "1"]);
    assert_eq!(r.code, 0);
    let row = r.stdout.lines().find(|l| l.contains("Bott-Chern")).unwrap();
    assert!(row.trim_start().starts_with("0 ") && row.contains("H_BC^{0,1} = 2"), "{row}");

    let (_, v) = json(&["schweitzer", "--builtin", "iwasawa", "--p", "0", "--q", "0"]);
    let ranks: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["s"].as_u64().unwrap()).collect();
    assert_eq!(ranks, vec![1, 4, 8, 10, 8, 4, 1, 0]);

    let dir = tempfile::tempdir().unwrap();
    let sq = write_complex(dir.path(), "sq.json", &make_square(0, 0, 2).unwrap());
    let (code, v) = json(&["schweitzer", "--input", s(&sq), "--p", "1", "--q", "1"]);
    assert_eq!(code, 0);
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["s"] == 0));
    assert_eq!(run(&["schweitzer", "--builtin", "torus(1)", "--p", "-1", "--q", "3"]).code, 0);
}

#[test]
fn dual_check() {
    let r = run(&["dual-check", "--builtin", "kodaira_thurston"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.contains("pairing: 96 pairings, 0 failures"));

    let dir = tempfile::tempdir().unwrap();
    let scrambled = dir.path().join("a.json");
    let out = run(&["scramble", "--n", "2", "--seed", "5"]);
    std::fs::write(&scrambled, out.stdout).unwrap();
    let (code, v) = json(&["dual-check", "--input", s(&scrambled)]);
    assert_eq!(code, 0);
    assert_eq!(v["pairing"], Value::Null);
    assert_eq!(v["passed"], true);

    let sq = write_complex(dir.path(), "sq.json", &make_square(0, 0, 1).unwrap());
    assert_eq!(run(&["dual-check", "--input", s(&sq)]).code, 0);
}

#[test]
fn index_check() {
    assert_eq!(run(&["index-check", "--builtin", "p1_synthetic"]).code, 0);
    let (code, v) = json(&["index-check", "--builtin", "torus(3)"]);
    assert_eq!(code, 0);
    assert!(v["euler"].as_array().unwrap().iter().all(|c| c["lhs"] == 0 && c["rhs"] == 0));

    let dir = tempfile::tempdir().unwrap();
    let dot = write_complex(dir.path(), "dot.json", &make_dot(0, 0, 1).unwrap());
    let r = run(&["index-check", "--input", s(&dot)]);
    assert_eq!(r.code, 0);
    let verdict = r.stdout.lines().last().unwrap();
    assert!(verdict.contains("non-dual") && verdict.contains("(1,1)"), "{verdict}");
    assert!(r.stdout.contains("(1,1)     1     0  FAIL"));
}

#[test]
fn zigzag() {
    let dir = tempfile::tempdir().unwrap();
    let sq = write_complex(dir.path(), "sq.json", &make_square(0, 0, 1).unwrap());
    let (code, v) = json(&["zigzag", "--input", s(&sq)]);
    assert_eq!(code, 0);
    assert_eq!(v["squares"], serde_json::json!([{"corner": [0, 0], "count": 1}]));
    assert_eq!(v["zigzags"], serde_json::json!([]));

    let (code, v) = json(&["zigzag", "--builtin", "iwasawa"]);
    assert_eq!(code, 0);
    assert_eq!(v["odd_by_degree"][1], 4);

    let doc = dir.path().join("scrambled.json");
    let truth = dir.path().join("truth.json");
    let out = run(&["scramble", "--n", "3", "--seed", "11", "--max-dim", "3", "--truth", s(&truth)]);
    assert_eq!(out.code, 0);
    std::fs::write(&doc, out.stdout).unwrap();
    let r = run(&["zigzag", "--input", s(&doc), "--expect", s(&truth)]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.contains("expected table: match"));

    // A report can serve as the expectation for another run.
    let report = dir.path().join("report.json");
    std::fs::write(&report, run(&["zigzag", "--input", s(&doc), "--format", "json"]).stdout).unwrap();
    assert_eq!(run(&["zigzag", "--input", s(&doc), "--expect", s(&report)]).code, 0);

    let wrong = dir.path().join("wrong.json");
    std::fs::write(&wrong, r#"{"n":3,"squares":[{"corner":[0,0],"count":1}]}"#).unwrap();
    let r = run(&["zigzag", "--input", s(&doc), "--expect", s(&wrong)]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("MISMATCH"));

    assert_eq!(run(&["zigzag", "--builtin", "torus(4)"]).code, 2);
}

#[test]
fn sweep() {
    let (code, v) = json(&["sweep", "--builtin", "iwasawa_family", "--t-values", "0,1/10,1/100,-1/10"]);
    assert_eq!(code, 0);
    assert_eq!(v["violations"], serde_json::json!([]));
    let drops = v["drops"].as_array().unwrap();
    assert!(drops.iter().any(|d| d["quantity"].as_str().unwrap().starts_with("s^")));

    let (code, v) = json(&["sweep", "--builtin", "torus(2)", "--t-values", "-1/3,0,5"]);
    assert_eq!(code, 0);
    assert_eq!(v["drops"], serde_json::json!([]));

    let r = run(&["sweep", "--builtin", "iwasawa_family", "--t-values", "1/10,1/100"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("must include 0"));
    assert_eq!(run(&["sweep", "--builtin", "p1_synthetic", "--t-values", "0"]).code, 2);
}

#[test]
fn symbol_check() {
    let a = run(&["symbol-check", "--n", "2", "--trials", "5", "--seed", "7"]);
    assert_eq!(a.code, 0);
    let b = run(&["symbol-check", "--n", "2", "--trials", "5", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(run(&["symbol-check", "--n", "0"]).code, 2);
    assert_eq!(run(&["symbol-check", "--n", "1", "--p", "1"]).code, 2);

    let (code, v) = json(&["symbol-check", "--n", "1", "--p", "1", "--q", "1", "--trials", "2"]);
    assert_eq!(code, 0);
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 4);
    let control = cases.iter().find(|c| c["kind"] == "zero-control").unwrap();
    assert_eq!(control["exact"], false);
    assert_eq!(control["failing_degree"], 0);
}

#[test]
fn models_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kt.json");
    std::fs::write(&path, r#"{"n":2,"equations":[{"d_omega":2,"terms11":[{"i":1,"jbar":1,"coeff":"1"}]}]}"#).unwrap();
    let (_, v) = json(&["invariants", "--model", s(&path)]);
    assert_eq!(v["betti"][1], 3);
    let (_, w) = json(&["invariants", "--input", s(&path)]);
    assert_eq!(v["betti"], w["betti"]);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n":2,"equations":[{"d_omega":1,"terms02":[{"ibar":1,"jbar":2,"coeff":"t"}]}]}"#).unwrap();
    assert_eq!(run(&["validate", "--model", s(&bad)]).code, 0);
    let r = run(&["validate", "--model", s(&bad), "--t", "1"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("integrable"));
}
