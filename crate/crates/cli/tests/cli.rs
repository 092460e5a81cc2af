use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curveballs")).current_dir(dir).args(args).output().expect("binary runs")
}

fn records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).expect("json line")).collect()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn segments(dir: &Path) {
    write(dir, "a.jsonl", "{\"id\":\"a\",\"points\":[[0,0],[1,0]]}\n");
    write(dir, "b.jsonl", "{\"id\":\"b\",\"points\":[[0,1],[1,1]]}\n");
}

#[test]
fn dist_decision() {
    let dir = tempfile::tempdir().unwrap();
    segments(dir.path());
    let out = run(dir.path(), &["dist", "--measure", "frechet", "--decide", "--r", "1.0", "a.jsonl", "b.jsonl"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let recs = records(&out);
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["decision"], Value::Bool(true));
    assert_eq!(recs[0]["config"]["radius"], 1.0);
    assert_eq!(recs[0]["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(recs[0]["rng"], "chacha8");

    let out = run(dir.path(), &["dist", "--measure", "frechet", "--decide", "--r", "0.99", "a.jsonl", "b.jsonl"]);
    assert_eq!(records(&out)[0]["decision"], Value::Bool(false));
    let out = run(dir.path(), &["dist", "--measure", "discrete-frechet", "a.jsonl", "b.jsonl"]);
    assert_eq!(records(&out)[0]["distance"], 1.0);
}

#[test]
fn sample_size_matches_formula() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["sample-size", "--eps", "0.1", "--delta", "0.05", "--nu", "10"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(records(&out)[0]["n"], 650);
}

#[test]
fn shatter_circle() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["shatter", "--construction", "circle", "--k", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &records(&out)[0];
    assert_eq!(r["largest_shattered"], 6);
    assert_eq!(r["distinct_subsets"], 64);
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    segments(dir.path());
    assert_eq!(run(dir.path(), &["bogus"]).status.code(), Some(1));
    assert_eq!(run(dir.path(), &["dist", "--frobnicate", "a.jsonl", "b.jsonl"]).status.code(), Some(1));
    assert_eq!(run(dir.path(), &["dist", "--measure", "nope", "a.jsonl", "b.jsonl"]).status.code(), Some(1));
    assert_eq!(run(dir.path(), &["dist", "--decide", "a.jsonl", "b.jsonl"]).status.code(), Some(1));
    assert_eq!(run(dir.path(), &["sample-size", "--eps", "0.1"]).status.code(), Some(1));
    assert_eq!(run(dir.path(), &["--help"]).status.code(), Some(0));
    assert_eq!(run(dir.path(), &["--version"]).status.code(), Some(0));
}

#[test]
fn data_errors_exit_two_without_partial_output() {
    let dir = tempfile::tempdir().unwrap();
    segments(dir.path());
    write(dir.path(), "mixed.jsonl", "{\"id\":\"p\",\"points\":[[0,0]]}\n{\"id\":\"q\",\"points\":[[0,0,0]]}\n");
    let out = run(dir.path(), &["query", "--center", "a.jsonl", "--r", "1", "mixed.jsonl", "-o", "res.jsonl"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2") && err.contains("\"q\""), "{err}");
    assert!(!dir.path().join("res.jsonl").exists());

    write(dir.path(), "res.jsonl", "previous\n");
    let out = run(dir.path(), &["dist", "a.jsonl", "missing.jsonl", "-o", "res.jsonl"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(fs::read_to_string(dir.path().join("res.jsonl")).unwrap(), "previous\n");
}

#[test]
fn generated_data_round_trips_and_reruns_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    segments(dir.path());
    let out = run(dir.path(), &["gen", "--kind", "random_walk", "--n", "200", "--m", "4", "--seed", "3", "-o", "walks.jsonl"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(records(&out)[0]["curves"], 200);
    let text = fs::read_to_string(dir.path().join("walks.jsonl")).unwrap();
    assert_eq!(text.lines().count(), 200);
    let again = run(dir.path(), &["gen", "--kind", "random_walk", "--n", "200", "--m", "4", "--seed", "3"]);
    assert_eq!(String::from_utf8(again.stdout).unwrap(), text);

    let args = ["approx-query", "--center", "a.jsonl", "--r", "2", "--eps", "0.3", "--delta", "0.1", "--nu", "2", "--seed", "5", "walks.jsonl"];
    let first = run(dir.path(), &args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, run(dir.path(), &args).stdout);
    let rec = &records(&first)[0];
    assert_eq!(rec["sample_size"], 24);

    let exact = run(dir.path(), &["query", "--center", "a.jsonl", "--r", "2", "walks.jsonl"]);
    let count = records(&exact)[0]["count"].as_u64().unwrap();
    assert!(count <= 200);
}

#[test]
fn config_file_below_flags() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "cfg.json", r#"{"epsilon": 0.5, "delta": 0.05, "nu": 10, "C": 1.0}"#);
    let out = run(dir.path(), &["sample-size", "--config", "cfg.json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &records(&out)[0];
    assert_eq!(r["config"]["epsilon"], 0.5);
    assert_eq!(r["n"], (4.0f64 * (10.0 + 20f64.ln())).ceil() as u64);
    let out = run(dir.path(), &["sample-size", "--config", "cfg.json", "--eps", "0.1", "--C", "0.5"]);
    assert_eq!(records(&out)[0]["n"], 650);

    write(dir.path(), "bad.json", r#"{"epsilon": 0.5, "colour": 1}"#);
    assert_eq!(run(dir.path(), &["sample-size", "--config", "bad.json"]).status.code(), Some(1));
}

#[test]
fn kde_and_output_file() {
    let dir = tempfile::tempdir().unwrap();
    segments(dir.path());
    let out = run(dir.path(), &["kde", "--measure", "discrete_frechet", "--probe", "a.jsonl", "b.jsonl", "-o", "k.jsonl"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(dir.path().join("k.jsonl")).unwrap();
    let rec: Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(rec["kde"], (-1.0f64).exp());
    assert_eq!(rec["config"]["output"], "k.jsonl");
}
