use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_loosetile"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn barrier_has_no_factor() {
    let dir = tempfile::tempdir().unwrap();
    let gen = run(dir.path(), &["gen", "space-barrier", "--n", "12", "--out", "barrier12.h3"]);
    assert_eq!(gen.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("barrier12.h3")).unwrap();
    assert!(text.starts_with("h3 12 136\n"));
    assert_eq!(text.lines().count(), 137);
    let side: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("barrier12.json")).unwrap()).unwrap();
    assert_eq!(side["designated_sets"]["X"].as_array().unwrap().len(), 3);
    assert_eq!(side["params"]["family"], "space-barrier");

    let out = run(dir.path(), &["find-factor", "barrier12.h3", "--json-indent", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), r#"{"exhaustive":true,"result":"none"}"#);
}

#[test]
fn solutions_pass_verify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    run(d, &["gen", "covered-extremal", "--n", "24", "--out", "h.h3"]);
    for cmd in [&["extremal-solve", "h.h3"][..], &["find-factor", "h.h3"], &["max-tiling", "h.h3"]] {
        let out = run(d, cmd);
        assert_eq!(out.status.code(), Some(0), "{cmd:?}");
        std::fs::write(d.join("out.json"), &out.stdout).unwrap();
        let v = run(d, &["verify", "h.h3", "out.json", "--perfect"]);
        assert_eq!(v.status.code(), Some(0), "{cmd:?}");
        assert_eq!(json(&v)["ok"], true);
    }
    // A tiling for the wrong host is rejected.
    run(d, &["gen", "space-barrier", "--n", "24", "--out", "other.h3"]);
    let v = run(d, &["verify", "other.h3", "out.json", "--perfect"]);
    assert_eq!(v.status.code(), Some(1));
}

#[test]
fn output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    run(d, &["gen", "covered-extremal", "--n", "36", "--noise", "0.001", "--seed", "4", "--out", "h.h3"]);
    for cmd in [&["extremal-solve", "h.h3", "--seed", "9"][..], &["almost-match", "h.h3"], &["stats", "h.h3"]] {
        let a = run(d, cmd);
        let b = run(d, cmd);
        assert_eq!(a.stdout, b.stdout, "{cmd:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(run(d, &["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(d, &["stats", "missing.h3"]).status.code(), Some(2));
    run(d, &["gen", "space-barrier", "--n", "18", "--out", "b.h3"]);
    assert_eq!(run(d, &["stats", "b.h3", "--threads", "2"]).status.code(), Some(2));
    let stopped = run(d, &["find-factor", "b.h3", "--budget-ms", "1"]);
    assert_eq!(stopped.status.code(), Some(3));
    assert_eq!(json(&stopped)["result"], "unknown");
    let failed = run(d, &["extremal-solve", "b.h3"]);
    assert_eq!(failed.status.code(), Some(1));
    assert_eq!(json(&failed)["result"], "failed");
    assert_eq!(run(d, &["reach", "b.h3", "0", "7"]).status.code(), Some(0));
    run(d, &["gen", "random", "--n", "12", "--p", "0", "--out", "empty.h3"]);
    assert_eq!(run(d, &["reach", "empty.h3", "0", "1"]).status.code(), Some(1));
}

#[test]
fn lattice_and_absorb() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    run(d, &["gen", "space-barrier", "--n", "12", "--out", "b.h3"]);
    std::fs::write(d.join("b.part"), "part 12 2\n0 1 2\n3 4 5 6 7 8 9 10 11\n").unwrap();
    let out = run(d, &["lattice", "b.h3", "--part", "b.part", "--threshold", "1", "--json-indent", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let counts = &json(&out)["report"]["counts"];
    let total: u64 = counts.as_array().unwrap().iter().map(|c| c["count"].as_u64().unwrap()).sum();
    assert_eq!(total, 136);

    run(d, &["gen", "random", "--n", "120", "--p", "1", "--out", "k.h3"]);
    let out = run(d, &["absorb-sim", "k.h3", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::write(d.join("a.json"), &out.stdout).unwrap();
    assert_eq!(run(d, &["verify", "k.h3", "a.json"]).status.code(), Some(0));
}

#[test]
fn experiment_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(
        dir.path(),
        &["experiment", "--family", "covered-extremal", "--n", "24..48", "--step", "12", "--trials", "3", "--check", "factor"],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("family,n,params,trials,successes,mean_runtime_ms,seed"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3);
    for (row, n) in rows.iter().zip(["24", "36", "48"]) {
        assert_eq!((row[0], row[1], row[3], row[4]), ("covered-extremal", n, "3", "3"));
    }
    assert_eq!(run(dir.path(), &["experiment", "--family", "random", "--n", "x", "--check", "factor"]).status.code(), Some(2));
}
