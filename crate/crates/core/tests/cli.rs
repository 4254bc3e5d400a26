//! The `moprl` binary: exit codes, outputs and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn moprl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moprl")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("moprl-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn scalar_hermite_suite_passes() {
    let out = moprl(&["verify", "--family", "scalar-hermite", "--nmax", "8", "--tol", "1e-12"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn compute_writes_gamma_zero() {
    let params = scratch("A.json");
    std::fs::write(&params, r#"{"dim":2,"entries":[[[0,0],[1,0]],[[0,0],[0,0]]]}"#).unwrap();
    let ledger = scratch("ledger.json");
    let out = moprl(&[
        "compute",
        "--family",
        "hermite-a",
        "--params",
        params.to_str().unwrap(),
        "--nmax",
        "6",
        "--out",
        ledger.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&ledger).unwrap()).unwrap();
    let gamma0 = &value["gamma"][0]["entries"];
    let s = std::f64::consts::PI.sqrt();
    let want = [[2.0 / (3.0 * s), 0.0], [0.0, 1.0 / s]];
    for i in 0..2 {
        for j in 0..2 {
            let re = gamma0[i][j][0].as_f64().unwrap();
            let im = gamma0[i][j][1].as_f64().unwrap();
            assert!((re - want[i][j]).abs() < 1e-9 && im.abs() < 1e-12, "gamma_0[{i}][{j}] = {re}+{im}i");
        }
    }
}

#[test]
fn unknown_suite_is_a_config_error() {
    let out = moprl(&["verify", "--suite", "nosuchcheck"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn bad_arguments_are_config_errors() {
    assert_eq!(moprl(&["verify", "--tol", "0.5"]).status.code(), Some(2));
    assert_eq!(moprl(&["compute", "--nmax", "0"]).status.code(), Some(2));
    assert_eq!(moprl(&["compute", "--family", "nosuchfamily"]).status.code(), Some(2));
    assert_eq!(moprl(&["compute", "--family", "scalar-hermite", "--dim", "2"]).status.code(), Some(2));
    assert_eq!(moprl(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(moprl(&["--help"]).status.code(), Some(0));
}

#[test]
fn growing_weight_is_a_numerical_failure() {
    let params = scratch("B.json");
    // e^{(B − 1/2)x²} grows for B = I
    std::fs::write(&params, r#"{"dim":1,"entries":[[[1,0]]]}"#).unwrap();
    let out = moprl(&["compute", "--family", "hermite-b", "--params", params.to_str().unwrap(), "--nmax", "2"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_moprl"))
            .args(["verify", "--family", "freud-a", "--dim", "2", "--nmax", "4", "--seed", "11"])
            .env("MOPRL_THREADS", threads)
            .output()
            .unwrap()
    };
    let (a, b, c) = (run("1"), run("1"), run("4"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn demo_prints_a_passing_table() {
    let out = moprl(&["demo"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for family in ["hermite-a", "hermite-b", "freud-a", "freud-b"] {
        assert!(text.contains(family), "{text}");
    }
}
