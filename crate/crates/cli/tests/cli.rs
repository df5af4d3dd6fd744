use std::process::{Command, Output};

use serde_json::Value;

fn gl2pv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gl2pv"))
        .args(args)
        .env_remove("GL2_WORKERS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn steinberg_nilpotent_closed() {
    let out = gl2pv(&[
        "gauss-sum",
        "--p",
        "3",
        "--rep",
        "st",
        "--matrix",
        "0,1;0,0",
        "--method",
        "closed",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["value"]["re"], 18.0);
    assert_eq!(v["value"]["im"], 0.0);
}

#[test]
fn methods_agree() {
    let mut vals = Vec::new();
    for m in ["brute", "closed", "cells"] {
        let out = gl2pv(&[
            "gauss-sum",
            "--p",
            "5",
            "--rep",
            "principal:0,2",
            "--matrix",
            "1,0;0,0",
            "--method",
            m,
        ]);
        assert_eq!(out.status.code(), Some(0));
        let v = json(&out);
        vals.push(v["value"]["re"].as_f64().unwrap());
        if m == "cells" {
            let g1 = v["g1"]["re"].as_f64().unwrap();
            let g2 = v["g2"]["re"].as_f64().unwrap();
            assert!((g1 + g2 - vals[2]).abs() < 1e-6);
        }
    }
    let expect = 20.0 * 5f64.sqrt();
    assert!(vals.iter().all(|v| (v - expect).abs() < 1e-6), "{vals:?}");
}

#[test]
fn primitive_count() {
    let out = gl2pv(&[
        "count",
        "--p",
        "3",
        "--x",
        "1",
        "--set",
        "primitive",
        "--compare",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["exact_count"], 12);
    assert_eq!(v["naive_count"], 12);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec![
            "gauss-sum",
            "--p",
            "9",
            "--rep",
            "st",
            "--matrix",
            "0,1;0,0",
        ],
        vec![
            "gauss-sum",
            "--p",
            "5",
            "--rep",
            "nope",
            "--matrix",
            "0,1;0,0",
        ],
        vec![
            "gauss-sum",
            "--p",
            "5",
            "--rep",
            "st",
            "--matrix",
            "0,1,0,0",
        ],
        vec!["count", "--p", "3", "--x", "1", "--set", "round"],
        vec!["frobnicate"],
    ] {
        let out = gl2pv(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn bad_worker_env_is_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_gl2pv"))
        .args(["fourier-coeffs", "--p", "3"])
        .env("GL2_WORKERS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_gl2pv"))
        .args(["fourier-coeffs", "--p", "3", "--workers", "0"])
        .env("GL2_WORKERS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "gauss-sum",
        "--p",
        "7",
        "--rep",
        "cuspidal:1",
        "--matrix",
        "2,3;1,5",
        "--no-timing",
    ];
    let a = gl2pv(&args);
    let b = gl2pv(&args);
    assert_eq!(a.stdout, b.stdout);
    let a = gl2pv(&["char-table", "--p", "5"]);
    let b = gl2pv(&["char-table", "--p", "5"]);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(
        v["irreps"].as_array().unwrap().len(),
        v["num_classes"].as_u64().unwrap() as usize
    );
}

#[test]
fn pv_scan_csv() {
    let out = gl2pv(&["pv-scan", "--p", "11", "--xmax", "3", "--out", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p,irrep,dim,x,abs_sum,ratio"));
    assert_eq!(lines.count(), 3 * 119);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("gl2pv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("coeffs.json");
    let out = gl2pv(&[
        "fourier-coeffs",
        "--p",
        "5",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["p"], 5);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn ps_count_and_text() {
    let out = gl2pv(&["ps-count", "--p", "7", "--theta", "0,1", "--out", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("exact_count:"));
    let out = gl2pv(&["ps-count", "--p", "7", "--theta", "3,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_small_prime() {
    let out = gl2pv(&["verify", "--p", "11"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["passed"], true);
}
