use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn lwitt(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lwitt"))
        .env_remove("LWITT_CACHE_DIR")
        .arg("--cache-dir")
        .arg(cache)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(cache: &Path, args: &[&str]) -> String {
    let o = lwitt(cache, args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

#[test]
fn qpoly_examples() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    assert_eq!(
        ok(
            d,
            &["qpoly", "--op", "add", "--n", "1", "--p", "2", "--q", "2", "--t", "0"]
        ),
        "X1 + Y1 + w1^2*X0*Y0\n"
    );
    assert_eq!(
        ok(
            d,
            &["qpoly", "--op", "mul", "--n", "1", "--p", "3", "--q", "3", "--t", "0"]
        ),
        "X0^3*Y1 + X1*Y0^3\n"
    );
    assert_eq!(ok(d, &["qpoly", "--op", "add", "--n", "0"]), "X0 + Y0\n");
    assert_eq!(
        ok(d, &["qpoly", "--op", "*", "--n", "0", "--format", "latex"]),
        "X_{0} Y_{0}\n"
    );
}

#[test]
fn qpoly_json_matches_golden_and_cache() {
    let dir = TempDir::new().unwrap();
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden/p2_q2_t1/add_2.json");
    let expected = std::fs::read_to_string(golden).unwrap();
    let args = ["qpoly", "--op", "add", "--n", "2", "--t", "1", "--format", "json"];
    assert_eq!(ok(dir.path(), &args), expected);
    let cached = dir.path().join("p2_q2_t1/add_2.json");
    assert_eq!(std::fs::read_to_string(&cached).unwrap(), expected);
    // a warm run reads the cache and prints the same bytes
    assert_eq!(ok(dir.path(), &args), expected);

    std::fs::write(&cached, "{ not json").unwrap();
    assert_eq!(lwitt(dir.path(), &args).status.code(), Some(3));
}

#[test]
fn qpoly_errors() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    assert_eq!(
        lwitt(d, &["qpoly", "--op", "add", "--n", "1", "--p", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        lwitt(d, &["qpoly", "--op", "add", "--n", "1", "--p", "2", "--q", "8"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(lwitt(d, &["qpoly", "--op", "sub", "--n", "1"]).status.code(), Some(2));
    assert_eq!(lwitt(d, &["qpoly", "--n", "1"]).status.code(), Some(2));
    let file = d.join("plain");
    std::fs::write(&file, "").unwrap();
    assert_eq!(
        lwitt(&file, &["qpoly", "--op", "add", "--n", "1"]).status.code(),
        Some(3)
    );
}

#[test]
fn cache_dir_from_environment() {
    let dir = TempDir::new().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_lwitt"))
        .env("LWITT_CACHE_DIR", dir.path())
        .args(["qpoly", "--op", "mul", "--n", "1"])
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(dir.path().join("p2_q2_t0/mul_1.json").exists());
}

#[test]
fn verify_examples() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let out = ok(d, &["verify", "--suite", "lemma63", "--n", "6"]);
    assert!(
        out.lines().filter(|l| l.starts_with("lemma63/PASS")).count() == 7,
        "{out}"
    );
    let summary: serde_json::Value = serde_json::from_str(out.lines().last().unwrap()).unwrap();
    assert_eq!(summary["passed"], true);

    ok(
        d,
        &["verify", "--suite", "fv-identity", "--p", "2", "--q", "2", "--m", "3"],
    );
    let first = ok(d, &["verify", "--suite", "ring-axioms", "--seed", "42"]);
    assert_eq!(first, ok(d, &["verify", "--suite", "ring-axioms", "--seed", "42"]));
    assert!(!first.contains("FAIL"));
}

#[test]
fn verify_json_and_errors() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let out = ok(
        d,
        &[
            "verify",
            "--suite",
            "normal-form",
            "--samples",
            "20",
            "--format",
            "json",
        ],
    );
    let report: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["suite"], "normal-form");
    assert_eq!(report["passed"], true);
    assert!(report["checks"].as_array().unwrap().len() >= 4);
    assert_eq!(lwitt(d, &["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(
        lwitt(d, &["verify", "--suite", "teichmuller", "--window", "0"])
            .status
            .code(),
        Some(2)
    );
    ok(d, &["verify", "--suite", "teichmuller", "--window", "3", "--p", "3"]);
}

#[test]
fn urp_examples() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let out = ok(d, &["urp", "--m", "2", "pi", "t1*pi"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines,
        ["t1 ↦ t1 + d1:t1·π + d2:t1·π²", "π ↦ π", "t1·π ↦ t1·π + d1:t1·π²"]
    );
    let out = ok(d, &["urp", "-r", "2", "--m", "1", "--p", "3", "t1*t2"]);
    assert!(out.contains("t1*t2 ↦ t1*t2 + (t1*d1:t2 + t2*d1:t1)·π"), "{out}");
}

#[test]
fn urp_json_and_errors() {
    let dir = TempDir::new().unwrap();
    let d = dir.path();
    let out = ok(d, &["urp", "--m", "1", "--format", "json", "t1 + pi"]);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["base"], "Z");
    let entries = doc["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 2);
    assert_eq!(entries[1]["image"], "t1 + (1 + d1:t1)·π");
    assert_eq!(entries[1]["coefficients"][1]["terms"].as_array().unwrap().len(), 2);
    assert_eq!(lwitt(d, &["urp", "--m", "2", "t1 +"]).status.code(), Some(2));
    assert_eq!(lwitt(d, &["urp", "--m", "2", "s9"]).status.code(), Some(2));
    assert_eq!(lwitt(d, &["urp", "--m", "2", "w1"]).status.code(), Some(2));
}
