//! End-to-end checks of the command-line contract: exit codes and
//! deterministic output.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_weylcert")
}

fn repo_file(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

fn run(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn verify_sl2_passes_with_exit_zero() {
    let cert = repo_file("certs/sl2.cert.json");
    let out = run(&["verify", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{:?}", out);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("weyl relations     pass"));
    assert!(text.contains("recovery           pass"));
    assert!(text.contains("centrality         pass"));
    assert!(text.contains("overall: Pass"));
}

#[test]
fn verify_is_deterministic() {
    let cert = repo_file("certs/a1_z2.cert.json");
    let a = run(&["verify", cert.to_str().unwrap()]);
    let b = run(&["verify", cert.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn verify_writes_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let cert = repo_file("certs/sl2.cert.json");
    let out = run(&[
        "verify",
        cert.to_str().unwrap(),
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(doc["overall"], "pass");
}

#[test]
fn reduce_mod_p_reports_two_as_bad() {
    let cert = repo_file("certs/sl2.cert.json");
    let out = run(&["reduce-mod-p", cert.to_str().unwrap(), "--primes", "2..13"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("p = 2    bad prime"));
    assert!(text.contains("p = 13   pass"));
}

#[test]
fn emit_and_decide_toys() {
    let dir = tempfile::tempdir().unwrap();
    let sat = dir.path().join("sat.sentence.json");
    let profile = repo_file("profiles/toy-sat.profile.json");
    let out = run(&[
        "emit-sentence",
        "weyl:0,1",
        "--bounds",
        profile.to_str().unwrap(),
        "-o",
        sat.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{:?}", out);
    let out = run(&["decide", sat.to_str().unwrap(), "--char", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("SAT"));

    let unsat = dir.path().join("unsat.sentence.json");
    let profile = repo_file("profiles/toy-commutative.profile.json");
    let out = run(&[
        "emit-sentence",
        "weyl:0,0",
        "--bounds",
        profile.to_str().unwrap(),
        "-o",
        unsat.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{:?}", out);
    let out = run(&["decide", unsat.to_str().unwrap(), "--char", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("UNSAT"));
}

#[test]
fn rootsys_info_stable_format() {
    let out = run(&["rootsys", "info", "G2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("roots:           12"));
    assert!(text.contains("weyl order:      12"));
    assert!(text.contains("[  2  -1]"));
    assert!(text.contains("[ -3   2]"));
}

#[test]
fn usage_errors_exit_three() {
    let out = run(&["verify", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("/nonexistent/file.json"));

    let out = run(&["rootsys", "info", "Q9"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn corrupted_certificate_fails_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cert = repo_file("certs/sl2.cert.json");
    let text = std::fs::read_to_string(cert).unwrap();
    // flip a sign in the Casimir
    let bad = text.replace("2*e.1*f.1 + 1/2*h.1^2 - h.1", "2*e.1*f.1 + 1/2*h.1^2 + h.1");
    let path = dir.path().join("bad.cert.json");
    std::fs::write(&path, bad).unwrap();
    let out = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("overall: Fail"));
}

#[test]
fn bound_ceiling_env_is_honored() {
    let cert = repo_file("certs/sl2.cert.json");
    let out = Command::new(bin())
        .args(["verify", cert.to_str().unwrap()])
        .env("WEYLCERT_BOUND_CEILING", "64")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
