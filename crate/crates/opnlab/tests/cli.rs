//! End-to-end tests of the compiled binary: exit codes, JSON contract,
//! output determinism, and the persisted sieve file.

use serde_json::Value;
use std::process::{Command, Output};

fn opnlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_opnlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON envelope")
}

#[test]
fn analyze_45_json_contract() {
    let out = opnlab(&["analyze", "45", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "analyze");
    assert_eq!(v["inputs"]["n"], "45");
    assert_eq!(v["results"]["factorization_display"], "3^2 * 5");
    assert_eq!(v["results"]["sigma"], "78");
    assert_eq!(v["results"]["abundancy"], "26/15");
    assert_eq!(v["results"]["eulerian"]["form"]["q"], "5");
    assert_eq!(v["results"]["eulerian"]["form"]["k"], 1);
    assert_eq!(v["results"]["eulerian"]["form"]["n"], "3");
    assert!(v.get("timing_ms").is_none());
}

#[test]
fn analyze_is_byte_identical_across_runs() {
    let a = opnlab(&["analyze", "198585576189", "--json"]);
    let b = opnlab(&["analyze", "198585576189", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn analyze_bad_input_exits_2() {
    assert_eq!(opnlab(&["analyze", "not-a-number"]).status.code(), Some(2));
    assert_eq!(opnlab(&["analyze", "0"]).status.code(), Some(2));
}

#[test]
fn spoof_descartes_equals_explicit_spec() {
    let by_name = json_of(&opnlab(&["spoof", "descartes", "--json"]));
    let by_spec = json_of(&opnlab(&["spoof", "22021^1*3003^2 assert 22021", "--json"]));
    assert_eq!(by_name["results"], by_spec["results"]);
    assert_eq!(by_name["results"]["components"]["is_perfect"], true);
    assert_eq!(by_name["results"]["l10_case"]["case_id"], 2);
}

#[test]
fn spoof_bad_spec_exits_2() {
    assert_eq!(opnlab(&["spoof", "5^2*3^2"]).status.code(), Some(2));
    assert_eq!(
        opnlab(&["spoof", "5^1*3^2 assert 4"]).status.code(),
        Some(2)
    );
}

#[test]
fn sweep_exit_codes_follow_failures() {
    let clean = opnlab(&[
        "sweep",
        "--bound",
        "200",
        "--filter",
        "coprime,abundancy-ordered",
        "--predicates",
        "T2a,R10",
    ]);
    assert_eq!(clean.status.code(), Some(0));
    let dirty = opnlab(&["sweep", "--bound", "100", "--predicates", "T1-generic", "--json"]);
    assert_eq!(dirty.status.code(), Some(1));
    let v = json_of(&dirty);
    assert!(v["results"]["tallies"][0]["fails"].as_u64().unwrap() > 0);
    let unknown = opnlab(&["sweep", "--bound", "100", "--predicates", "NOPE"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn sweep_csv_has_tally_table() {
    let out = opnlab(&[
        "sweep",
        "--bound",
        "50",
        "--predicates",
        "T2a",
        "--filter",
        "coprime",
        "--csv",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("predicate_id,holds,fails,vacuous"));
    assert!(lines.next().unwrap().starts_with("T2a,"));
}

#[test]
fn sweep_respects_thread_cap_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_opnlab"))
        .args(["sweep", "--bound", "100", "--predicates", "T2a", "--parallelism", "16", "--json"])
        .env("OPNLAB_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["inputs"]["parallelism"], 1);
}

#[test]
fn bounds_text_and_validation() {
    let out = opnlab(&["bounds", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("3*2^(-1/3)"));
    assert!(text.contains("[2.3811, 2.3812]"));
    assert_eq!(opnlab(&["bounds", "0"]).status.code(), Some(2));
}

#[test]
fn bounds_scan_limit_reports_no_violation() {
    let v = json_of(&opnlab(&["bounds", "3", "--scan-limit", "10000", "--json"]));
    let scan = &v["results"]["bound_scan"];
    assert_eq!(scan["primes_checked"], 609);
    assert!(scan["violation"].is_null());
}

#[test]
fn timing_flag_adds_field_and_breaks_nothing() {
    let with = json_of(&opnlab(&["bounds", "2", "--json", "--timing"]));
    assert!(with["timing_ms"].is_u64());
    let without = json_of(&opnlab(&["bounds", "2", "--json"]));
    assert!(without.get("timing_ms").is_none());
    assert_eq!(with["results"], without["results"]);
}

#[test]
fn sieve_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sigma.tab");
    let out = opnlab(&["sieve", "5000", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let bytes = std::fs::read(&path).unwrap();
    assert_eq!(&bytes[..8], b"SIGTAB01");
    let table = opnlab::harness::read_sigma_table(&bytes[..]).unwrap();
    assert_eq!(table, opnlab::harness::sigma_sieve(5000).unwrap());
}

#[test]
fn sieve_over_budget_exits_3() {
    let out = opnlab(&["sieve", "999999999999"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(opnlab(&[]).status.code(), Some(2));
    assert_eq!(opnlab(&["frobnicate"]).status.code(), Some(2));
    let conflict = opnlab(&["bounds", "2", "--json", "--csv"]);
    assert_eq!(conflict.status.code(), Some(2));
}
