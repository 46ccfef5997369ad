use std::process::{Command, Output};

use serde_json::Value;

fn chern(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chern")).args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn verify_all_at_rank_one_emits_report_list() {
    let out = chern(&["verify", "--p", "3", "--n", "1", "--suite", "all", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let reports = stdout_json(&out);
    let reports = reports.as_array().unwrap();
    assert!(!reports.is_empty());
    for r in reports {
        let mut keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort();
        assert_eq!(keys, ["counterexample", "elapsed_ms", "identity", "paper_ref", "params", "seed", "status"]);
        assert_eq!(r["status"], "PASS");
        assert!(r["counterexample"].is_null());
    }
}

#[test]
fn kappa_integral_suite_runs_all_pairs() {
    let out = chern(&["verify", "--p", "3", "--n", "2", "--suite", "kappa-integral", "--format", "json", "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let reports = stdout_json(&out);
    let pairs: Vec<(u64, u64)> = reports
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["identity"] == "kappa_integral")
        .map(|r| (r["params"]["r"].as_u64().unwrap(), r["params"]["s"].as_u64().unwrap()))
        .collect();
    assert_eq!(pairs, [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]);
}

#[test]
fn perturbed_run_fails_with_status_one() {
    let out = chern(&["verify", "--p", "3", "--n", "1", "--suite", "ty-relations", "--perturb", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let r = &stdout_json(&out)[0];
    assert_eq!(r["status"], "FAIL");
    assert!(r["counterexample"]["lagrangian_index"].is_u64());
}

#[test]
fn membership_prints_witness() {
    let out = chern(&["membership", "--p", "3", "--n", "2", "--target", "kappa0^2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("MEMBER"));
    assert!(text.contains("witness: ") && text.contains("alpha1"));

    let out = chern(&["membership", "--p", "3", "--n", "1", "--target", "kappa0", "--format", "json"]);
    let v = stdout_json(&out);
    assert_eq!(v["result"], "NOT_A_MEMBER");
    assert!(v["witness"].is_null());
}

#[test]
fn usage_errors() {
    for args in [
        &["verify", "--p", "3", "--n", "3"][..],
        &["verify", "--p", "3", "--n", "1", "--suite", "nope"],
        &["verify", "--p", "9", "--n", "1"],
        &["verify", "--p", "3", "--n", "2", "--suite", "intro-presentation"],
        &["membership", "--p", "3", "--n", "1", "--target", "gamma"],
    ] {
        let out = chern(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert!(err.contains("usage error"), "{args:?}: {err}");
    }
    let err = String::from_utf8(chern(&["verify", "--p", "3", "--n", "3"]).stderr).unwrap();
    assert!(err.contains("p^n <= 25"));
}

#[test]
fn other_subcommands() {
    let out = chern(&["lagrangians", "--p", "3", "--n", "2", "--format", "json"]);
    assert_eq!(stdout_json(&out)["count"], 40);

    let out = chern(&["dickson", "--p", "3", "--basis", "1,0;0,1", "--macdonald", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["invariants"][0]["degree"], 8);
    assert_eq!(v["invariants"][1]["macdonald_agrees"], true);

    let dir = std::env::temp_dir().join(format!("chern-explain-{}.json", std::process::id()));
    let out = chern(&["explain", "--format", "json", "--out", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&dir).unwrap()).unwrap();
    std::fs::remove_file(&dir).unwrap();
    assert_eq!(v["identities"].as_array().unwrap().len(), 14);
}
