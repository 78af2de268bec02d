use std::process::{Command, Output};

use serde_json::Value;

fn hamlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hamlab")).args(args).env_remove("HAMLAB_THREADS").output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn delta_formula_value() {
    let out = hamlab(&["delta", "--n", "56", "--k", "8", "--ell", "7", "--method", "formula"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["value_num"], 22);
    assert_eq!(r["value_den"], 1);
}

#[test]
fn delta_enumeration_matches_formula() {
    let f = report(&hamlab(&["delta", "--n", "21", "--k", "7", "--ell", "6", "--method", "formula"]));
    let e = report(&hamlab(&["delta", "--n", "21", "--k", "7", "--ell", "6", "--method", "enumeration"]));
    assert_eq!((&f["value_num"], &f["value_den"]), (&e["value_num"], &e["value_den"]));
    assert!(!e["argmax"].as_array().unwrap().is_empty());
}

#[test]
fn delta_ill_defined_case_is_reported() {
    let out = hamlab(&["delta", "--n", "6", "--k", "3", "--ell", "2", "--method", "formula"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(report(&out)["case"], "ill-defined");
}

#[test]
fn extremal_cycle_search_is_none() {
    let out = hamlab(&["search", "--extremal", "n=6,k=3,a=3,eta=1", "--ell", "2", "--mode", "cycle"]);
    assert_eq!(out.status.code(), Some(3));
    let r = report(&out);
    assert_eq!(r["status"], "none");
    assert_eq!(r["reason"], "exhausted + parity certificate");
}

#[test]
fn complete_graph_has_a_cycle() {
    let out = hamlab(&["search", "--complete", "n=9,k=3", "--ell", "1", "--mode", "cycle"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["status"], "found");
}

#[test]
fn tiny_budget_is_unknown() {
    let out = hamlab(&["search", "--complete", "n=12,k=3", "--ell", "2", "--mode", "cycle", "--budget-nodes", "2"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn connector_count() {
    let out = hamlab(&["search", "--complete", "n=12,k=3", "--mode", "connectors", "--left", "0,1", "--right", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["count"], 84);
}

#[test]
fn fk_report_and_dump() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("eta.csv");
    let args = [
        "mc", "fk", "--m", "60", "--k", "3", "--t", "10", "--theta-family", "random", "--gamma", "2", "--trials",
        "100000", "--seed", "7", "--dump", dump.to_str().unwrap(),
    ];
    let out = hamlab(&args);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(r["empirical_tail"].as_f64().unwrap() <= 0.2707);
    let csv = std::fs::read_to_string(&dump).unwrap();
    assert_eq!(csv.lines().count(), 100_001);
    assert_eq!(csv.lines().next(), Some("trial,eta"));
}

#[test]
fn randomized_commands_need_a_seed() {
    for args in [
        &["mc", "fk", "--m", "20", "--k", "3", "--t", "3", "--gamma", "2"][..],
        &["mc", "chernoff", "--n", "100", "--p", "0.5", "--a", "0.2"],
        &["engine", "kpath", "--k", "3", "--m", "4", "--ell", "1"],
        &["construct", "--random", "n=8,k=3,p=0.5"],
        &["verify", "concentration"],
    ] {
        let out = hamlab(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn same_seed_same_bytes() {
    let runs = [
        &["mc", "fk", "--m", "30", "--k", "3", "--t", "5", "--gamma", "2", "--trials", "5000", "--seed", "11"][..],
        &["engine", "kpath", "--k", "3", "--m", "16", "--ell", "1", "--thin", "0.02", "--seed", "5"],
        &["parity-fix", "--extremal", "n=30,k=5,a=15,eta=1", "--ell", "3", "--plant-pair", "--seed", "4"],
        &["verify", "parity", "--seed", "9", "--quick"],
    ];
    for args in runs {
        let a = hamlab(args);
        let b = hamlab(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn unknown_suite_is_usage_error() {
    assert_eq!(hamlab(&["verify", "bogus"]).status.code(), Some(2));
}

#[test]
fn thresholds_suite_passes() {
    let out = hamlab(&["verify", "thresholds"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["pass"], true);
    assert!(!r.to_string().contains("millis"));
}

#[test]
fn construct_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.txt");
    let out = hamlab(&["construct", "--extremal", "n=6,k=3,a=3,eta=1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("6 3\n"));
    let out = hamlab(&["search", "--file", path.to_str().unwrap(), "--against", "a=3,eta=1", "--ell", "2", "--mode", "cycle"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(report(&out)["reason"], "exhausted + parity certificate");
}

#[test]
fn malformed_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    std::fs::write(&path, "5 3\n0 1 2").unwrap();
    let out = hamlab(&["search", "--file", path.to_str().unwrap(), "--mode", "pm"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("trailing newline"));
}

#[test]
fn two_sources_are_rejected() {
    let out = hamlab(&["search", "--complete", "n=6,k=3", "--empty", "n=6,k=3", "--mode", "pm"]);
    assert_eq!(out.status.code(), Some(2));
    let out = hamlab(&["search", "--mode", "pm"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn metadata_is_separate_and_env_overrides_threads() {
    let dir = tempfile::tempdir().unwrap();
    let meta = dir.path().join("meta.json");
    let out = Command::new(env!("CARGO_BIN_EXE_hamlab"))
        .args(["delta", "--n", "12", "--k", "4", "--ell", "3", "--threads", "1", "--meta", meta.to_str().unwrap()])
        .env("HAMLAB_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(report(&out).get("metadata").is_none());
    let m: Value = serde_json::from_str(&std::fs::read_to_string(&meta).unwrap()).unwrap();
    assert_eq!(m["metadata"]["threads"], 2);
    assert!(m["metadata"]["elapsed_ms"].is_u64());
}

#[test]
fn parity_obstruction_exit_code() {
    let out = hamlab(&["parity-fix", "--extremal", "n=30,k=5,a=15,eta=1", "--ell", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(report(&out)["status"], "none");
}

#[test]
fn analyze_reports() {
    let out = hamlab(&[
        "analyze", "--extremal", "n=8,k=4,a=4,eta=1", "--closeness", "--goodness", "0,1", "--probe", "--ell", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["closeness"]["distance"], 0);
    assert_eq!(r["goodness"]["alpha_star"]["num"], 0);
    assert!(r["probe"]["min_left_degree"].is_u64());
}
