use std::process::{Command, Output};

use serde_json::Value;

fn latcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latcoh"))
        .args(args)
        .env_remove("LATCOH_CACHE_DIR")
        .output()
        .expect("spawn latcoh")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn schema() -> jsonschema::Validator {
    let text = include_str!("../schema/output.schema.json");
    let v: Value = serde_json::from_str(text).unwrap();
    jsonschema::validator_for(&v).unwrap()
}

fn assert_valid(args: &[&str]) -> Value {
    let o = latcoh(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let validator = schema();
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?} does not match the schema: {errors:?}");
    v
}

#[test]
fn s3_augmentation_h1_prints_z3() {
    let o = latcoh(&["cohomology", "--group", "S3", "--module", "I", "--degree", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "Z/3");
}

#[test]
fn unknown_scenario_exits_2() {
    let o = latcoh(&["scenario", "run", "nosuch"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(latcoh(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(latcoh(&["cohomology", "--group", "S3"]).status.code(), Some(2));
    assert_eq!(latcoh(&["--budget", "10", "scenario", "list"]).status.code(), Some(2));
    assert_eq!(latcoh(&["--workers", "0", "scenario", "list"]).status.code(), Some(2));
    assert_eq!(latcoh(&["group", "show", "Q8"]).status.code(), Some(2));
    assert_eq!(latcoh(&["cache", "stats"]).status.code(), Some(2));
    let o = latcoh(&["cohomology", "--group", "S3", "--module", "I", "--degree", "1", "--via-shapiro", "H"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_exits_0() {
    assert_eq!(latcoh(&["--help"]).status.code(), Some(0));
}

#[test]
fn budget_exhaustion_is_a_failure_for_single_computations() {
    let o = latcoh(&["--budget", "1000000", "cohomology", "--group", "W3", "--module", "Y", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn skipped_budget_checks_do_not_fail_a_run() {
    let o = latcoh(&["--budget", "1000000", "--m", "3", "scenario", "run", "sec4.decomposition", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["status"] == "skipped-budget"));
}

#[test]
fn sec5_json_report() {
    let v = assert_valid(&["scenario", "run", "sec5.all", "--format", "json"]);
    assert_eq!(v["scenario"], "sec5.all");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] != "fail"));
}

#[test]
fn every_subcommand_matches_the_schema() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let dsl = dir.path().join("groups.txt");
    std::fs::write(&dsl, "# dihedral of order 8\ngroup D8 = <(1 2 3 4), (1 3)>\n").unwrap();
    let dsl = dsl.to_str().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        vec!["group", "show", "W2"],
        vec!["group", "show", "D8", "--dsl", dsl],
        vec!["group", "show", "<(1 2),(1 2 3)>"],
        vec!["lattice", "show", "Y_D", "--m", "2"],
        vec!["lattice", "show", "I_m", "--m", "3", "--dump-matrix"],
        vec!["cohomology", "--group", "S3", "--module", "I", "--degree", "1"],
        vec!["cohomology", "--group", "S3", "--module", "sign", "--degree", "2", "--dump-matrix"],
        vec!["cohomology", "--group", "W2", "--module", "Y_D", "--degree", "2", "--via-shapiro", "H"],
        vec!["cohomology", "--group", "C4", "--module", "Z", "--degree", "0", "--unnormalized"],
        vec!["cohomology", "--group", "D8", "--dsl", dsl, "--module", "P", "--degree", "2", "--cache-dir", cache],
        vec!["ext", "--group", "S3", "--from", "I", "--to", "Z", "--degree", "1"],
        vec!["scenario", "list"],
        vec!["scenario", "run", "sec0.canonical", "--m", "2"],
        vec!["invariants", "--rep", "U", "--dmax", "8"],
        vec!["invariants", "--rep", "S3-std", "--dmax", "4"],
        vec!["cache", "stats", "--cache-dir", cache],
        vec!["cache", "clear", "--cache-dir", cache],
    ];
    for mut args in runs {
        args.extend(["--format", "json"]);
        assert_valid(&args);
    }
}

#[test]
fn cached_cohomology_matches_fresh() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["cohomology", "--group", "W2", "--module", "Y", "--degree", "2", "--cache-dir", cache];
    let first = stdout(&latcoh(&args));
    let stats = assert_valid(&["cache", "stats", "--cache-dir", cache, "--format", "json"]);
    assert_eq!(stats["entries"], 1);
    assert_eq!(stdout(&latcoh(&args)), first);
}

#[test]
fn unnormalized_complex_agrees() {
    for module in ["Z", "I", "sign"] {
        let a = latcoh(&["cohomology", "--group", "S3", "--module", module, "--degree", "2"]);
        let b = latcoh(&["cohomology", "--group", "S3", "--module", module, "--degree", "2", "--unnormalized"]);
        assert_eq!(stdout(&a), stdout(&b), "{module}");
    }
}
