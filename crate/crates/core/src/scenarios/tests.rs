use super::*;

#[test]
fn registry_has_thirteen_unique_ids() {
    let ids = scenario_ids();
    assert_eq!(ids.len(), 13);
    let mut sorted = ids.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), 13);
}

#[test]
fn unknown_id_is_an_error() {
    assert!(matches!(run("nosuch", &Params::default()), Err(Error::Unknown(_))));
}

#[test]
fn canonical_passes() {
    let r = run("sec0.canonical", &Params::default()).unwrap();
    assert_eq!(r.checks.len(), 5);
    assert!(r.checks.iter().all(|c| c.status == Status::Pass), "{r:#?}");
}

#[test]
fn tiny_budget_skips_instead_of_failing() {
    let params = Params {
        budget: 10,
        ..Params::default()
    };
    let r = run("sec0.canonical", &params).unwrap();
    assert!(r.checks.iter().any(|c| c.status == Status::SkippedBudget), "{r:#?}");
    assert!(r.passed());
}

#[test]
fn status_serializes_with_dashes() {
    assert_eq!(serde_json::to_value(Status::SkippedBudget).unwrap(), json!("skipped-budget"));
}
