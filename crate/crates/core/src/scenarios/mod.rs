//! Named verification suites and their reports.
//!
//! Each scenario runs a fixed, ordered list of checks. A check either passes,
//! fails, is merely reported (where the expected outcome is not pinned down),
//! or is skipped because a computation would exceed the budget.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cache::Cache;
use crate::cohomology::DEFAULT_BUDGET;
use crate::error::{Error, Result};
use crate::glattice::DEFAULT_ISO_BOUND;
use crate::ENGINE_VERSION;

pub mod sec0;
pub mod sec1;
pub mod sec2;
pub mod sec4;
pub mod sec5;
pub(crate) mod util;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "reported")]
    Reported,
    #[serde(rename = "skipped-budget")]
    SkippedBudget,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Reported => "reported",
            Status::SkippedBudget => "skipped-budget",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub anchor: String,
    pub status: Status,
    pub values: Value,
    pub millis: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Params {
    /// rank parameters for the Weyl-group scenarios
    pub m: Vec<usize>,
    pub budget: u128,
    pub iso_bound: i64,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            m: vec![2, 3],
            budget: DEFAULT_BUDGET,
            iso_bound: DEFAULT_ISO_BOUND,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub params: Params,
    pub checks: Vec<Check>,
    pub engine_version: String,
    pub cache_hits: u64,
}

impl ScenarioReport {
    /// No check failed (skipped and reported checks do not count).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failing_anchors(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .map(|c| c.anchor.as_str())
            .collect()
    }

    /// The report with timing and cache fields zeroed, for comparisons.
    pub fn without_timing(&self) -> ScenarioReport {
        let mut r = self.clone();
        r.cache_hits = 0;
        for c in &mut r.checks {
            c.millis = 0;
        }
        r
    }
}

/// What a single check produced.
pub struct Outcome {
    pub status: Status,
    pub values: Value,
}

impl Outcome {
    pub fn pass_if(ok: bool, values: Value) -> Outcome {
        Outcome {
            status: if ok { Status::Pass } else { Status::Fail },
            values,
        }
    }

    pub fn reported(values: Value) -> Outcome {
        Outcome {
            status: Status::Reported,
            values,
        }
    }
}

/// Collects checks in execution order.
pub struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn new() -> Recorder {
        Recorder { checks: Vec::new() }
    }

    pub fn check(&mut self, anchor: impl Into<String>, f: impl FnOnce() -> Result<Outcome>) {
        let start = Instant::now();
        let (status, values) = match f() {
            Ok(o) => (o.status, o.values),
            Err(Error::Budget { needed, budget, hint }) => (
                Status::SkippedBudget,
                json!({ "needed": needed.to_string(), "budget": budget.to_string(), "hint": hint }),
            ),
            Err(e) => (Status::Fail, json!({ "error": e.to_string() })),
        };
        self.checks.push(Check {
            anchor: anchor.into(),
            status,
            values,
            millis: start.elapsed().as_millis() as u64,
        });
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }
}

pub struct Scenario {
    pub id: &'static str,
    pub title: &'static str,
    run: fn(&Params, &mut Recorder),
}

pub static REGISTRY: &[Scenario] = &[
    Scenario {
        id: "sec0.canonical",
        title: "canonical class of I ⊂ Z[G/H]",
        run: sec0::canonical,
    },
    Scenario {
        id: "sec0.lemma04",
        title: "four-term sequence through Ext^1(I, M)",
        run: sec0::lemma04,
    },
    Scenario {
        id: "sec0.lemma08",
        title: "two descriptions of h: H^2(H, M) -> H^2(H', M)",
        run: sec0::lemma08,
    },
    Scenario {
        id: "sec0.prop07",
        title: "extension class alpha and restriction membership",
        run: sec0::prop07,
    },
    Scenario {
        id: "sec0.thm05-action",
        title: "action on monomials twisted by a 2-cocycle",
        run: sec0::thm05_action,
    },
    Scenario {
        id: "sec0.prop010",
        title: "untwisting the monomial action (cocycle level)",
        run: sec0::prop010,
    },
    Scenario {
        id: "sec1.lattices",
        title: "ranks, Y2/Y and the 3x3 diagram",
        run: sec1::lattices,
    },
    Scenario {
        id: "sec1.gamma",
        title: "image of alpha_m against the restriction of alpha_2m",
        run: sec1::gamma,
    },
    Scenario {
        id: "sec2.structure",
        title: "decompositions, induction and vanishing over W",
        run: sec2::structure,
    },
    Scenario {
        id: "sec2.eta",
        title: "the invariant eta and its image under the connecting maps",
        run: sec2::eta,
    },
    Scenario {
        id: "sec2.beta",
        title: "beta, (beta_H, beta_gH) and the extension Y_D -> Y -> Y_O",
        run: sec2::beta,
    },
    Scenario {
        id: "sec4.decomposition",
        title: "2-primary and odd parts of the class of Y' over W(3)",
        run: sec4::decomposition,
    },
    Scenario {
        id: "sec5.all",
        title: "rank-2 lattices and the invariant ring of W(2) on U",
        run: sec5::all,
    },
];

pub fn scenario_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|s| s.id).collect()
}

pub fn lookup(id: &str) -> Result<&'static Scenario> {
    REGISTRY
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::Unknown(format!("scenario {id:?}")))
}

pub fn run(id: &str, params: &Params) -> Result<ScenarioReport> {
    let sc = lookup(id)?;
    let mut rec = Recorder::new();
    (sc.run)(params, &mut rec);
    Ok(ScenarioReport {
        scenario: sc.id.to_string(),
        params: params.clone(),
        checks: rec.checks,
        engine_version: ENGINE_VERSION.to_string(),
        cache_hits: 0,
    })
}

/// Runs `id`, reusing a stored report for identical inputs.
pub fn run_cached(id: &str, params: &Params, cache: Option<&Cache>) -> Result<ScenarioReport> {
    let Some(cache) = cache else {
        return run(id, params);
    };
    lookup(id)?;
    let key = Cache::key("scenario", &json!({ "id": id, "params": params }));
    if let Some(stored) = cache.get(&key)? {
        if let Ok(mut report) = serde_json::from_value::<ScenarioReport>(stored) {
            report.cache_hits += 1;
            return Ok(report);
        }
    }
    let report = run(id, params)?;
    cache.put(&key, &serde_json::to_value(&report)?)?;
    Ok(report)
}

/// Every registered scenario, in registry order, on up to `workers` threads.
pub fn run_all(params: &Params, workers: usize, cache: Option<&Cache>) -> Vec<ScenarioReport> {
    let n = REGISTRY.len();
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<ScenarioReport>>> = Mutex::new(vec![None; n]);
    std::thread::scope(|s| {
        for _ in 0..workers.clamp(1, n) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= n {
                    break;
                }
                let id = REGISTRY[i].id;
                let report = run_cached(id, params, cache).unwrap_or_else(|e| failed_report(id, params, e));
                slots.lock().expect("report slots")[i] = Some(report);
            });
        }
    });
    slots
        .into_inner()
        .expect("report slots")
        .into_iter()
        .map(|r| r.expect("every scenario ran"))
        .collect()
}

fn failed_report(id: &str, params: &Params, e: Error) -> ScenarioReport {
    ScenarioReport {
        scenario: id.to_string(),
        params: params.clone(),
        checks: vec![Check {
            anchor: "plumbing".into(),
            status: Status::Fail,
            values: json!({ "error": e.to_string() }),
            millis: 0,
        }],
        engine_version: ENGINE_VERSION.to_string(),
        cache_hits: 0,
    }
}

/// The `m` values of `params` within `lo..=hi`.
pub(crate) fn ms_in(params: &Params, lo: usize, hi: usize) -> Vec<usize> {
    params.m.iter().copied().filter(|&m| (lo..=hi).contains(&m)).collect()
}

#[cfg(test)]
mod tests;
