//! Runs every acceptance criterion at exact tolerance and prints one
//! PASS/FAIL line per criterion. Exits non-zero if any criterion fails.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use latcoh::cohomology::{cohomology, DEFAULT_BUDGET};
use latcoh::glattice::{weyl_lattices, perm_lattice, trivial_lattice, Induction};
use latcoh::groups::Subgroup;
use latcoh::scenarios::{self, sec0::sb_agreement, sec5::REPORTED_ONLY, Check, Params, ScenarioReport, Status};
use latcoh::zmat::{hnf, is_unimodular, snf, IntMatrix};

type Verdict = Result<String, String>;

fn params(m: &[usize]) -> Params {
    Params { m: m.to_vec(), ..Params::default() }
}

fn run(id: &str, m: &[usize]) -> Result<ScenarioReport, String> {
    scenarios::run(id, &params(m)).map_err(|e| e.to_string())
}

fn all_pass(r: &ScenarioReport) -> Result<(), String> {
    match r.checks.iter().find(|c| c.status != Status::Pass) {
        Some(c) => Err(format!("{}: {} ({})", c.status.as_str(), c.anchor, c.values)),
        None => Ok(()),
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    if t <= limit {
        Ok(())
    } else {
        Err(format!("took {t:?}, limit {limit:?}"))
    }
}

fn values_with<'a>(r: &'a ScenarioReport, key: &str) -> Vec<&'a Value> {
    r.checks.iter().filter_map(|c| c.values.get(key)).collect()
}

fn c1_canonical() -> Verdict {
    let t = Instant::now();
    let r = run("sec0.canonical", &[2, 3])?;
    all_pass(&r)?;
    for pair in ["S2/S1", "S3/S2", "S4/S3", "W(2)/H", "W(3)/H"] {
        if !r.checks.iter().any(|c| c.anchor.contains(pair)) {
            return Err(format!("{pair} missing"));
        }
    }
    within(t, Duration::from_secs(10))?;
    Ok(format!("{} pairs in {:?}", r.checks.len(), t.elapsed()))
}

fn c2_four_term() -> Verdict {
    let t = Instant::now();
    let r = run("sec0.lemma04", &[2, 3])?;
    let exact: Vec<&Check> = r.checks.iter().filter(|c| c.status == Status::Pass).collect();
    if let Some(c) = r.checks.iter().find(|c| c.status == Status::Fail) {
        return Err(format!("failed: {}", c.anchor));
    }
    if exact.len() < 4 {
        return Err(format!("only {} exact triples", exact.len()));
    }
    let nonzero_h1 = exact
        .iter()
        .any(|c| c.values["h1_h"].as_array().is_some_and(|a| !a.is_empty()));
    if !nonzero_h1 {
        return Err("no exact triple with H^1(H, M) ≠ 0".into());
    }
    within(t, Duration::from_secs(60))?;
    Ok(format!("{} exact triples, one with H^1(H, M) ≠ 0", exact.len()))
}

fn c3_two_routes() -> Verdict {
    let t = Instant::now();
    let r = run("sec0.lemma08", &[2, 3])?;
    all_pass(&r)?;
    for m in ["m = 2, H' = H''", "m = 3"] {
        if !r.checks.iter().any(|c| c.anchor.starts_with(m)) {
            return Err(format!("instance {m} missing"));
        }
    }
    within(t, Duration::from_secs(300))?;
    Ok(format!("{} instances agree on every generator", r.checks.len()))
}

fn c4_lattices() -> Verdict {
    let r = run("sec1.lattices", &[2, 3])?;
    all_pass(&r)?;
    if r.checks.len() != 8 {
        return Err(format!("expected 8 checks, got {}", r.checks.len()));
    }
    Ok("ranks, Y_2/Y ≅ I_m and the 3×3 diagram at m = 2, 3".into())
}

fn c5_gamma() -> Verdict {
    let r = run("sec1.gamma", &[2, 3])?;
    all_pass(&r)?;
    if r.checks.len() != 2 {
        return Err(format!("expected 2 checks, got {}", r.checks.len()));
    }
    Ok("image(α_m) = 2·res(α_2m) at m = 2, 3".into())
}

fn c6_beta() -> Verdict {
    let t = Instant::now();
    let r = run("sec2.beta", &[3])?;
    all_pass(&r)?;
    let routing = values_with(&r, "routing");
    if routing.is_empty() {
        return Err("no routing recorded".into());
    }
    for v in &routing {
        let ok = v["h_order"] == 16 && v["largest_direct_rank"].as_u64().is_some_and(|x| x <= 9) && v["h2_w_via_shapiro"] == true;
        if !ok {
            return Err(format!("routing {v}"));
        }
    }
    within(t, Duration::from_secs(1800))?;
    Ok(format!("verdicts as asserted, |H| = 16, rank ≤ 9, {:?}", t.elapsed()))
}

fn c7_eta() -> Verdict {
    let r = run("sec2.eta", &[3])?;
    all_pass(&r)?;
    let sign = values_with(&r, "sign");
    if !sign.iter().any(|s| s.as_i64().is_some_and(|x| x.abs() == 1)) {
        return Err("δ(η) not ±β_gH".into());
    }
    Ok(format!("η' fixed and generating, δ(η) = {}·β_gH", sign[0]))
}

fn c8_decomposition() -> Verdict {
    let r = run("sec4.decomposition", &[3])?;
    all_pass(&r)?;
    let c = &r.checks[0].values;
    if c["gamma_order"] != 6 || c["order_2"] != 2 || c["order_odd"] != 3 || c["sum_is_gamma"] != true {
        return Err(format!("{c}"));
    }
    Ok("order 6 = order 2 + order 3 components, summing to the class".into())
}

fn c9_rank_two() -> Verdict {
    let t = Instant::now();
    let r = run("sec5.all", &[2])?;
    for c in &r.checks {
        let allowed = c.status == Status::Pass || (c.status == Status::Reported && REPORTED_ONLY.contains(&c.anchor.as_str()));
        if !allowed {
            return Err(format!("{}: {}", c.status.as_str(), c.anchor));
        }
    }
    let molien = r.checks.iter().find(|c| c.anchor.contains("Molien")).ok_or("no Molien check")?;
    if molien.values["molien"] != serde_json::json!([1, 0, 1, 0, 2, 0, 2, 0, 3]) {
        return Err(format!("Molien {}", molien.values));
    }
    within(t, Duration::from_secs(60))?;
    Ok(format!("{} checks, Molien 1,0,1,0,2,0,2,0,3", r.checks.len()))
}

fn random_matrix(rng: &mut ChaCha8Rng) -> IntMatrix {
    let r = rng.gen_range(1..=6);
    let c = rng.gen_range(1..=6);
    let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-20..=20)).collect()).collect();
    IntMatrix::from_rows_i64(&rows)
}

fn normal_forms_hold(a: &IntMatrix) -> bool {
    let s = snf(a);
    let h = hnf(a);
    is_unimodular(&s.u)
        && is_unimodular(&s.v)
        && s.u.mul(a).mul(&s.v) == s.s
        && s.diag.windows(2).all(|w| (&w[1] % &w[0]) == 0.into())
        && is_unimodular(&h.u)
        && h.u.mul(a) == h.h
}

fn c10_properties() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let bad = (0..10_000).filter(|_| !normal_forms_hold(&random_matrix(&mut rng))).count();
    if bad > 0 {
        return Err(format!("{bad} SNF/HNF identity failures"));
    }
    for h in common::catalog() {
        let p = Arc::new(perm_lattice(&h).map_err(|e| e.to_string())?);
        if !cohomology(&p, 1, DEFAULT_BUDGET).map_err(|e| e.to_string())?.is_trivial() {
            return Err(format!("H^1 of {} nonzero", p.name()));
        }
        let z = Arc::new(trivial_lattice(h.group(), 1));
        let ind = Induction::induced(&h, &z, "Z[G/H]").map_err(|e| e.to_string())?;
        common::check_round_trip(&ind, 1, true);
        common::check_round_trip(&ind, 2, true);
    }
    for m in 2..=3 {
        let p = weyl_lattices(m).map_err(|e| e.to_string())?;
        common::check_round_trip(&p.yd_induction, 2, m == 2);
    }
    let groups = common::small_groups();
    for g in &groups {
        let zg = Arc::new(perm_lattice(&Subgroup::trivial(g, "1")).map_err(|e| e.to_string())?);
        for n in 1..=3 {
            if !cohomology(&zg, n, DEFAULT_BUDGET).map_err(|e| e.to_string())?.is_trivial() {
                return Err(format!("H^{n}({}, Z[G]) nonzero", g.label()));
            }
        }
    }
    let (cases, disagree) = common::sb_exhaustive();
    if disagree > 0 {
        return Err(format!("{disagree} of {cases} exhaustive symbol-action cases disagree"));
    }
    let mut sampled = 0;
    for seed in 0..4 {
        let v = sb_agreement(seed).map_err(|e| e.to_string())?;
        if v["disagreements"].as_array().is_none_or(|d| !d.is_empty()) {
            return Err(format!("sampled symbol-action disagreement: {v}"));
        }
        sampled += v["cases"].as_u64().unwrap_or(0);
    }
    Ok(format!(
        "10^4 normal forms, {} catalog pairs, {} group rings, {cases} exhaustive + {sampled} sampled cocycle cases",
        common::catalog().len(),
        groups.len()
    ))
}

fn c11_determinism() -> Verdict {
    let p = Params::default();
    let a: Vec<ScenarioReport> = scenarios::run_all(&p, 2, None).iter().map(|r| r.without_timing()).collect();
    let b: Vec<ScenarioReport> = scenarios::run_all(&p, 2, None).iter().map(|r| r.without_timing()).collect();
    if a != b {
        let first = a.iter().zip(&b).find(|(x, y)| x != y).map(|(x, _)| x.scenario.clone());
        return Err(format!("reports differ, first in {first:?}"));
    }
    Ok(format!("{} reports identical modulo timing", a.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 11] = [
        ("canonical class over the catalog", c1_canonical),
        ("four-term sequence exact on small triples", c2_four_term),
        ("two computations of h agree", c3_two_routes),
        ("lattice ranks, Y_2/Y and the 3×3 diagram", c4_lattices),
        ("α_m against twice the restriction of α_2m", c5_gamma),
        ("β verdicts at m = 3 through Shapiro", c6_beta),
        ("η' and its image under the connecting maps at m = 3", c7_eta),
        ("order decomposition of an order-6 class", c8_decomposition),
        ("rank-two lattices and the invariant ring", c9_rank_two),
        ("property suites", c10_properties),
        ("determinism of scenario run all", c11_determinism),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let verdict = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match verdict {
            Ok(detail) => println!("PASS criterion {:>2}: {title}: {detail} [{:.1?}]", i + 1, t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {title}: {why} [{:.1?}]", i + 1, t.elapsed());
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
