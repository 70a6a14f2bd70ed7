//! Command-line front end.
//!
//! Every subcommand builds a JSON value and a text rendering; `--format`
//! picks which one is printed. Exit codes: 0 when everything executed
//! passed, 1 on a computational failure, 2 on usage errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::cache::Cache;
use crate::cohomology::{cohomology_via_shapiro, CohomologyGroup, Complex, DEFAULT_BUDGET};
use crate::config::{default_workers, Config, Format};
use crate::error::{Error, Result};
use crate::glattice::{
    augmentation_sublattice, hom_lattice, weyl_lattices, perm_lattice, sign_lattice, trivial_lattice, GLattice,
    Induction, DEFAULT_ISO_BOUND,
};
use crate::groups::{
    cyclic_group, parse_generator_list, parse_group_dsl, symmetric_group, weyl_group, z2, GroupHom, Perm, PermGroup,
    Subgroup, WeylGroup,
};
use crate::invariant_ring::{check_generation, invariants_of_degree, molien_dims, named_rep, weyl_u_generators};
use crate::scenarios::{self, Params, ScenarioReport, Status};
use crate::zmat::IntMatrix;

#[derive(Debug, Parser)]
#[command(name = "latcoh", version, about = "Exact G-lattices, group cohomology and verification scenarios")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// rank parameters m for Weyl-group objects, comma separated
    #[arg(long = "m", global = true, value_delimiter = ',')]
    pub m: Option<Vec<usize>>,
    /// maximum sparse entries per cohomology computation
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// cache directory (LATCOH_CACHE_DIR takes precedence)
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// coefficient bound for the equivariant isomorphism search
    #[arg(long, global = true, default_value_t = DEFAULT_ISO_BOUND)]
    pub iso_bound: i64,
    /// use the full (unnormalized) bar complex
    #[arg(long, global = true)]
    pub unnormalized: bool,
    /// print matrices and cocycles in the `rows cols` + triplets text form
    #[arg(long, global = true)]
    pub dump_matrix: bool,
    /// file of `group NAME = <...>` definitions
    #[arg(long, global = true)]
    pub dsl: Option<PathBuf>,
}

impl GlobalArgs {
    pub fn config(&self) -> Config {
        Config {
            budget: self.budget,
            workers: self.workers.unwrap_or_else(default_workers),
            cache_dir: self.cache_dir.clone(),
            normalized: !self.unnormalized,
            iso_bound: self.iso_bound,
            format: self.format,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inspect a group
    Group {
        #[command(subcommand)]
        action: GroupCmd,
    },
    /// Inspect a named lattice over W(m)
    Lattice {
        #[command(subcommand)]
        action: LatticeCmd,
    },
    /// Compute H^n(G, M)
    Cohomology {
        #[arg(long)]
        group: String,
        #[arg(long)]
        module: String,
        #[arg(long)]
        degree: usize,
        /// compute through Shapiro's lemma over the named subgroup
        #[arg(long)]
        via_shapiro: Option<String>,
    },
    /// Compute Ext^n_G(A, B) = H^n(G, Hom(A, B))
    Ext {
        #[arg(long)]
        group: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        degree: usize,
    },
    /// Run verification scenarios
    Scenario {
        #[command(subcommand)]
        action: ScenarioCmd,
    },
    /// Molien series and invariants of a linear representation
    Invariants {
        #[arg(long)]
        rep: String,
        #[arg(long, default_value_t = 8)]
        dmax: u32,
    },
    /// Manage the result cache
    Cache {
        #[command(subcommand)]
        action: CacheCmd,
    },
}

#[derive(Debug, Subcommand)]
pub enum GroupCmd {
    /// S<n>, C<n>, W<m>, a DSL name, or an inline generator list `<(1 2),(1 2 3)>`
    Show { name: String },
}

#[derive(Debug, Subcommand)]
pub enum LatticeCmd {
    /// X, Y', Y, Y_D, Y_D', Y_O, Y_O', I_2m, I_m, Z[W/H], Z-, Y_2
    Show { name: String },
}

#[derive(Debug, Subcommand)]
pub enum ScenarioCmd {
    /// Run one scenario by id, or `all`
    Run { id: String },
    /// List scenario ids
    List,
}

#[derive(Debug, Subcommand)]
pub enum CacheCmd {
    Clear,
    Stats,
}

/// What a subcommand produced.
struct Output {
    json: Value,
    text: String,
    /// failing anchors, `scenario: anchor`
    failures: Vec<String>,
}

impl Output {
    fn ok(json: Value, text: String) -> Output {
        Output { json, text, failures: Vec::new() }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let cfg = cli.global.config();
    if let Err(e) = cfg.validate() {
        let _ = writeln!(err, "error: {e}");
        return 2;
    }
    match execute(&cli, &cfg) {
        Ok(o) => {
            let printed = match cfg.format {
                Format::Json => serde_json::to_string_pretty(&o.json).map(|s| writeln!(out, "{s}")),
                Format::Text => Ok(write!(out, "{}", o.text)),
            };
            if !matches!(printed, Ok(Ok(()))) {
                let _ = writeln!(err, "error: could not write output");
                return 1;
            }
            if o.failures.is_empty() {
                0
            } else {
                for f in &o.failures {
                    let _ = writeln!(err, "FAILED: {f}");
                }
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Unknown(_) | Error::Parse(_) | Error::Invalid(_) => 2,
        _ => 1,
    }
}

fn execute(cli: &Cli, cfg: &Config) -> Result<Output> {
    let g = &cli.global;
    match &cli.command {
        Command::Group { action: GroupCmd::Show { name } } => group_show(name, g.dsl.as_deref()),
        Command::Lattice { action: LatticeCmd::Show { name } } => lattice_show(name, single_m(g)?, g.dump_matrix),
        Command::Cohomology { group, module, degree, via_shapiro } => {
            cohomology_cmd(group, module, *degree, via_shapiro.as_deref(), g, cfg)
        }
        Command::Ext { group, from, to, degree } => ext_cmd(group, from, to, *degree, g, cfg),
        Command::Scenario { action: ScenarioCmd::List } => Ok(scenario_list()),
        Command::Scenario { action: ScenarioCmd::Run { id } } => scenario_run(id, g, cfg),
        Command::Invariants { rep, dmax } => invariants_cmd(rep, *dmax),
        Command::Cache { action } => cache_cmd(action, cfg),
    }
}

fn single_m(g: &GlobalArgs) -> Result<usize> {
    match g.m.as_deref() {
        None => Ok(2),
        Some([m]) => Ok(*m),
        Some(_) => Err(Error::Invalid("this command takes a single --m".into())),
    }
}

fn perm_strings(ps: &[Perm]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

/// A group together with its Weyl-group structure when it has one.
struct GroupSpec {
    group: Arc<PermGroup>,
    weyl: Option<WeylGroup>,
}

fn parse_index(name: &str, prefix: char) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    let rest = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(rest);
    rest.parse().ok()
}

fn resolve_group(name: &str, dsl: Option<&Path>) -> Result<GroupSpec> {
    if let Some(path) = dsl {
        let text = std::fs::read_to_string(path)?;
        if let Some((_, g)) = parse_group_dsl(&text)?.into_iter().find(|(n, _)| n == name) {
            return Ok(GroupSpec { group: g, weyl: None });
        }
    }
    let plain = |group| Ok(GroupSpec { group, weyl: None });
    if name.trim_start().starts_with('<') {
        return plain(parse_generator_list(name, "G")?);
    }
    if let Some(n) = parse_index(name, 'S') {
        return plain(symmetric_group(n)?);
    }
    if let Some(n) = parse_index(name, 'C') {
        return plain(cyclic_group(n)?);
    }
    if let Some(m) = parse_index(name, 'W') {
        let w = weyl_group(m)?;
        return Ok(GroupSpec { group: w.w.clone(), weyl: Some(w) });
    }
    Err(Error::Unknown(format!("group {name:?} (try S<n>, C<n>, W<m>, <(1 2),...> or --dsl)")))
}

fn subgroup_json(s: &Subgroup) -> Value {
    json!({
        "name": s.name(),
        "order": s.order(),
        "index": s.index(),
        "generators": perm_strings(s.group().generators()),
    })
}

fn group_show(name: &str, dsl: Option<&Path>) -> Result<Output> {
    let spec = resolve_group(name, dsl)?;
    let g = &spec.group;
    let mut subgroups = Vec::new();
    if let Some(w) = &spec.weyl {
        subgroups.extend([&w.a, &w.sm, &w.h, &w.h1]);
        if let Some(h2) = &w.h2 {
            subgroups.push(h2);
        }
    }
    let mut text = format!(
        "{}: degree {}, order {}{}\ngenerators: {}\n",
        name,
        g.degree(),
        g.order(),
        if g.is_abelian() { ", abelian" } else { "" },
        perm_strings(g.generators()).join(", ")
    );
    for s in &subgroups {
        text.push_str(&format!(
            "  {}: order {}, index {}, generators {}\n",
            s.name(),
            s.order(),
            s.index(),
            if s.order() == 1 { "none".to_string() } else { perm_strings(s.group().generators()).join(", ") }
        ));
    }
    let swap = spec.weyl.as_ref().and_then(|w| w.g.as_ref()).map(|p| p.to_string());
    if let Some(s) = &swap {
        text.push_str(&format!("  g = {s}\n"));
    }
    let json = json!({
        "command": "group show",
        "name": name,
        "degree": g.degree(),
        "order": g.order(),
        "abelian": g.is_abelian(),
        "generators": perm_strings(g.generators()),
        "subgroups": subgroups.iter().map(|s| subgroup_json(s)).collect::<Vec<_>>(),
        "g": swap,
    });
    Ok(Output::ok(json, text))
}

fn key_of(name: &str) -> String {
    name.chars()
        .filter(|c| !matches!(c, '_' | ' '))
        .flat_map(|c| c.to_lowercase())
        .collect()
}

/// The lattices of the `W(m)` family, by user-facing name.
fn weyl_lattice(m: usize, name: &str) -> Result<(Arc<GLattice>, Option<Induction>)> {
    let p = weyl_lattices(m)?;
    let l = match key_of(name).as_str() {
        "x" => p.x,
        "y'" | "yprime" => p.y_prime,
        "y" => p.y,
        "yd" => return Ok((p.yd.clone(), Some(p.yd_induction))),
        "yd'" | "ydprime" => p.yd_prime,
        "yo" => p.yo,
        "yo'" | "yoprime" => p.yo_prime,
        "i2m" => p.i2m,
        "im" => p.im,
        "z[w/h]" | "blocks" => p.blocks,
        "z-" | "zminus" => p.zminus,
        "y2" => p.y2,
        _ => return Err(Error::Unknown(format!("lattice {name:?}"))),
    };
    Ok((l, None))
}

fn parity_hom(g: &Arc<PermGroup>) -> Result<GroupHom> {
    let t = z2();
    let swap = Perm::transposition(2, 0, 1);
    let imgs: Vec<Perm> = g
        .generators()
        .iter()
        .map(|p| {
            let odd = p.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 1;
            if odd {
                swap.clone()
            } else {
                Perm::identity(2)
            }
        })
        .collect();
    GroupHom::from_generator_images(g, &t, &imgs)
}

fn point_stabilizer(g: &Arc<PermGroup>) -> Result<Subgroup> {
    let elems: Vec<usize> = (0..g.order()).filter(|&i| g.element(i).apply(0) == 0).collect();
    Subgroup::from_elements(g, &elems, "Stab(1)")
}

/// A coefficient lattice and, when known, its structure as an induced module.
fn resolve_module(spec: &GroupSpec, name: &str) -> Result<(Arc<GLattice>, Option<Induction>)> {
    let g = &spec.group;
    match key_of(name).as_str() {
        "z" => return Ok((Arc::new(trivial_lattice(g, 1)), None)),
        "sign" => return Ok((Arc::new(sign_lattice(&parity_hom(g)?, "sign")?), None)),
        "p" => {
            let h = point_stabilizer(g)?;
            let z = Arc::new(trivial_lattice(h.group(), 1));
            let ind = Induction::induced(&h, &z, "P")?;
            return Ok((Arc::new(perm_lattice(&h)?), Some(ind)));
        }
        "i" => {
            let h = point_stabilizer(g)?;
            return Ok((augmentation_sublattice(&h)?.0, None));
        }
        "zg" => {
            let one = Subgroup::trivial(g, "1");
            let z = Arc::new(trivial_lattice(one.group(), 1));
            let ind = Induction::induced(&one, &z, "Z[G]")?;
            return Ok((ind.big().clone(), Some(ind)));
        }
        _ => {}
    }
    match &spec.weyl {
        Some(w) => weyl_lattice(w.m, name),
        None => Err(Error::Unknown(format!("module {name:?} (try Z, I, P, ZG, sign, or a W(m) lattice)"))),
    }
}

fn matrix_rows(m: &IntMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

fn lattice_show(name: &str, m: usize, dump: bool) -> Result<Output> {
    let (l, ind) = weyl_lattice(m, name)?;
    let w = l.group();
    let mats = l.generator_matrices();
    let gens = perm_strings(w.generators());
    let fixed_rank = l.fixed_basis().cols();
    let mut text = format!(
        "{} over W({m}) (order {}): rank {}, fixed rank {}\nbasis: {}\n",
        l.name(),
        w.order(),
        l.rank(),
        fixed_rank,
        l.labels().join(" ")
    );
    if let Some(ind) = &ind {
        text.push_str(&format!(
            "induced from {} (order {}), rank {}\n",
            ind.subgroup().name(),
            ind.subgroup().order(),
            ind.small().rank()
        ));
    }
    for (g, mat) in gens.iter().zip(&mats) {
        text.push_str(&format!("generator {g}:\n"));
        if dump {
            text.push_str(&mat.to_text());
        } else {
            for r in matrix_rows(mat) {
                text.push_str(&format!("  [{}]\n", r.join(" ")));
            }
        }
    }
    let json = json!({
        "command": "lattice show",
        "name": l.name(),
        "m": m,
        "group_order": w.order(),
        "rank": l.rank(),
        "fixed_rank": fixed_rank,
        "labels": l.labels(),
        "induced_from": ind.as_ref().map(|i| i.subgroup().name().to_string()),
        "generators": gens.iter().zip(&mats).map(|(g, mat)| json!({
            "generator": g,
            "matrix": matrix_rows(mat),
            "text": if dump { Some(mat.to_text()) } else { None },
        })).collect::<Vec<_>>(),
    });
    Ok(Output::ok(json, text))
}

fn invariants_json(c: &CohomologyGroup) -> Value {
    let inv = c.invariants();
    json!({
        "free_rank": inv.free_rank,
        "torsion": inv.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        "display": inv.to_string(),
    })
}

fn cocycles_text(c: &CohomologyGroup) -> Result<String> {
    let cols: Vec<Vec<num_bigint::BigInt>> = c
        .generators()
        .iter()
        .map(|v| v.iter().map(|&x| x.into()).collect())
        .collect();
    let rows = c.complex().dim(c.degree());
    Ok(IntMatrix::from_columns(&cols, rows).to_text())
}

/// Structural inputs of a cohomology computation, hashed for the cache.
fn lattice_fingerprint(l: &GLattice) -> Value {
    json!({
        "group": perm_strings(l.group().generators()),
        "action": l.generator_matrices().iter().map(|m| m.to_text()).collect::<Vec<_>>(),
    })
}

fn compute_cohomology(
    lattice: &Arc<GLattice>,
    ind: Option<&Induction>,
    degree: usize,
    normalized: bool,
    budget: u128,
) -> Result<Arc<CohomologyGroup>> {
    match ind {
        Some(ind) => cohomology_via_shapiro(ind, degree, budget),
        None if normalized => CohomologyGroup::compute(&Complex::new(lattice), degree, budget).map(Arc::new),
        None => CohomologyGroup::compute(&Complex::unnormalized(lattice), degree, budget).map(Arc::new),
    }
}

/// Invariants, served from the cache when possible.
fn cached_invariants(
    cache: Option<&Cache>,
    fingerprint: Value,
    compute: impl FnOnce() -> Result<Arc<CohomologyGroup>>,
) -> Result<(Value, Option<Arc<CohomologyGroup>>)> {
    let key = Cache::key("cohomology", &fingerprint);
    if let Some(c) = cache {
        if let Some(v) = c.get(&key)? {
            return Ok((v, None));
        }
    }
    let grp = compute()?;
    let v = invariants_json(&grp);
    if let Some(c) = cache {
        c.put(&key, &v)?;
    }
    Ok((v, Some(grp)))
}

fn cohomology_cmd(
    group: &str,
    module: &str,
    degree: usize,
    via: Option<&str>,
    g: &GlobalArgs,
    cfg: &Config,
) -> Result<Output> {
    if degree > 3 {
        return Err(Error::Invalid(format!("degree {degree} is outside 0..=3")));
    }
    let spec = resolve_group(group, g.dsl.as_deref())?;
    let (lattice, ind) = resolve_module(&spec, module)?;
    let ind = match via {
        None => None,
        Some(h) => {
            let ind = ind.ok_or_else(|| Error::Invalid(format!("no induced structure known for {module}")))?;
            let name = ind.subgroup().name();
            if h != "auto" && key_of(h) != key_of(name) {
                return Err(Error::Invalid(format!("{module} is induced from {name}, not {h}")));
            }
            Some(ind)
        }
    };
    let normalized = cfg.normalized || ind.is_some();
    let cache = if g.dump_matrix { None } else { cfg.cache() };
    let fingerprint = json!({
        "module": lattice_fingerprint(ind.as_ref().map_or(&lattice, |i| i.small())),
        "degree": degree,
        "normalized": normalized,
    });
    let (inv, grp) = cached_invariants(cache.as_ref(), fingerprint, || {
        compute_cohomology(&lattice, ind.as_ref(), degree, normalized, cfg.budget)
    })?;
    let display = inv["display"].as_str().unwrap_or_default().to_string();
    let mut text = format!("{display}\n");
    let mut cocycles = Value::Null;
    if g.dump_matrix {
        if let Some(grp) = &grp {
            let t = cocycles_text(grp)?;
            text.push_str(&t);
            cocycles = Value::String(t);
        }
    }
    let json = json!({
        "command": "cohomology",
        "group": group,
        "group_order": spec.group.order(),
        "module": module,
        "module_rank": lattice.rank(),
        "degree": degree,
        "normalized": normalized,
        "via_shapiro": ind.as_ref().map(|i| i.subgroup().name().to_string()),
        "invariants": inv,
        "cocycles": cocycles,
    });
    Ok(Output::ok(json, text))
}

fn ext_cmd(group: &str, from: &str, to: &str, degree: usize, g: &GlobalArgs, cfg: &Config) -> Result<Output> {
    if degree > 3 {
        return Err(Error::Invalid(format!("degree {degree} is outside 0..=3")));
    }
    let spec = resolve_group(group, g.dsl.as_deref())?;
    let (a, _) = resolve_module(&spec, from)?;
    let (b, _) = resolve_module(&spec, to)?;
    let hom = Arc::new(hom_lattice(&a, &b)?);
    let normalized = cfg.normalized;
    let fingerprint = json!({ "module": lattice_fingerprint(&hom), "degree": degree, "normalized": normalized });
    let (inv, _) = cached_invariants(cfg.cache().as_ref(), fingerprint, || {
        compute_cohomology(&hom, None, degree, normalized, cfg.budget)
    })?;
    let display = inv["display"].as_str().unwrap_or_default().to_string();
    let json = json!({
        "command": "ext",
        "group": group,
        "from": from,
        "to": to,
        "degree": degree,
        "hom_rank": hom.rank(),
        "normalized": normalized,
        "invariants": inv,
    });
    Ok(Output::ok(json, format!("{display}\n")))
}

fn scenario_list() -> Output {
    let items: Vec<Value> = scenarios::REGISTRY
        .iter()
        .map(|s| json!({ "id": s.id, "title": s.title }))
        .collect();
    let text = scenarios::REGISTRY
        .iter()
        .map(|s| format!("{:<22} {}\n", s.id, s.title))
        .collect();
    Output::ok(json!({ "command": "scenario list", "scenarios": items }), text)
}

fn report_text(r: &ScenarioReport) -> String {
    let mut s = format!("{}\n", r.scenario);
    for c in &r.checks {
        s.push_str(&format!("  {:<14} {} ({} ms)\n", c.status.as_str(), c.anchor, c.millis));
    }
    s
}

fn scenario_run(id: &str, g: &GlobalArgs, cfg: &Config) -> Result<Output> {
    let params = Params {
        m: g.m.clone().unwrap_or_else(|| Params::default().m),
        budget: cfg.budget,
        iso_bound: cfg.iso_bound,
    };
    let cache = cfg.cache();
    let reports = if id == "all" {
        scenarios::run_all(&params, cfg.workers, cache.as_ref())
    } else {
        vec![scenarios::run_cached(id, &params, cache.as_ref())?]
    };
    let mut text = String::new();
    let mut counts = [0usize; 4];
    let mut failures = Vec::new();
    for r in &reports {
        text.push_str(&report_text(r));
        for c in &r.checks {
            counts[match c.status {
                Status::Pass => 0,
                Status::Fail => 1,
                Status::Reported => 2,
                Status::SkippedBudget => 3,
            }] += 1;
        }
        failures.extend(r.failing_anchors().iter().map(|a| format!("{}: {a}", r.scenario)));
    }
    text.push_str(&format!(
        "{} pass, {} fail, {} reported, {} skipped-budget\n",
        counts[0], counts[1], counts[2], counts[3]
    ));
    let json = if id == "all" {
        serde_json::to_value(&reports)?
    } else {
        serde_json::to_value(&reports[0])?
    };
    Ok(Output { json, text, failures })
}

fn invariants_cmd(rep_name: &str, dmax: u32) -> Result<Output> {
    let rep = named_rep(rep_name)?;
    let dims = molien_dims(&rep, dmax as usize)?;
    let mut by_degree = Vec::new();
    let mut text = format!(
        "{} (dim {}, |G| = {})\nMolien coefficients: {}\n",
        rep.name(),
        rep.dim(),
        rep.group().order(),
        dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ")
    );
    for d in 0..=dmax {
        let basis: Vec<String> = invariants_of_degree(&rep, d)?.iter().map(|p| p.to_string()).collect();
        if !basis.is_empty() {
            text.push_str(&format!("  degree {d}: {}\n", basis.join(", ")));
        }
        by_degree.push(json!({ "degree": d, "basis": basis }));
    }
    let generation = if rep.name() == "U" {
        let r = check_generation(&rep, &weyl_u_generators(), dmax)?;
        text.push_str(&format!(
            "generators {}: generate through degree {dmax}: {}, algebraically independent: {}, degree product {} vs |G| = {}\n",
            r.generators.join(", "),
            r.generates(),
            r.algebraically_independent,
            r.degree_product,
            r.group_order
        ));
        let mut v = serde_json::to_value(&r)?;
        v["generates"] = json!(r.generates());
        v
    } else {
        Value::Null
    };
    let json = json!({
        "command": "invariants",
        "rep": rep.name(),
        "dim": rep.dim(),
        "group_order": rep.group().order(),
        "d_max": dmax,
        "molien": dims,
        "invariants": by_degree,
        "generation": generation,
    });
    Ok(Output::ok(json, text))
}

fn cache_cmd(action: &CacheCmd, cfg: &Config) -> Result<Output> {
    let cache = cfg
        .cache()
        .ok_or_else(|| Error::Invalid("no cache directory; pass --cache-dir or set LATCOH_CACHE_DIR".into()))?;
    match action {
        CacheCmd::Stats => {
            let s = cache.stats()?;
            let text = format!("{}: {} entries, {} bytes\n", s.dir, s.entries, s.bytes);
            let mut json = serde_json::to_value(&s)?;
            json["command"] = json!("cache stats");
            Ok(Output::ok(json, text))
        }
        CacheCmd::Clear => {
            let n = cache.clear()?;
            let dir = cache.dir().display().to_string();
            Ok(Output::ok(
                json!({ "command": "cache clear", "dir": dir, "removed": n }),
                format!("removed {n} entries from {dir}\n"),
            ))
        }
    }
}

