//! Subcommands of the `merg` binary.
//!
//! Exit codes: 0 when the requested property holds (or nothing was
//! requested), 2 when it does not, 1 on any error, 3 when an exact check is
//! out of reach.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use merg_core::oracle::{MinimalityReport, Target};
use merg_core::scenario::initial_states;
use merg_core::sim::{Metrics, WeightRule};
use merg_core::{
    certificate_report, construct, gamma, run_simulation, Error, Graph, MergKind, Oracle, RobustnessVerdict, Scenario,
    SimConfig, Trajectory,
};
use serde::Serialize;
use serde_json::json;

use crate::io::{graph_to_json, parse_graph, roles_json, trajectory_csv};
use crate::parallel::Parallel;

pub const EXIT_HOLDS: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_NOT_HELD: u8 = 2;
pub const EXIT_INFEASIBLE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "merg", version, about = "Minimal-edge maximum-robustness graphs and W-MSR consensus runs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a γ-MERG or (γ,γ)-MERG.
    Construct(ConstructArgs),
    /// Exact r- or (r,s)-robustness check.
    Robustness(RobustnessArgs),
    /// Closed-form certificate report as JSON.
    Bounds(BoundsArgs),
    /// Check that every single-edge deletion breaks the target robustness.
    Minimality(MinimalityArgs),
    /// Run a W-MSR consensus scenario.
    Simulate(SimulateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    /// γ-robustness.
    R,
    /// (γ,γ)-robustness.
    Rs,
}

impl From<KindArg> for MergKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::R => MergKind::Gamma,
            KindArg::Rs => MergKind::GammaGamma,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScenarioArg {
    #[value(name = "none")]
    None,
    #[value(name = "viiA-malicious")]
    Malicious,
    #[value(name = "viiB-gamma")]
    ByzantineGamma,
    #[value(name = "viiB-gammagamma")]
    ByzantineGammaGamma,
}

/// `u,v`, or `demo` for the scenario's demonstration edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RemoveEdge {
    Demo,
    Edge(usize, usize),
}

fn parse_remove_edge(s: &str) -> Result<RemoveEdge, String> {
    if s == "demo" {
        return Ok(RemoveEdge::Demo);
    }
    let (u, v) = s.split_once(',').ok_or("expected `u,v` or `demo`")?;
    let node = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("{x:?}: {e}"));
    Ok(RemoveEdge::Edge(node(u)?, node(v)?))
}

fn parse_n(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 2 => Ok(n),
        Ok(n) => Err(format!("need at least 2 nodes, got {n}")),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_parser = parse_n)]
    pub n: usize,
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Relabel the canonical graph with a seeded shuffle.
    #[arg(long)]
    pub variant: Option<u64>,
    /// Graph JSON path; the recipe goes to `<stem>.recipe.json` beside it.
    /// Without it the graph JSON is printed.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct RobustnessArgs {
    #[arg(long)]
    pub graph: PathBuf,
    /// Check (r,s)-robustness; `r` defaults to ⌈n/2⌉.
    #[arg(long)]
    pub rs: bool,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long, requires = "rs")]
    pub s: Option<usize>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub graph: PathBuf,
}

#[derive(Debug, Args)]
pub struct MinimalityArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum)]
    pub scenario: ScenarioArg,
    /// W-MSR parameter. Defaults to the scenario's adversary count; required
    /// for viiA-malicious, where it is also the number of malicious agents.
    #[arg(long)]
    pub f: Option<usize>,
    #[arg(long, default_value_t = 30)]
    pub steps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_parser = parse_remove_edge)]
    pub remove_edge: Option<RemoveEdge>,
    /// Trajectory CSV path; `<stem>.roles.json` and `<stem>.metrics.json`
    /// are written beside it.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Spread at the final step that counts as agreement.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long)]
    pub json: bool,
}

/// Runs a parsed command and returns its exit code.
pub fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Construct(a) => cmd_construct(&a),
        Command::Robustness(a) => cmd_robustness(&a),
        Command::Bounds(a) => cmd_bounds(&a),
        Command::Minimality(a) => cmd_minimality(&a),
        Command::Simulate(a) => cmd_simulate(&a),
    }
}

/// Exit code for an error escaping [`run`].
pub fn error_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::ExactCapExceeded { .. }) => EXIT_INFEASIBLE,
        _ => EXIT_ERROR,
    }
}

pub fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("parsing {}", path.display()))
}

/// `dir/stem.ext` becomes `dir/stem.suffix`.
pub fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    path.with_file_name(format!("{stem}.{suffix}"))
}

fn write(path: &Path, contents: &str) -> anyhow::Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn oracle() -> Oracle<Parallel> {
    Oracle::new(Parallel::default())
}

fn cmd_construct(a: &ConstructArgs) -> anyhow::Result<u8> {
    let (g, recipe) = construct(a.kind.into(), a.n, a.variant)?;
    let summary = json!({
        "n": g.n(),
        "gamma": gamma(g.n()),
        "edges": g.edge_count(),
        "kind": recipe.kind,
    });
    match &a.out {
        Some(out) => {
            let recipe_path = sidecar(out, "recipe.json");
            write(out, &graph_to_json(&g))?;
            write(&recipe_path, &serde_json::to_string_pretty(&recipe)?)?;
            if a.json {
                println!("{summary}");
            } else {
                println!("gamma = {}, edges = {}", gamma(g.n()), g.edge_count());
                println!("wrote {} and {}", out.display(), recipe_path.display());
            }
        }
        None => {
            eprintln!("gamma = {}, edges = {}", gamma(g.n()), g.edge_count());
            println!("{}", graph_to_json(&g));
        }
    }
    Ok(EXIT_HOLDS)
}

fn describe(v: &RobustnessVerdict) -> String {
    let mut s = format!("{}: {}", v.target, if v.holds { "holds" } else { "fails" });
    if let Some(w) = v.witness {
        s.push_str(&format!("\nwitness: S1 = {}, S2 = {}", w.s1, w.s2));
    }
    s
}

/// What `robustness` found; absent fields were not computed.
#[derive(Debug, Default, Serialize)]
pub struct RobustnessReport {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<RobustnessVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_r: Option<usize>,
    /// The failing check one level above `max_r`, with its witness.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub next_level: Option<RobustnessVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_s: Option<usize>,
}

fn cmd_robustness(a: &RobustnessArgs) -> anyhow::Result<u8> {
    let g = read_graph(&a.graph)?;
    let o = oracle();
    let n = g.n();
    let mut report = RobustnessReport {
        n,
        ..Default::default()
    };
    if a.rs {
        let r = a.r.unwrap_or_else(|| gamma(n));
        match a.s {
            Some(s) => report.verdict = Some(o.is_rs_robust(&g, r, s)?),
            None => {
                report.r = Some(r);
                report.max_s = Some(o.max_s_given_r(&g, r)?);
            }
        }
    } else {
        match a.r {
            Some(r) => report.verdict = Some(o.is_r_robust(&g, r)?),
            None => {
                let max_r = o.max_r_robustness(&g)?;
                report.max_r = Some(max_r);
                if max_r < gamma(n) {
                    report.next_level = Some(o.is_r_robust(&g, max_r + 1)?);
                }
            }
        }
    }
    if a.json {
        println!("{}", serde_json::to_string(&report)?);
    } else {
        if let Some(v) = &report.verdict {
            println!("{}", describe(v));
        }
        if let Some(r) = report.max_r {
            println!("max r = {r}");
        }
        if let (Some(r), Some(s)) = (report.r, report.max_s) {
            println!("r = {r}, max s = {s}");
        }
        if let Some(v) = &report.next_level {
            println!("{}", describe(v));
        }
    }
    Ok(report.verdict.as_ref().map_or(EXIT_HOLDS, verdict_code))
}

fn verdict_code(v: &RobustnessVerdict) -> u8 {
    if v.holds {
        EXIT_HOLDS
    } else {
        EXIT_NOT_HELD
    }
}

fn cmd_bounds(a: &BoundsArgs) -> anyhow::Result<u8> {
    let g = read_graph(&a.graph)?;
    println!("{}", serde_json::to_string_pretty(&certificate_report(&g))?);
    Ok(EXIT_HOLDS)
}

fn kind_target(kind: KindArg, n: usize) -> Target {
    let gm = gamma(n);
    match kind {
        KindArg::R => Target::r(gm),
        KindArg::Rs => Target::rs(gm, gm),
    }
}

fn cmd_minimality(a: &MinimalityArgs) -> anyhow::Result<u8> {
    let g = read_graph(&a.graph)?;
    let target = kind_target(a.kind, g.n());
    let report = match oracle().minimality_sweep(&g, target) {
        Ok(r) => r,
        Err(Error::TargetNotMet(t)) => {
            if a.json {
                println!("{}", json!({"target": t, "target_met": false, "minimal": false}));
            } else {
                println!("graph does not have {t}; nothing to sweep");
            }
            return Ok(EXIT_NOT_HELD);
        }
        Err(e) => return Err(e.into()),
    };
    if a.json {
        println!("{}", serde_json::to_string(&report)?);
    } else {
        print_minimality(&report);
    }
    Ok(if report.minimal { EXIT_HOLDS } else { EXIT_NOT_HELD })
}

fn print_minimality(report: &MinimalityReport) {
    println!("target: {}", report.target);
    println!("{:<10} {:<6} witness", "edge", "holds");
    for e in &report.removals {
        let edge = format!("{},{}", e.edge.0, e.edge.1);
        let witness = e
            .verdict
            .witness
            .map_or_else(|| "-".to_string(), |w| format!("S1 = {}, S2 = {}", w.s1, w.s2));
        println!("{edge:<10} {:<6} {witness}", e.verdict.holds);
    }
    println!("minimal: {}", report.minimal);
}

/// Everything `simulate` reports about a run.
#[derive(Debug, Serialize)]
pub struct RunSummary {
    pub scenario: &'static str,
    pub n: usize,
    #[serde(rename = "F")]
    pub f: usize,
    pub steps: usize,
    pub seed: u64,
    pub removed_edge: Option<(usize, usize)>,
    pub tol: f64,
    pub converged: bool,
    pub final_spread: f64,
    /// `spread(steps) / spread(0)`, or 0 when the initial spread is 0.
    pub spread_ratio: f64,
    pub stays_in_hull: bool,
    pub hull_monotone: bool,
    pub f_total: bool,
    pub f_local: bool,
    #[serde(flatten)]
    pub metrics: Metrics,
}

/// Resolves the scenario, applies the edge removal, and runs it.
pub fn simulate(
    g: &Graph,
    scenario: ScenarioArg,
    f: Option<usize>,
    steps: usize,
    seed: u64,
    remove: Option<RemoveEdge>,
    tol: f64,
) -> anyhow::Result<(Trajectory, RunSummary)> {
    let n = g.n();
    let sc = match scenario {
        ScenarioArg::None => Scenario::Nominal,
        ScenarioArg::Malicious => Scenario::MaliciousTrig {
            f: f.ok_or_else(|| anyhow!("viiA-malicious needs --f"))?,
        },
        ScenarioArg::ByzantineGamma => Scenario::ByzantineGamma,
        ScenarioArg::ByzantineGammaGamma => Scenario::ByzantineGammaGamma,
    };
    let removed = match remove {
        None => None,
        Some(RemoveEdge::Edge(u, v)) => Some((u.min(v), u.max(v))),
        Some(RemoveEdge::Demo) => Some(
            sc.demonstration_edge(n)
                .ok_or_else(|| anyhow!("no demonstration edge for {sc} on {n} nodes"))?,
        ),
    };
    let graph = match removed {
        Some((u, v)) => g.without_edge(u, v)?,
        None => g.clone(),
    };
    let config = SimConfig {
        roles: sc.roles(n)?,
        f: f.unwrap_or(sc.adversary_count()),
        steps,
        seed,
        initial_states: initial_states(n, sc, seed)?,
        weight_rule: WeightRule::Uniform,
        alpha_floor: 1.0 / n as f64,
        graph,
    };
    let tr = run_simulation(&config, &sc.adversary(n))?;
    let spread0 = tr.metrics.spread[0];
    let summary = RunSummary {
        scenario: sc.name(),
        n,
        f: config.f,
        steps,
        seed,
        removed_edge: removed,
        tol,
        converged: tr.converged(tol),
        final_spread: tr.final_spread(),
        spread_ratio: if spread0 > 0.0 { tr.final_spread() / spread0 } else { 0.0 },
        stays_in_hull: tr.stays_in_hull(),
        hull_monotone: tr.hull_monotone(),
        f_total: config.is_f_total(),
        f_local: config.is_f_local()?,
        metrics: tr.metrics.clone(),
    };
    Ok((tr, summary))
}

fn cmd_simulate(a: &SimulateArgs) -> anyhow::Result<u8> {
    if a.steps == 0 {
        bail!("--steps must be positive");
    }
    let g = read_graph(&a.graph)?;
    let (tr, summary) = simulate(&g, a.scenario, a.f, a.steps, a.seed, a.remove_edge, a.tol)?;
    if let Some(out) = &a.out {
        write(out, &trajectory_csv(&tr))?;
        write(&sidecar(out, "roles.json"), &roles_json(&tr.roles, tr.f))?;
        write(&sidecar(out, "metrics.json"), &serde_json::to_string_pretty(&summary)?)?;
    }
    if a.json {
        println!("{}", serde_json::to_string(&summary)?);
    } else {
        println!("scenario {}, n = {}, F = {}, steps = {}", summary.scenario, summary.n, summary.f, summary.steps);
        if let Some((u, v)) = summary.removed_edge {
            println!("removed edge: {u},{v}");
        }
        println!("spread: {} -> {}", summary.metrics.spread[0], summary.final_spread);
        println!("converged: {} (tol {})", summary.converged, summary.tol);
        println!("stays in hull: {}", summary.stays_in_hull);
    }
    Ok(EXIT_HOLDS)
}
