//! One pass/fail line per acceptance criterion, printed to stderr. The
//! test fails if any criterion fails, except for sub-checks listed in
//! `KNOWN_UNATTAINABLE`.

use std::io::{self, Write};
use std::time::Instant;

use merg::commands::{simulate, ScenarioArg, RemoveEdge};
use merg::io::trajectory_csv;
use merg::Parallel;
use merg_core::certificates::{
    contains_gamma_gamma_merg, edge_lb_gamma_even, edge_lb_gamma_gamma, edge_lb_gamma_odd, has_dense_gamma_subgraph,
    min_degree_lb_rs, necessary_clique_size,
};
use merg_core::rng::SeededRng;
use merg_core::scenario::sample_states;
use merg_core::sim::WeightRule;
use merg_core::wmsr::wmsr_step;
use merg_core::{
    construct_gamma_gamma_merg, construct_gamma_merg, gamma, run_simulation, AdversaryStrategy, AgentRole, Graph,
    Oracle, SimConfig, Target,
};

/// Spread ratio `spread(30) / spread(0)` below which a run counts as converged.
const RATIO_TOL: f64 = 0.05;
/// Final spread above which an edge-removed run counts as failing to agree.
const DISAGREE_TOL: f64 = 10.0;
const SEED: u64 = 0;

/// Sub-checks that cannot pass as specified. The (γ,γ) n = 10 demonstration
/// edge (0,2) joins two Byzantine agents, so deleting it leaves every
/// message a normal agent receives unchanged.
const KNOWN_UNATTAINABLE: &[&str] = &["viiB-gammagamma n=10 cut (0,2)"];

struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }
}

fn oracle() -> Oracle<Parallel> {
    Oracle::new(Parallel::default())
}

fn gamma_edge_target(n: usize) -> usize {
    if n % 2 == 1 {
        edge_lb_gamma_odd(gamma(n))
    } else {
        edge_lb_gamma_even(gamma(n))
    }
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    for n in 3..=14 {
        let g = construct_gamma_merg(n).unwrap().0;
        let gm = gamma(n) as i64;
        let formula = if n % 2 == 1 { 3 * gm * (gm - 1) / 2 } else { (gm * (3 * gm - 2) + 2) / 2 };
        o.check(g.edge_count() as i64 == formula, format!("n={n}: {} edges", g.edge_count()));
    }
    for (n, m) in [(9, 30), (10, 33), (49, 900), (50, 913)] {
        let got = construct_gamma_merg(n).unwrap().0.edge_count();
        o.check(got == m, format!("n={n}: {got} edges, want {m}"));
    }
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    for n in 3..=12 {
        let g = construct_gamma_merg(n).unwrap().0;
        let r = oracle().max_r_robustness(&g).unwrap();
        o.check(r == gamma(n), format!("n={n}: max r {r}"));
    }
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    for n in 2..=12 {
        let g = construct_gamma_gamma_merg(n).unwrap().0;
        let gm = gamma(n);
        o.check(oracle().is_rs_robust(&g, gm, gm).unwrap().holds, format!("n={n}: not ({gm},{gm})-robust"));
        let gm = gm as i64;
        let formula = if n % 2 == 1 { (gm - 1) * (2 * gm - 1) } else { 2 * gm * (gm - 1) + (gm + 1) / 2 };
        o.check(g.edge_count() as i64 == formula, format!("n={n}: {} edges", g.edge_count()));
    }
    for (n, m) in [(9, 36), (10, 43)] {
        let got = construct_gamma_gamma_merg(n).unwrap().0.edge_count();
        o.check(got == m, format!("n={n}: {got} edges, want {m}"));
    }
    o
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    for n in 5..=12 {
        let gm = gamma(n);
        let g = construct_gamma_merg(n).unwrap().0;
        let rep = oracle().minimality_sweep(&g, Target::r(gm)).unwrap();
        o.check(rep.minimal, format!("γ-MERG n={n} not minimal"));
        let h = construct_gamma_gamma_merg(n).unwrap().0;
        let rep = oracle().minimality_sweep(&h, Target::rs(gm, gm)).unwrap();
        o.check(rep.minimal, format!("(γ,γ)-MERG n={n} not minimal"));
    }
    let h = construct_gamma_gamma_merg(10).unwrap().0;
    let worst = h
        .edges()
        .map(|(u, v)| oracle().max_s_given_r(&h.without_edge(u, v).unwrap(), 5).unwrap())
        .max()
        .unwrap();
    o.check(worst <= 4, format!("n=10 rs: max s after a deletion is {worst}"));
    o
}

fn random_graph(rng: &mut SeededRng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.unit() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Seeded random graphs on 4, 6, 8 and 10 nodes across density bands, the
/// constructor outputs, and all their single-edge deletions.
fn suite_graphs() -> Vec<Graph> {
    let mut rng = SeededRng::new(SEED);
    let mut out = Vec::new();
    let bands = [0.3, 0.6, 0.8, 0.9, 0.95, 0.98];
    for k in 0..1200 {
        let n = [4, 6, 8, 10][k % 4];
        let p = bands[(k / 4) % bands.len()];
        out.push(random_graph(&mut rng, n, p));
    }
    for n in [4, 6, 8, 10] {
        for g in [construct_gamma_merg(n).unwrap().0, construct_gamma_gamma_merg(n).unwrap().0] {
            out.extend(g.edges().map(|(u, v)| g.without_edge(u, v).unwrap()));
            out.push(g);
        }
    }
    out
}

fn criterion_5(graphs: &[Graph]) -> Outcome {
    let mut o = Outcome::new();
    let mut robust = 0;
    for g in graphs {
        let gm = gamma(g.n());
        let exact = oracle().is_rs_robust(g, gm, gm).unwrap().holds;
        robust += exact as usize;
        o.check(contains_gamma_gamma_merg(g) == exact, format!("disagreement on {g:?}"));
    }
    o.notes.push(format!("{} graphs, {robust} (γ,γ)-robust", graphs.len()));
    o.check(graphs.len() >= 1000, "fewer than 1000 graphs");
    o
}

fn criterion_6(graphs: &[Graph]) -> Outcome {
    let mut o = Outcome::new();
    let mut robust = 0;
    for g in graphs {
        let n = g.n();
        let gm = gamma(n);
        if !oracle().is_r_robust(g, gm).unwrap().holds {
            continue;
        }
        robust += 1;
        o.check(g.max_clique_size() >= necessary_clique_size(n), format!("clique on {g:?}"));
        o.check(g.edge_count() >= gamma_edge_target(n), format!("edge bound on {g:?}"));
        o.check(g.min_degree() >= gm, format!("degree on {g:?}"));
        if n % 2 == 0 {
            o.check(has_dense_gamma_subgraph(g).unwrap(), format!("dense subgraph on {g:?}"));
        }
        if oracle().is_rs_robust(g, gm, gm).unwrap().holds {
            o.check(g.min_degree() >= min_degree_lb_rs(gm, gm), format!("(γ,γ) degree on {g:?}"));
            o.check(g.edge_count() >= edge_lb_gamma_gamma(n), format!("(γ,γ) edges on {g:?}"));
            o.check(g.edge_count() >= n * (gm - 1), format!("(γ,γ) degree-sum on {g:?}"));
        }
    }
    o.notes.push(format!("{robust} γ-robust graphs checked"));
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    let converges = |o: &mut Outcome, label: &str, g: &Graph, sc: ScenarioArg, f: Option<usize>| {
        let (_, s) = simulate(g, sc, f, 30, SEED, None, 1e-6).unwrap();
        o.check(s.stays_in_hull, format!("{label}: left the hull"));
        o.check(s.spread_ratio < RATIO_TOL, format!("{label}: spread ratio {:.3e}", s.spread_ratio));
    };
    for n in [49, 50] {
        let g = construct_gamma_merg(n).unwrap().0;
        converges(&mut o, &format!("viiA 25-MERG n={n}"), &g, ScenarioArg::Malicious, Some(12));
        let h = construct_gamma_gamma_merg(n).unwrap().0;
        converges(&mut o, &format!("viiA (25,25)-MERG n={n}"), &h, ScenarioArg::Malicious, Some(24));
    }
    let runs = [
        ("viiB-gamma", 9, ScenarioArg::ByzantineGamma),
        ("viiB-gamma", 10, ScenarioArg::ByzantineGamma),
        ("viiB-gammagamma", 9, ScenarioArg::ByzantineGammaGamma),
        ("viiB-gammagamma", 10, ScenarioArg::ByzantineGammaGamma),
    ];
    for (name, n, sc) in runs {
        let g = match sc {
            ScenarioArg::ByzantineGamma => construct_gamma_merg(n).unwrap().0,
            _ => construct_gamma_gamma_merg(n).unwrap().0,
        };
        converges(&mut o, &format!("{name} n={n} intact"), &g, sc, None);
        let (tr, s) = simulate(&g, sc, None, 30, SEED, Some(RemoveEdge::Demo), 1e-6).unwrap();
        let (u, v) = s.removed_edge.unwrap();
        let label = format!("{name} n={n} cut ({u},{v})");
        o.check(s.stays_in_hull, format!("{label}: left the hull"));
        o.check(s.final_spread > DISAGREE_TOL, format!("{label}: spread(30) = {:.3e}", s.final_spread));
        let stored = format!("{}/tests/data/{name}-n{n}-cut.csv", env!("CARGO_MANIFEST_DIR"));
        let stored = std::fs::read_to_string(stored).unwrap();
        o.check(trajectory_csv(&tr) == stored, format!("{label}: trajectory differs from stored regression"));
    }
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    o.check(wmsr_step(5.0, &[1.0, 4.0, 9.0, 10.0], 1) == 6.0, "hand example");
    o.check(wmsr_step(7.0, &[7.0, 7.0], 2) == 7.0, "all equal");
    o.check(wmsr_step(0.0, &[100.0, 100.0], 2) == 0.0, "all removed");
    let mut rng = SeededRng::new(SEED);
    for run in 0..100u64 {
        let n = 3 + rng.below(18) as usize;
        let p = rng.uniform(0.2, 1.0);
        let graph = random_graph(&mut rng, n, p);
        let f = rng.below(3) as usize;
        let config = SimConfig {
            graph,
            roles: vec![AgentRole::Normal; n],
            f,
            steps: 30,
            seed: run,
            initial_states: sample_states(&vec![(-1000.0, 1000.0); n], run).unwrap(),
            weight_rule: WeightRule::Uniform,
            alpha_floor: 0.0,
        };
        let tr = run_simulation(&config, &AdversaryStrategy::Silent).unwrap();
        o.check(tr.hull_monotone(), format!("run {run}: hull widened"));
    }
    o
}

#[test]
fn acceptance() {
    let graphs = suite_graphs();
    type Criterion<'a> = (usize, &'static str, Box<dyn Fn() -> Outcome + 'a>);
    let criteria: Vec<Criterion> = vec![
        (1, "edge-count tightness", Box::new(criterion_1)),
        (2, "maximum r-robustness", Box::new(criterion_2)),
        (3, "(γ,γ) constructions", Box::new(criterion_3)),
        (4, "minimality", Box::new(criterion_4)),
        (5, "(γ,γ) spanning-subgraph test vs oracle", Box::new(|| criterion_5(&graphs))),
        (6, "necessary-condition suites", Box::new(|| criterion_6(&graphs))),
        (7, "consensus reproduction", Box::new(criterion_7)),
        (8, "W-MSR unit behavior", Box::new(criterion_8)),
    ];
    let mut unexpected = Vec::new();
    for (k, name, run) in criteria {
        let start = Instant::now();
        let o = run();
        let status = if o.failures.is_empty() { "PASS" } else { "FAIL" };
        let known = |f: &String| KNOWN_UNATTAINABLE.iter().any(|k| f.starts_with(k));
        let mut detail = o.notes.join("; ");
        if !o.failures.is_empty() {
            if !detail.is_empty() {
                detail.push_str("; ");
            }
            detail.push_str(&o.failures.join("; "));
            if o.failures.iter().all(known) {
                detail.push_str(" (known unattainable)");
            }
        }
        // Written to the raw handle so the report shows up without --nocapture.
        writeln!(io::stderr(), "criterion {k}: {status} [{name}] ({:.2?}) {detail}", start.elapsed()).unwrap();
        unexpected.extend(
            o.failures
                .into_iter()
                .filter(|f| !known(f))
                .map(|f| format!("criterion {k}: {f}")),
        );
    }
    assert!(unexpected.is_empty(), "{unexpected:#?}");
}
