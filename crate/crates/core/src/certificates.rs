//! Closed-form necessary conditions for maximum robustness.
//!
//! Everything here is a cheap test on edge counts, degrees and cliques.
//! A failed certificate proves a graph cannot reach the level it guards; a
//! passed one proves nothing. The one exception is
//! [`contains_gamma_gamma_merg`], which is an exact characterization of
//! (γ,γ)-robustness.
//!
//! Throughout, `γ = ceil(n/2)`, so `n = 2γ - 1` (odd) or `n = 2γ` (even).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{low_bits, Graph, MASK_NODES};
use crate::oracle::Target;

/// `ceil(n / 2)`, the largest r any n-node graph can be r-robust for.
pub const fn gamma(n: usize) -> usize {
    n.div_ceil(2)
}

/// Parity of the node count, when known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Odd,
    Even,
    Unknown,
}

impl Parity {
    pub const fn of(n: usize) -> Self {
        if n % 2 == 0 {
            Self::Even
        } else {
            Self::Odd
        }
    }
}

/// Fewest edges of a γ-robust graph on `2γ - 1` nodes: `3γ(γ-1)/2`.
pub const fn edge_lb_gamma_odd(gamma: usize) -> usize {
    3 * gamma * gamma.saturating_sub(1) / 2
}

/// Fewest edges of a γ-robust graph on `2γ` nodes: `floor((γ(3γ-2)+2)/2)`.
pub const fn edge_lb_gamma_even(gamma: usize) -> usize {
    (gamma * (3 * gamma).saturating_sub(2) + 2) / 2
}

/// Edge lower bound for r-robustness on any node count. With even parity
/// the stronger even-n bound applies.
pub const fn edge_lb_any_r(r: usize, parity: Parity) -> usize {
    match parity {
        Parity::Even => edge_lb_gamma_even(r),
        Parity::Odd | Parity::Unknown => edge_lb_gamma_odd(r),
    }
}

/// Largest r whose edge lower bound `m` meets, clamped to `ceil(n/2)`.
/// Zero means the graph cannot even be 1-robust.
pub fn r_upper_bound_from_edges(n: usize, m: usize) -> usize {
    let parity = Parity::of(n);
    (1..=gamma(n))
        .take_while(|&r| edge_lb_any_r(r, parity) <= m)
        .last()
        .unwrap_or(0)
}

/// Minimum degree an (r,s)-robust graph must have.
pub const fn min_degree_lb_rs(r: usize, s: usize) -> usize {
    if s >= r {
        2 * r - 2
    } else {
        r + s - 1
    }
}

/// Fewest edges of a (γ,γ)-robust graph on `n >= 1` nodes. Odd n forces
/// the complete graph; even n needs `2γ(γ-1) + ceil(γ/2)`.
pub const fn edge_lb_gamma_gamma(n: usize) -> usize {
    let g = gamma(n);
    if n % 2 == 1 {
        (g - 1) * (2 * g - 1)
    } else {
        2 * g * (g - 1) + g.div_ceil(2)
    }
}

/// Edge count of the Turán graph `T(n, parts)`: the complete `parts`-partite
/// graph with part sizes as equal as possible. The densest graph on `n`
/// nodes without a `(parts + 1)`-clique.
pub const fn turan_edge_count(n: usize, parts: usize) -> usize {
    if parts == 0 {
        return 0;
    }
    let q = n / parts;
    let big = n % parts;
    let squares = big * (q + 1) * (q + 1) + (parts - big) * q * q;
    (n * n - squares) / 2
}

/// Clique size every (γ,γ)-robust graph on `2γ` nodes must contain.
///
/// Largest `k` whose Turán number `t(2γ, k-1)` lies strictly below the
/// (γ,γ) edge bound, evaluated exactly over integers. This is at least the
/// value the continuous form `(1 - 1/(k-1)) n²/2` gives and tracks
/// `floor(4γ/3) + 1` closely.
pub const fn turan_clique_threshold(gamma: usize) -> usize {
    let n = 2 * gamma;
    let m = edge_lb_gamma_gamma(n);
    let mut k = 2;
    while k < n && m > turan_edge_count(n, k) {
        k += 1;
    }
    k
}

/// Clique size every γ-robust graph on `n >= 2` nodes must contain:
/// `γ + 1` for odd n, `floor((γ + 4) / 2)` for even n.
pub const fn necessary_clique_size(n: usize) -> usize {
    let g = gamma(n);
    if n % 2 == 1 {
        g + 1
    } else {
        (g + 4) / 2
    }
}

/// Induced-edge threshold for the dense `(γ+1)`-subset of a γ-robust graph
/// with even n: `floor((γ² + 2) / 2)`.
pub const fn dense_subgraph_threshold(gamma: usize) -> usize {
    (gamma * gamma + 2) / 2
}

/// Largest n for which the `(γ+1)`-subset search runs.
pub const DENSE_SUBGRAPH_MAX_NODES: usize = 26;

/// Whether some `(γ+1)`-node subset induces at least
/// [`dense_subgraph_threshold`] edges. Even n only.
pub fn has_dense_gamma_subgraph(g: &Graph) -> Result<bool> {
    let n = g.n();
    if n % 2 == 1 {
        return Err(Error::RequiresEvenNodes(n));
    }
    let gm = gamma(n);
    let threshold = dense_subgraph_threshold(gm);
    Ok(densest_subset(g, gm + 1, threshold)? >= threshold)
}

/// Most edges induced by any `k`-subset, stopping early once `stop_at` is
/// reached.
fn densest_subset(g: &Graph, k: usize, stop_at: usize) -> Result<usize> {
    let n = g.n();
    if n > DENSE_SUBGRAPH_MAX_NODES {
        return Err(Error::ExactCapExceeded {
            n,
            limit: DENSE_SUBGRAPH_MAX_NODES,
        });
    }
    let masks = g.masks()?;
    if k > n {
        return Ok(0);
    }
    if k == 0 {
        return Ok(0);
    }
    let limit = 1u64 << n;
    let mut best = 0;
    let mut s = low_bits(k);
    while s < limit {
        let twice: u32 = crate::graph::NodeSet::from_mask(s)
            .iter()
            .map(|i| (masks[i] & s).count_ones())
            .sum();
        best = best.max(twice as usize / 2);
        if best >= stop_at {
            break;
        }
        // Gosper's hack: next integer with the same popcount.
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
    Ok(best)
}

/// Exact (γ,γ)-robustness test via the spanning-subgraph characterization.
///
/// Odd n: only the complete graph qualifies. Even n: the (γ,γ)-minimal
/// constructions are exactly complements of matchings with `floor(γ/2)`
/// edges, so `g` contains one as a spanning subgraph iff its own complement
/// is a matching (max degree ≤ 1) of at most `floor(γ/2)` edges.
pub fn contains_gamma_gamma_merg(g: &Graph) -> bool {
    let n = g.n();
    let total = n * (n - 1) / 2;
    let missing = total - g.edge_count();
    if n % 2 == 1 {
        return missing == 0;
    }
    missing <= gamma(n) / 2 && g.min_degree() + 2 >= n
}

/// Pass/fail state of one certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotEvaluated,
    NotApplicable,
}

/// Whether a certificate is only necessary or also sufficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    NecessaryOnly,
    NecessaryAndSufficient,
}

/// A single check `observed >= threshold`, guarding robustness level `level`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub name: &'static str,
    pub level: Target,
    pub quantity: &'static str,
    pub threshold: usize,
    pub observed: Option<usize>,
    pub status: Status,
    pub scope: Scope,
}

/// Aggregated certificate verdicts for one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub n: usize,
    pub gamma: usize,
    pub edge_count: usize,
    pub min_degree: usize,
    pub max_clique: Option<usize>,
    pub certificates: Vec<Certificate>,
    /// Largest r the edge count permits.
    pub implied_r_upper_bound: usize,
    /// Exact (γ,γ)-robustness from the spanning-subgraph test.
    pub gamma_gamma_robust: bool,
    /// Human-readable impossibility statements, e.g. "cannot be 2-robust".
    pub flags: Vec<String>,
}

/// Largest n for which the report runs the clique search.
pub const CLIQUE_MAX_NODES: usize = MASK_NODES;

fn cert(
    name: &'static str,
    level: Target,
    quantity: &'static str,
    threshold: usize,
    observed: Option<usize>,
) -> Certificate {
    let status = match observed {
        Some(v) if v >= threshold => Status::Pass,
        Some(_) => Status::Fail,
        None => Status::NotEvaluated,
    };
    Certificate {
        name,
        level,
        quantity,
        threshold,
        observed,
        status,
        scope: Scope::NecessaryOnly,
    }
}

fn not_applicable(name: &'static str, level: Target, quantity: &'static str) -> Certificate {
    Certificate {
        name,
        level,
        quantity,
        threshold: 0,
        observed: None,
        status: Status::NotApplicable,
        scope: Scope::NecessaryOnly,
    }
}

/// Evaluates every certificate for γ- and (γ,γ)-robustness.
pub fn certificate_report(g: &Graph) -> CertificateReport {
    let n = g.n();
    let gm = gamma(n);
    let m = g.edge_count();
    let odd = n % 2 == 1;
    let min_degree = g.min_degree();
    let max_clique = (n <= CLIQUE_MAX_NODES).then(|| g.max_clique_size());
    let r_level = Target::r(gm);
    let rs_level = Target::rs(gm, gm);

    let mut certificates = Vec::new();
    let edge_lb = if odd {
        edge_lb_gamma_odd(gm)
    } else {
        edge_lb_gamma_even(gm)
    };
    certificates.push(cert("gamma_edge_bound", r_level, "edges", edge_lb, Some(m)));
    certificates.push(cert("gamma_min_degree", r_level, "min_degree", gm, Some(min_degree)));
    if n >= 2 {
        certificates.push(cert(
            "gamma_clique",
            r_level,
            "max_clique",
            necessary_clique_size(n),
            max_clique,
        ));
    } else {
        certificates.push(not_applicable("gamma_clique", r_level, "max_clique"));
    }
    if odd {
        certificates.push(not_applicable("gamma_dense_subgraph", r_level, "induced_edges"));
    } else {
        let threshold = dense_subgraph_threshold(gm);
        certificates.push(cert(
            "gamma_dense_subgraph",
            r_level,
            "induced_edges",
            threshold,
            densest_subset(g, gm + 1, threshold).ok(),
        ));
    }

    certificates.push(cert(
        "gamma_gamma_edge_bound",
        rs_level,
        "edges",
        edge_lb_gamma_gamma(n),
        Some(m),
    ));
    certificates.push(cert(
        "gamma_gamma_min_degree",
        rs_level,
        "min_degree",
        min_degree_lb_rs(gm, gm),
        Some(min_degree),
    ));
    certificates.push(cert(
        "gamma_gamma_degree_edge_bound",
        rs_level,
        "edges",
        n * (gm - 1),
        Some(m),
    ));
    let clique_threshold = if odd { n } else { turan_clique_threshold(gm) };
    certificates.push(cert(
        "gamma_gamma_clique",
        rs_level,
        "max_clique",
        clique_threshold,
        max_clique,
    ));

    let implied_r_upper_bound = r_upper_bound_from_edges(n, m);
    let mut flags = Vec::new();
    if implied_r_upper_bound < gm {
        flags.push(format!("cannot be {}-robust", implied_r_upper_bound + 1));
    }
    let failed = |level: Target| {
        certificates
            .iter()
            .any(|c| c.level == level && c.status == Status::Fail)
    };
    if failed(r_level) {
        flags.push(format!("cannot be {gm}-robust"));
    }
    let gamma_gamma_robust = contains_gamma_gamma_merg(g);
    if failed(rs_level) || !gamma_gamma_robust {
        flags.push(format!("cannot be ({gm},{gm})-robust"));
    }
    flags.dedup();

    CertificateReport {
        n,
        gamma: gm,
        edge_count: m,
        min_degree,
        max_clique,
        certificates,
        implied_r_upper_bound,
        gamma_gamma_robust,
        flags,
    }
}
