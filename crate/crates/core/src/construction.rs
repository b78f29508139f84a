//! Deterministic constructions of minimal-edge maximum-robustness graphs.
//!
//! * γ-MERG, odd n: a (γ+1)-clique on nodes `0..=γ`; each remaining node
//!   attaches to the γ lowest clique members `0..γ`.
//! * γ-MERG, even n: hubs `0..γ` are adjacent to every other node, then the
//!   disjoint hub pairs `(0,1), (2,3), ...` lose their edge,
//!   `ceil((γ-2)/2)` pairs in total.
//! * (γ,γ)-MERG, odd n: the complete graph.
//! * (γ,γ)-MERG, even n: the complement of the matching
//!   `(0,1), (2,3), ..., (n-2,n-1)` (every degree `2γ-2`), with the first
//!   `ceil(γ/2)` matching pairs added back.
//!
//! A variant seed relabels the canonical graph by a seeded shuffle; the
//! recipe is then stated in the new labels.

use alloc::vec::Vec;

use serde::Serialize;

use crate::certificates::gamma;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::SeededRng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MergKind {
    /// Maximum r-robustness, `r = γ`.
    Gamma,
    /// Maximum (r,s)-robustness with `r = s = γ`.
    GammaGamma,
}

/// Clique neighbors chosen for one peripheral node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Attachment {
    pub node: usize,
    pub neighbors: Vec<usize>,
}

/// The choices made while building a MERG. [`ConstructionRecipe::replay`]
/// rebuilds the identical graph from these fields alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionRecipe {
    pub kind: MergKind,
    pub n: usize,
    pub gamma: usize,
    /// Odd-n γ: the clique. Even-n γ: the hubs. (γ,γ): every node.
    pub clique_or_hub_set: Vec<usize>,
    pub attachment_map: Vec<Attachment>,
    pub removed_pairs: Vec<(usize, usize)>,
    pub added_pairs: Vec<(usize, usize)>,
    pub variant_seed: Option<u64>,
    /// `relabeling[canonical] = actual`, present for variants.
    pub relabeling: Option<Vec<usize>>,
}

impl ConstructionRecipe {
    pub fn replay(&self) -> Result<Graph> {
        let n = self.n;
        let mut edges = Vec::new();
        match self.kind {
            MergKind::Gamma if n % 2 == 1 => {
                let x = &self.clique_or_hub_set;
                for (k, &u) in x.iter().enumerate() {
                    edges.extend(x[k + 1..].iter().map(|&v| (u, v)));
                }
                for a in &self.attachment_map {
                    edges.extend(a.neighbors.iter().map(|&v| (a.node, v)));
                }
                Graph::new(n, edges)
            }
            MergKind::Gamma => {
                for &h in &self.clique_or_hub_set {
                    edges.extend((0..n).filter(|&v| v != h).map(|v| (h, v)));
                }
                let g = Graph::new(n, edges)?;
                self.removed_pairs
                    .iter()
                    .try_fold(g, |g, &(u, v)| g.without_edge(u, v))
            }
            MergKind::GammaGamma => {
                let g = Graph::complete(n)?;
                let g = self
                    .removed_pairs
                    .iter()
                    .try_fold(g, |g, &(u, v)| g.without_edge(u, v))?;
                self.added_pairs
                    .iter()
                    .try_fold(g, |g, &(u, v)| g.with_edge(u, v))
            }
        }
    }

    fn relabel(mut self, perm: &[usize], seed: u64) -> Self {
        let pair = |(u, v): (usize, usize)| {
            let (a, b) = (perm[u], perm[v]);
            (a.min(b), a.max(b))
        };
        for v in &mut self.clique_or_hub_set {
            *v = perm[*v];
        }
        self.clique_or_hub_set.sort_unstable();
        for a in &mut self.attachment_map {
            a.node = perm[a.node];
            for v in &mut a.neighbors {
                *v = perm[*v];
            }
            a.neighbors.sort_unstable();
        }
        self.attachment_map.sort_by_key(|a| a.node);
        self.removed_pairs = self.removed_pairs.iter().copied().map(pair).collect();
        self.added_pairs = self.added_pairs.iter().copied().map(pair).collect();
        self.variant_seed = Some(seed);
        self.relabeling = Some(perm.to_vec());
        self
    }
}

/// γ-MERG on `n >= 2` nodes with canonical labels.
pub fn construct_gamma_merg(n: usize) -> Result<(Graph, ConstructionRecipe)> {
    if n < 2 {
        return Err(Error::TooFewNodes(n));
    }
    let gm = gamma(n);
    let recipe = if n % 2 == 1 {
        ConstructionRecipe {
            kind: MergKind::Gamma,
            n,
            gamma: gm,
            clique_or_hub_set: (0..=gm).collect(),
            attachment_map: (gm + 1..n)
                .map(|node| Attachment {
                    node,
                    neighbors: (0..gm).collect(),
                })
                .collect(),
            removed_pairs: Vec::new(),
            added_pairs: Vec::new(),
            variant_seed: None,
            relabeling: None,
        }
    } else {
        // ceil((γ-2)/2) == floor((γ-1)/2) for every γ >= 1.
        let pairs = (gm - 1) / 2;
        ConstructionRecipe {
            kind: MergKind::Gamma,
            n,
            gamma: gm,
            clique_or_hub_set: (0..gm).collect(),
            attachment_map: Vec::new(),
            removed_pairs: (0..pairs).map(|k| (2 * k, 2 * k + 1)).collect(),
            added_pairs: Vec::new(),
            variant_seed: None,
            relabeling: None,
        }
    };
    let g = recipe.replay()?;
    Ok((g, recipe))
}

/// (γ,γ)-MERG on `n >= 2` nodes with canonical labels.
pub fn construct_gamma_gamma_merg(n: usize) -> Result<(Graph, ConstructionRecipe)> {
    if n < 2 {
        return Err(Error::TooFewNodes(n));
    }
    let gm = gamma(n);
    let (removed, added) = if n % 2 == 1 {
        (Vec::new(), Vec::new())
    } else {
        let matching: Vec<_> = (0..gm).map(|k| (2 * k, 2 * k + 1)).collect();
        let added = matching[..gm.div_ceil(2)].to_vec();
        (matching, added)
    };
    let recipe = ConstructionRecipe {
        kind: MergKind::GammaGamma,
        n,
        gamma: gm,
        clique_or_hub_set: (0..n).collect(),
        attachment_map: Vec::new(),
        removed_pairs: removed,
        added_pairs: added,
        variant_seed: None,
        relabeling: None,
    };
    let g = recipe.replay()?;
    Ok((g, recipe))
}

/// Builds either kind, optionally relabeled by a seeded shuffle.
pub fn construct(kind: MergKind, n: usize, variant: Option<u64>) -> Result<(Graph, ConstructionRecipe)> {
    let (g, recipe) = match kind {
        MergKind::Gamma => construct_gamma_merg(n)?,
        MergKind::GammaGamma => construct_gamma_gamma_merg(n)?,
    };
    let Some(seed) = variant else {
        return Ok((g, recipe));
    };
    let mut perm: Vec<usize> = (0..n).collect();
    SeededRng::new(seed).shuffle(&mut perm);
    let recipe = recipe.relabel(&perm, seed);
    Ok((g.relabel(&perm)?, recipe))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificates::{edge_lb_gamma_even, edge_lb_gamma_gamma, edge_lb_gamma_odd};

    #[test]
    fn nine_and_ten_node_gamma_mergs() {
        let (g9, _) = construct_gamma_merg(9).unwrap();
        assert_eq!(g9.edge_count(), 30);
        assert_eq!(g9.max_clique_size(), 6);
        assert_eq!(g9.induced_edge_count(&[0, 1, 2, 3, 4, 5]).unwrap(), 15);
        assert!((0..=5).all(|i| g9.degree(i) >= 5));

        let (g10, r10) = construct_gamma_merg(10).unwrap();
        assert_eq!(g10.edge_count(), 33);
        assert_eq!(g10.max_clique_size(), 4);
        assert_eq!(r10.removed_pairs, alloc::vec![(0, 1), (2, 3)]);
        for (u, v) in [(0, 2), (0, 4), (2, 4), (0, 7), (2, 7), (4, 7)] {
            assert!(g10.has_edge(u, v));
        }

        let (g4, _) = construct_gamma_merg(4).unwrap();
        assert_eq!(g4, Graph::complete(4).unwrap().without_edge(2, 3).unwrap());
    }

    #[test]
    fn gamma_gamma_examples() {
        let (g9, _) = construct_gamma_gamma_merg(9).unwrap();
        assert!(g9.is_complete());
        let (g10, _) = construct_gamma_gamma_merg(10).unwrap();
        assert_eq!(g10.edge_count(), 43);
        assert_eq!(g10.max_clique_size(), 8);
        assert_eq!(g10.complement().edges().collect::<Vec<_>>(), alloc::vec![(6, 7), (8, 9)]);
        let (g2, _) = construct_gamma_gamma_merg(2).unwrap();
        assert_eq!(g2.edge_count(), 1);
    }

    #[test]
    fn too_small() {
        assert_eq!(construct_gamma_merg(1).unwrap_err(), Error::TooFewNodes(1));
        assert_eq!(construct_gamma_gamma_merg(0).unwrap_err(), Error::TooFewNodes(0));
    }

    #[test]
    fn edge_counts_meet_bounds() {
        for n in 2..=60 {
            let gm = gamma(n);
            let (g, _) = construct_gamma_merg(n).unwrap();
            let lb = if n % 2 == 1 {
                edge_lb_gamma_odd(gm)
            } else {
                edge_lb_gamma_even(gm)
            };
            assert_eq!(g.edge_count(), lb, "gamma-MERG n = {n}");
            let (h, _) = construct_gamma_gamma_merg(n).unwrap();
            assert_eq!(h.edge_count(), edge_lb_gamma_gamma(n), "(gamma,gamma)-MERG n = {n}");
        }
    }

    #[test]
    fn gamma_gamma_degree_profile() {
        for n in (2..=40).step_by(2) {
            let gm = gamma(n);
            let (g, _) = construct_gamma_gamma_merg(n).unwrap();
            let full = g.degrees().iter().filter(|&&d| d == 2 * gm - 1).count();
            let rest = g.degrees().iter().filter(|&&d| d == 2 * gm - 2).count();
            assert_eq!(full, 2 * gm.div_ceil(2));
            assert_eq!(full + rest, n);
        }
    }

    #[test]
    fn removed_pairs_are_disjoint() {
        for n in (2..=40).step_by(2) {
            let (_, r) = construct_gamma_merg(n).unwrap();
            let mut seen = alloc::vec![false; n];
            for &(u, v) in &r.removed_pairs {
                assert!(!seen[u] && !seen[v]);
                seen[u] = true;
                seen[v] = true;
            }
        }
    }

    #[test]
    fn variants_replay_and_preserve_shape() {
        for kind in [MergKind::Gamma, MergKind::GammaGamma] {
            for n in [7, 10, 13] {
                let (canon, _) = construct(kind, n, None).unwrap();
                let (g, r) = construct(kind, n, Some(42)).unwrap();
                assert_eq!(r.replay().unwrap(), g);
                assert_eq!(g.edge_count(), canon.edge_count());
                let mut a = g.degrees();
                let mut b = canon.degrees();
                a.sort_unstable();
                b.sort_unstable();
                assert_eq!(a, b);
                assert_eq!(construct(kind, n, Some(42)).unwrap().0, g);
            }
        }
    }
}
