//! Exact maximum clique by branch and bound with greedy-coloring bounds
//! (the MCQ scheme): candidates are colored greedily, and a branch is cut as
//! soon as `|clique| + colors` cannot beat the incumbent.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{bits, Graph};

impl Graph {
    /// Size of a largest clique. Every graph has `n >= 1`, so this is at least 1.
    pub fn max_clique_size(&self) -> usize {
        self.max_clique().len()
    }

    /// A largest clique, members ascending. Deterministic for a given graph.
    pub fn max_clique(&self) -> Vec<usize> {
        let stride = self.stride();
        let mut cand = vec![0u64; stride];
        for v in 0..self.n() {
            cand[v / 64] |= 1 << (v % 64);
        }
        let mut search = Search {
            g: self,
            current: Vec::new(),
            best: vec![0],
        };
        search.expand(cand);
        search.best.sort_unstable();
        search.best
    }
}

struct Search<'a> {
    g: &'a Graph,
    current: Vec<usize>,
    best: Vec<usize>,
}

impl Search<'_> {
    fn expand(&mut self, mut cand: Vec<u64>) {
        let (order, colors) = color_sort(self.g, &cand);
        for k in (0..order.len()).rev() {
            if self.current.len() + colors[k] <= self.best.len() {
                return;
            }
            let v = order[k];
            self.current.push(v);
            let next: Vec<u64> = cand.iter().zip(self.g.row(v)).map(|(c, a)| c & a).collect();
            if next.iter().all(|&w| w == 0) {
                if self.current.len() > self.best.len() {
                    self.best.clone_from(&self.current);
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            cand[v / 64] &= !(1 << (v % 64));
        }
    }
}

/// Greedy sequential coloring of `cand`; returns vertices in nondecreasing
/// color order together with their color numbers (1-based).
fn color_sort(g: &Graph, cand: &[u64]) -> (Vec<usize>, Vec<usize>) {
    let mut uncolored = cand.to_vec();
    let mut order = Vec::new();
    let mut colors = Vec::new();
    let mut color = 0;
    while uncolored.iter().any(|&w| w != 0) {
        color += 1;
        let mut q = uncolored.clone();
        loop {
            let Some(v) = bits(&q).next() else { break };
            uncolored[v / 64] &= !(1 << (v % 64));
            q[v / 64] &= !(1 << (v % 64));
            for (w, a) in q.iter_mut().zip(g.row(v)) {
                *w &= !a;
            }
            order.push(v);
            colors.push(color);
        }
    }
    (order, colors)
}
