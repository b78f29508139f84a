//! Undirected simple graphs on positional nodes `0..n`.
//!
//! Adjacency is kept as one fixed-width bit row per node so that subset
//! queries reduce to word-wise `and`/`popcount`. Rows are `ceil(n / 64)`
//! words wide, so the representation itself has no node limit; the exact
//! oracle works on the single-word view returned by [`Graph::masks`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest node count the single-word set representation supports.
pub const MASK_NODES: usize = 64;

/// A simple undirected graph. Immutable once built.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Reversed and repeated pairs collapse.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.check_node(u)?;
            g.check_node(v)?;
            g.insert(u, v);
        }
        Ok(g)
    }

    /// The edgeless graph on `n` nodes.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoNodes);
        }
        let stride = n.div_ceil(64);
        Ok(Self {
            n,
            stride,
            rows: vec![0; n * stride],
            edge_count: 0,
        })
    }

    /// `K_n`.
    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.insert(u, v);
            }
        }
        Ok(g)
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| (i - 1, i)))
    }

    /// Cycle on `n >= 3` nodes; smaller `n` degrade to a path.
    pub fn cycle(n: usize) -> Result<Self> {
        let mut g = Self::path(n)?;
        if n >= 3 {
            g.insert(0, n - 1);
        }
        Ok(g)
    }

    /// Star with center 0.
    pub fn star(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| (0, i)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count == self.n * (self.n - 1) / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.row(u)[v / 64] >> (v % 64) & 1 == 1
    }

    /// Degree of node `i`.
    ///
    /// # Panics
    /// If `i >= n`.
    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.degree(i)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|i| self.degree(i)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|i| self.degree(i)).max().unwrap_or(0)
    }

    /// Neighbors of `i` in increasing order.
    pub fn neighbors(&self, i: usize) -> Result<Vec<usize>> {
        self.check_node(i)?;
        Ok(self.neighbor_iter(i).collect())
    }

    /// Unchecked neighbor iterator; panics if `i >= n`.
    pub fn neighbor_iter(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.row(i))
    }

    /// Edges `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbor_iter(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Same node set, an edge wherever `self` has none.
    pub fn complement(&self) -> Self {
        let mut g = Self::empty(self.n).expect("n >= 1");
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.insert(u, v);
                }
            }
        }
        g
    }

    /// True iff every edge of `h` is an edge of `self`.
    pub fn is_spanning_subgraph(&self, h: &Graph) -> Result<bool> {
        if self.n != h.n {
            return Err(Error::NodeCountMismatch {
                left: self.n,
                right: h.n,
            });
        }
        Ok(self.rows.iter().zip(&h.rows).all(|(g, h)| h & !g == 0))
    }

    /// Number of edges with both endpoints in `nodes`. Duplicates are ignored.
    pub fn induced_edge_count(&self, nodes: &[usize]) -> Result<usize> {
        let mut member = vec![0u64; self.stride];
        for &v in nodes {
            self.check_node(v)?;
            member[v / 64] |= 1 << (v % 64);
        }
        let twice: usize = bits(&member)
            .map(|u| {
                self.row(u)
                    .iter()
                    .zip(&member)
                    .map(|(a, m)| (a & m).count_ones() as usize)
                    .sum::<usize>()
            })
            .sum();
        Ok(twice / 2)
    }

    /// A copy with the edge `(u, v)` deleted.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Self> {
        if !self.has_edge(u, v) {
            return Err(Error::MissingEdge(u, v));
        }
        let mut g = self.clone();
        g.remove(u, v);
        Ok(g)
    }

    /// A copy with the edge `(u, v)` added (no-op if present).
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.check_node(u)?;
        self.check_node(v)?;
        let mut g = self.clone();
        g.insert(u, v);
        Ok(g)
    }

    /// Renames node `i` to `perm[i]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::LengthMismatch {
                got: perm.len(),
                expected: self.n,
            });
        }
        Self::new(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// One `u64` adjacency mask per node, for graphs of at most 64 nodes.
    pub fn masks(&self) -> Result<Vec<u64>> {
        if self.n > MASK_NODES {
            return Err(Error::ExactCapExceeded {
                n: self.n,
                limit: MASK_NODES,
            });
        }
        Ok(self.rows.clone())
    }

    pub(crate) fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.stride..(i + 1) * self.stride]
    }

    pub(crate) fn stride(&self) -> usize {
        self.stride
    }

    pub(crate) fn check_node(&self, i: usize) -> Result<()> {
        if i < self.n {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { node: i, n: self.n })
        }
    }

    fn insert(&mut self, u: usize, v: usize) {
        if self.has_edge(u, v) {
            return;
        }
        let s = self.stride;
        self.rows[u * s + v / 64] |= 1 << (v % 64);
        self.rows[v * s + u / 64] |= 1 << (u % 64);
        self.edge_count += 1;
    }

    fn remove(&mut self, u: usize, v: usize) {
        if !self.has_edge(u, v) {
            return;
        }
        let s = self.stride;
        self.rows[u * s + v / 64] &= !(1 << (v % 64));
        self.rows[v * s + u / 64] &= !(1 << (u % 64));
        self.edge_count -= 1;
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &EdgeList(self))
            .finish()
    }
}

struct EdgeList<'a>(&'a Graph);

impl fmt::Debug for EdgeList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.edges()).finish()
    }
}

/// Set bits of a multi-word bit row, ascending.
pub(crate) fn bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(k, &w)| {
        let mut w = w;
        core::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(k * 64 + b)
        })
    })
}

/// A set of at most 64 nodes, stored as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet(u64);

impl NodeSet {
    pub const EMPTY: Self = Self(0);

    pub const fn from_mask(mask: u64) -> Self {
        Self(mask)
    }

    /// Collects node indices; fails on any index >= 64.
    pub fn from_nodes<I: IntoIterator<Item = usize>>(nodes: I) -> Result<Self> {
        let mut mask = 0u64;
        for v in nodes {
            if v >= MASK_NODES {
                return Err(Error::NodeOutOfRange {
                    node: v,
                    n: MASK_NODES,
                });
            }
            mask |= 1 << v;
        }
        Ok(Self(mask))
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        Self(low_bits(n))
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub const fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut w = self.0;
        core::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(b)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for NodeSet {
    /// Panics on an index >= 64; use [`NodeSet::from_nodes`] for checked input.
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_nodes(iter).expect("node index below 64")
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for NodeSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> core::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for v in self.iter() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

pub(crate) const fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}
