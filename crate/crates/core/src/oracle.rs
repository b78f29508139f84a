//! Exact r-robustness and (r,s)-robustness by exhaustive enumeration.
//!
//! Every pair of nonempty disjoint node sets `(S1, S2)` corresponds to an
//! assignment of each node to one of {neither, S1, S2}, written as a base-3
//! number with node 0 as the most significant digit (0 = neither, 1 = S1,
//! 2 = S2). Both definitions are symmetric in `S1`/`S2`, so only canonical
//! assignments are visited: the lowest-indexed assigned node sits in `S1`
//! and `S2` is nonempty. Scanning in index order makes the first violation,
//! and therefore the reported witness, independent of how the index space is
//! partitioned.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};

/// Largest graph the exhaustive checks accept (`3^20 ≈ 3.5e9` assignments).
pub const EXACT_MAX_NODES: usize = 20;

/// Robustness level to verify: r-robustness when `s` is `None`, else (r,s).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Target {
    pub r: usize,
    pub s: Option<usize>,
}

impl Target {
    pub const fn r(r: usize) -> Self {
        Self { r, s: None }
    }

    pub const fn rs(r: usize, s: usize) -> Self {
        Self { r, s: Some(s) }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.s {
            None => write!(f, "{}-robustness", self.r),
            Some(s) => write!(f, "({},{})-robustness", self.r, s),
        }
    }
}

/// Two nonempty disjoint node sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SubsetPair {
    pub s1: NodeSet,
    pub s2: NodeSet,
}

/// Outcome of an exact check. `witness` is set iff `holds` is false and is
/// the first violating pair in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RobustnessVerdict {
    pub holds: bool,
    pub witness: Option<SubsetPair>,
    pub target: Target,
}

/// A violating pair together with its assignment index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub index: u64,
    pub pair: SubsetPair,
}

/// `3^n`, the size of the assignment index space.
pub fn assignment_count(n: usize) -> u64 {
    3u64.pow(n as u32)
}

/// Number of unordered pairs of nonempty disjoint subsets of `n` nodes,
/// `(3^n - 2^(n+1) + 1) / 2`.
pub fn canonical_pair_count(n: usize) -> u64 {
    (assignment_count(n) + 1 - (2u64 << n)) / 2
}

/// Canonical pairs of an `n`-node graph in witness order.
///
/// # Panics
/// If `n > 40` (the index space no longer fits in `u64`).
pub fn pairs(n: usize) -> Pairs {
    assert!(n <= 40, "assignment index overflows u64 above 40 nodes");
    Pairs::new(n, 0..assignment_count(n))
}

/// Canonical pairs whose assignment index falls inside `range`.
pub fn pairs_in(n: usize, range: Range<u64>) -> Pairs {
    assert!(n <= 40, "assignment index overflows u64 above 40 nodes");
    Pairs::new(n, range)
}

/// Iterator over `(index, pair)` in increasing index order.
#[derive(Clone, Debug)]
pub struct Pairs {
    n: usize,
    digits: Vec<u8>,
    s1: u64,
    s2: u64,
    index: u64,
    end: u64,
}

impl Pairs {
    fn new(n: usize, range: Range<u64>) -> Self {
        let end = range.end.min(assignment_count(n));
        let mut p = Self {
            n,
            digits: alloc::vec![0; n],
            s1: 0,
            s2: 0,
            index: 0,
            end,
        };
        p.seek(range.start);
        p
    }

    fn seek(&mut self, index: u64) {
        self.index = index;
        self.s1 = 0;
        self.s2 = 0;
        if index >= self.end {
            return;
        }
        let mut rest = index;
        for i in (0..self.n).rev() {
            let d = (rest % 3) as u8;
            rest /= 3;
            self.digits[i] = d;
            match d {
                1 => self.s1 |= 1 << i,
                2 => self.s2 |= 1 << i,
                _ => {}
            }
        }
    }

    fn step(&mut self) {
        self.index += 1;
        let mut i = self.n;
        while i > 0 {
            i -= 1;
            let bit = 1u64 << i;
            match self.digits[i] {
                0 => {
                    self.digits[i] = 1;
                    self.s1 |= bit;
                    return;
                }
                1 => {
                    self.digits[i] = 2;
                    self.s1 &= !bit;
                    self.s2 |= bit;
                    return;
                }
                _ => {
                    self.digits[i] = 0;
                    self.s2 &= !bit;
                }
            }
        }
    }
}

impl Iterator for Pairs {
    type Item = (u64, SubsetPair);

    fn next(&mut self) -> Option<Self::Item> {
        while self.index < self.end {
            let union = self.s1 | self.s2;
            if union == 0 {
                self.step();
                continue;
            }
            let first = union.trailing_zeros() as usize;
            if self.s2 >> first & 1 == 1 {
                // Every assignment sharing this prefix starts in S2; jump the block.
                let block = assignment_count(self.n - 1 - first);
                self.seek((self.index / block + 1) * block);
                continue;
            }
            let found = (self.s2 != 0).then_some((
                self.index,
                SubsetPair {
                    s1: NodeSet::from_mask(self.s1),
                    s2: NodeSet::from_mask(self.s2),
                },
            ));
            self.step();
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

fn validate_set(g: &Graph, s: NodeSet) -> Result<u64> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    if let Some(v) = s.iter().find(|&v| v >= g.n()) {
        return Err(Error::NodeOutOfRange { node: v, n: g.n() });
    }
    Ok(s.mask())
}

/// True iff some node of `s` has at least `r` neighbors outside `s`.
pub fn is_r_reachable(g: &Graph, s: NodeSet, r: usize) -> Result<bool> {
    Ok(reachable_count(g, s, r)? > 0)
}

/// `|{i in s : |N_i \ s| >= r}|`.
pub fn reachable_count(g: &Graph, s: NodeSet, r: usize) -> Result<usize> {
    if r == 0 {
        return Err(Error::ZeroR);
    }
    let masks = g.masks()?;
    let s = validate_set(g, s)?;
    Ok(count_reaching(&masks, s, r))
}

#[inline]
fn count_reaching(masks: &[u64], s: u64, r: usize) -> usize {
    NodeSet::from_mask(s)
        .iter()
        .filter(|&i| (masks[i] & !s).count_ones() as usize >= r)
        .count()
}

#[inline]
fn any_reaching(masks: &[u64], s: u64, r: u32) -> bool {
    let mut w = s;
    while w != 0 {
        let i = w.trailing_zeros() as usize;
        if (masks[i] & !s).count_ones() >= r {
            return true;
        }
        w &= w - 1;
    }
    false
}

#[inline]
fn violates(masks: &[u64], target: Target, s1: u64, s2: u64) -> bool {
    match target.s {
        None => {
            let r = target.r as u32;
            !any_reaching(masks, s1, r) && !any_reaching(masks, s2, r)
        }
        Some(s) => {
            let x1 = count_reaching(masks, s1, target.r);
            if x1 == s1.count_ones() as usize {
                return false;
            }
            let x2 = count_reaching(masks, s2, target.r);
            x2 < s2.count_ones() as usize && x1 + x2 < s
        }
    }
}

/// Re-checks a single pair against the definition of `target`.
pub fn pair_violates(g: &Graph, target: Target, pair: SubsetPair) -> Result<bool> {
    let masks = prepare(g, target)?;
    let s1 = validate_set(g, pair.s1)?;
    let s2 = validate_set(g, pair.s2)?;
    if s1 & s2 != 0 {
        return Err(Error::EmptySet);
    }
    Ok(violates(&masks, target, s1, s2))
}

/// Validates `target` against `g` and returns the adjacency masks the scan
/// runs on.
pub fn prepare(g: &Graph, target: Target) -> Result<Vec<u64>> {
    if target.r == 0 {
        return Err(Error::ZeroR);
    }
    if let Some(s) = target.s {
        if s == 0 || s > g.n() {
            return Err(Error::SOutOfRange { s, n: g.n() });
        }
    }
    if g.n() > EXACT_MAX_NODES {
        return Err(Error::ExactCapExceeded {
            n: g.n(),
            limit: EXACT_MAX_NODES,
        });
    }
    g.masks()
}

/// First violation of `target` with assignment index inside `range`.
///
/// `masks` must come from [`prepare`]. Building block for partitioned scans:
/// the global first violation is the minimum over any partition of
/// `0..assignment_count(n)`.
pub fn scan_range(masks: &[u64], target: Target, range: Range<u64>) -> Option<Violation> {
    pairs_in(masks.len(), range)
        .find(|(_, p)| violates(masks, target, p.s1.mask(), p.s2.mask()))
        .map(|(index, pair)| Violation { index, pair })
}

/// Strategy for locating the first violation over the whole index space.
pub trait Scan {
    fn first_violation(&self, g: &Graph, target: Target) -> Result<Option<Violation>>;
}

/// Single-threaded scan.
#[derive(Clone, Copy, Debug, Default)]
pub struct Serial;

impl Scan for Serial {
    fn first_violation(&self, g: &Graph, target: Target) -> Result<Option<Violation>> {
        let masks = prepare(g, target)?;
        Ok(scan_range(&masks, target, 0..assignment_count(g.n())))
    }
}

/// One row of a minimality sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeRemoval {
    pub edge: (usize, usize),
    pub verdict: RobustnessVerdict,
}

/// Verdicts of the target check after deleting each edge in turn.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalityReport {
    pub target: Target,
    pub removals: Vec<EdgeRemoval>,
    /// True iff every single-edge deletion breaks the target.
    pub minimal: bool,
}

/// Exact decision procedures, generic over the scanning strategy.
#[derive(Clone, Copy, Debug, Default)]
pub struct Oracle<S = Serial> {
    scan: S,
}

impl<S: Scan> Oracle<S> {
    pub const fn new(scan: S) -> Self {
        Self { scan }
    }

    pub fn check(&self, g: &Graph, target: Target) -> Result<RobustnessVerdict> {
        let found = self.scan.first_violation(g, target)?;
        Ok(RobustnessVerdict {
            holds: found.is_none(),
            witness: found.map(|v| v.pair),
            target,
        })
    }

    pub fn is_r_robust(&self, g: &Graph, r: usize) -> Result<RobustnessVerdict> {
        self.check(g, Target::r(r))
    }

    pub fn is_rs_robust(&self, g: &Graph, r: usize, s: usize) -> Result<RobustnessVerdict> {
        self.check(g, Target::rs(r, s))
    }

    /// Largest `r` for which `g` is r-robust, or 0 if it is not even
    /// 1-robust. Searches downward from `ceil(n/2)`.
    pub fn max_r_robustness(&self, g: &Graph) -> Result<usize> {
        for r in (1..=g.n().div_ceil(2)).rev() {
            if self.is_r_robust(g, r)?.holds {
                return Ok(r);
            }
        }
        Ok(0)
    }

    /// Largest `s` in `1..=n` for which `g` is (r,s)-robust, or 0.
    pub fn max_s_given_r(&self, g: &Graph, r: usize) -> Result<usize> {
        for s in (1..=g.n()).rev() {
            if self.is_rs_robust(g, r, s)?.holds {
                return Ok(s);
            }
        }
        Ok(0)
    }

    pub fn minimality_sweep(&self, g: &Graph, target: Target) -> Result<MinimalityReport> {
        if !self.check(g, target)?.holds {
            return Err(Error::TargetNotMet(target));
        }
        let removals = g
            .edges()
            .map(|(u, v)| {
                let h = g.without_edge(u, v)?;
                Ok(EdgeRemoval {
                    edge: (u, v),
                    verdict: self.check(&h, target)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let minimal = removals.iter().all(|e| !e.verdict.holds);
        Ok(MinimalityReport {
            target,
            removals,
            minimal,
        })
    }
}

pub fn is_r_robust(g: &Graph, r: usize) -> Result<RobustnessVerdict> {
    Oracle::new(Serial).is_r_robust(g, r)
}

pub fn is_rs_robust(g: &Graph, r: usize, s: usize) -> Result<RobustnessVerdict> {
    Oracle::new(Serial).is_rs_robust(g, r, s)
}

pub fn max_r_robustness(g: &Graph) -> Result<usize> {
    Oracle::new(Serial).max_r_robustness(g)
}

pub fn max_s_given_r(g: &Graph, r: usize) -> Result<usize> {
    Oracle::new(Serial).max_s_given_r(g, r)
}

pub fn minimality_sweep(g: &Graph, target: Target) -> Result<MinimalityReport> {
    Oracle::new(Serial).minimality_sweep(g, target)
}
