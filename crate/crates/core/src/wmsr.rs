//! Consensus update rules.
//!
//! [`wmsr_step`] drops up to `F` received values strictly above the agent's
//! own state (the largest ones) and up to `F` strictly below (the smallest
//! ones), then averages its own state with what is left using uniform
//! weights `1 / (k + 1)`. With `F = 0` nothing is dropped and the rule is the
//! nominal update [`nominal_step`].

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Uniform-weight average of the agent's own value and every received value.
pub fn nominal_step(own: f64, received: &[f64]) -> f64 {
    let mut values = received.to_vec();
    values.sort_by(f64::total_cmp);
    average(own, &values)
}

/// Received values that survive the W-MSR filter, ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct Filtered {
    pub retained: Vec<f64>,
    pub removed_above: usize,
    pub removed_below: usize,
}

/// Applies the W-MSR filter with parameter `f` around `own`.
///
/// Equal extreme values are interchangeable, so which copy is dropped does
/// not affect the retained multiset.
pub fn wmsr_filter(own: f64, received: &[f64], f: usize) -> Filtered {
    let mut sorted = received.to_vec();
    sorted.sort_by(f64::total_cmp);
    let below = sorted.iter().take_while(|&&v| v < own).count();
    let above = sorted.iter().rev().take_while(|&&v| v > own).count();
    let removed_below = below.min(f);
    let removed_above = above.min(f);
    let retained = sorted[removed_below..sorted.len() - removed_above].to_vec();
    Filtered {
        retained,
        removed_above,
        removed_below,
    }
}

/// One W-MSR update of a normal agent.
pub fn wmsr_step(own: f64, received: &[f64], f: usize) -> f64 {
    average(own, &wmsr_filter(own, received, f).retained)
}

/// Uniform average, clamped to the range of its inputs so rounding never
/// pushes a convex combination outside it. `sorted` must be ascending.
fn average(own: f64, sorted: &[f64]) -> f64 {
    let sum = sorted.iter().fold(own, |acc, v| acc + v);
    let mean = sum / (sorted.len() + 1) as f64;
    let lo = sorted.first().map_or(own, |&v| v.min(own));
    let hi = sorted.last().map_or(own, |&v| v.max(own));
    mean.clamp(lo, hi)
}

/// True iff every node outside `set` has at most `f` neighbors inside it.
pub fn is_f_local(g: &Graph, set: &[usize], f: usize) -> Result<bool> {
    let mut member = alloc::vec![false; g.n()];
    for &v in set {
        if v >= g.n() {
            return Err(Error::NodeOutOfRange { node: v, n: g.n() });
        }
        member[v] = true;
    }
    Ok((0..g.n())
        .filter(|&i| !member[i])
        .all(|i| g.neighbor_iter(i).filter(|&j| member[j]).count() <= f))
}

/// True iff at most `f` nodes are in `set` (duplicates ignored).
pub fn is_f_total(set: &[usize], f: usize) -> bool {
    let mut v = set.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len() <= f
}
