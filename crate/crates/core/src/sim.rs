//! Synchronous discrete-time consensus with misbehaving agents.
//!
//! Each round every agent emits a value (normal agents their state,
//! adversaries whatever their strategy dictates, possibly per receiver),
//! then every normal agent applies [`wmsr_step`] to what it received.
//! A run is a pure function of its [`SimConfig`] and strategy.

use alloc::vec::Vec;
use core::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scenario::Adversary;
use crate::wmsr::{is_f_local, wmsr_filter, wmsr_step};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AgentRole {
    Normal,
    /// Ignores the update rule but sends one value to all neighbors.
    Malicious,
    /// Ignores the update rule and may send each neighbor a different value.
    Byzantine,
}

impl AgentRole {
    pub const fn as_str(self) -> &'static str {
        match self {
            Self::Normal => "normal",
            Self::Malicious => "malicious",
            Self::Byzantine => "byzantine",
        }
    }
}

impl fmt::Display for AgentRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightRule {
    /// `1 / (k + 1)` on the own value and each of the `k` retained values.
    #[default]
    Uniform,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub graph: Graph,
    pub roles: Vec<AgentRole>,
    /// W-MSR parameter.
    pub f: usize,
    pub steps: usize,
    /// Seed the initial states were drawn with; kept for provenance.
    pub seed: u64,
    pub initial_states: Vec<f64>,
    pub weight_rule: WeightRule,
    /// Smallest weight considered admissible; reported, never enforced.
    pub alpha_floor: f64,
}

impl SimConfig {
    pub fn adversaries(&self) -> Vec<usize> {
        (0..self.roles.len())
            .filter(|&i| self.roles[i] != AgentRole::Normal)
            .collect()
    }

    /// At most `f` agents misbehave in total.
    pub fn is_f_total(&self) -> bool {
        self.adversaries().len() <= self.f
    }

    /// No normal agent has more than `f` misbehaving neighbors.
    pub fn is_f_local(&self) -> Result<bool> {
        is_f_local(&self.graph, &self.adversaries(), self.f)
    }
}

/// Per-step summaries over normal agents.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Metrics {
    /// `max - min` of normal states, per step.
    pub spread: Vec<f64>,
    pub normal_min: Vec<f64>,
    pub normal_max: Vec<f64>,
    /// `[m(0), M(0)]`, the hull of normal initial states.
    pub hull: (f64, f64),
    /// Smallest weight any update used.
    pub min_weight: f64,
    pub weights_admissible: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    /// `states[t][i]`, for `t` in `0..=steps`. Adversary entries hold the
    /// value sent to their lowest-indexed neighbor.
    pub states: Vec<Vec<f64>>,
    pub roles: Vec<AgentRole>,
    pub f: usize,
    pub metrics: Metrics,
}

impl Trajectory {
    pub fn steps(&self) -> usize {
        self.states.len() - 1
    }

    pub fn final_spread(&self) -> f64 {
        *self.metrics.spread.last().expect("at least one row")
    }

    /// Final normal spread at most `tol`.
    pub fn converged(&self, tol: f64) -> bool {
        self.final_spread() <= tol
    }

    /// Every normal state at every step lies in the initial normal hull.
    pub fn stays_in_hull(&self) -> bool {
        let (lo, hi) = self.metrics.hull;
        self.metrics.normal_min.iter().all(|&m| m >= lo) && self.metrics.normal_max.iter().all(|&m| m <= hi)
    }

    /// Normal extrema never widen from one step to the next.
    pub fn hull_monotone(&self) -> bool {
        let m = &self.metrics;
        m.normal_min.windows(2).all(|w| w[1] >= w[0]) && m.normal_max.windows(2).all(|w| w[1] <= w[0])
    }
}

fn check_len(got: usize, expected: usize) -> Result<()> {
    if got == expected {
        Ok(())
    } else {
        Err(Error::LengthMismatch { got, expected })
    }
}

/// Runs `config.steps` synchronous rounds.
pub fn run_simulation<A: Adversary + ?Sized>(config: &SimConfig, adversary: &A) -> Result<Trajectory> {
    let g = &config.graph;
    let n = g.n();
    check_len(config.roles.len(), n)?;
    check_len(config.initial_states.len(), n)?;
    if config.steps == 0 {
        return Err(Error::ZeroSteps);
    }
    if let Some(i) = (0..n).find(|&i| !adversary.drives(config.roles[i])) {
        return Err(Error::RoleStrategyMismatch {
            node: i,
            role: config.roles[i],
        });
    }
    let normal = |i: usize| config.roles[i] == AgentRole::Normal;
    let reference: Vec<usize> = (0..n).map(|i| g.neighbor_iter(i).next().unwrap_or(i)).collect();
    let log_row = |states: &[f64], t: usize| -> Vec<f64> {
        (0..n)
            .map(|i| {
                if normal(i) {
                    states[i]
                } else {
                    adversary.value(i, reference[i], t)
                }
            })
            .collect()
    };

    let mut states = config.initial_states.clone();
    let mut rows = Vec::with_capacity(config.steps + 1);
    rows.push(log_row(&states, 0));
    let mut min_weight = 1.0f64;
    let mut received = Vec::new();
    for t in 0..config.steps {
        let next: Vec<f64> = (0..n)
            .map(|i| {
                if !normal(i) {
                    return states[i];
                }
                received.clear();
                received.extend(g.neighbor_iter(i).map(|j| {
                    if normal(j) {
                        states[j]
                    } else {
                        adversary.value(j, i, t)
                    }
                }));
                let kept = wmsr_filter(states[i], &received, config.f).retained.len();
                min_weight = min_weight.min(1.0 / (kept + 1) as f64);
                wmsr_step(states[i], &received, config.f)
            })
            .collect();
        states = next;
        rows.push(log_row(&states, t + 1));
    }

    let metrics = summarize(&rows, &config.roles, min_weight, config.alpha_floor);
    Ok(Trajectory {
        states: rows,
        roles: config.roles.clone(),
        f: config.f,
        metrics,
    })
}

fn summarize(rows: &[Vec<f64>], roles: &[AgentRole], min_weight: f64, alpha_floor: f64) -> Metrics {
    let mut normal_min = Vec::with_capacity(rows.len());
    let mut normal_max = Vec::with_capacity(rows.len());
    for row in rows {
        let (lo, hi) = row
            .iter()
            .zip(roles)
            .filter(|(_, &r)| r == AgentRole::Normal)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (&x, _)| (lo.min(x), hi.max(x)));
        if lo > hi {
            normal_min.push(0.0);
            normal_max.push(0.0);
        } else {
            normal_min.push(lo);
            normal_max.push(hi);
        }
    }
    let spread = normal_min.iter().zip(&normal_max).map(|(lo, hi)| hi - lo).collect();
    Metrics {
        spread,
        hull: (normal_min[0], normal_max[0]),
        normal_min,
        normal_max,
        min_weight,
        weights_admissible: min_weight >= alpha_floor,
    }
}
