//! Adversary strategies and the scripted experiments: who misbehaves, what
//! they send, and how normal agents are initialized.

use alloc::vec::Vec;
use core::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rng::SeededRng;
use crate::sim::AgentRole;

/// Source of the values misbehaving agents transmit.
pub trait Adversary {
    /// Value `agent` sends to `receiver` at step `t`.
    fn value(&self, agent: usize, receiver: usize, t: usize) -> f64;

    /// Whether every receiver gets the same value.
    fn receiver_uniform(&self) -> bool;

    /// Whether this strategy can act for an agent with `role`. Malicious
    /// agents broadcast, so they need a receiver-uniform strategy.
    fn drives(&self, role: AgentRole) -> bool {
        match role {
            AgentRole::Normal => true,
            AgentRole::Malicious => self.receiver_uniform(),
            AgentRole::Byzantine => true,
        }
    }
}

/// Oscillating broadcast: `1080 cos(t/5)` from even agents, `1080 sin(t/5)`
/// from odd ones.
pub fn trig_malicious_value(agent: usize, t: usize) -> f64 {
    let phase = t as f64 / 5.0;
    if agent % 2 == 0 {
        1080.0 * libm::cos(phase)
    } else {
        1080.0 * libm::sin(phase)
    }
}

/// The two Byzantine edge-removal experiments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ByzantineScenario {
    /// Agents 0 and 1 send 100 to receivers `0..=ceil(n/2)` and 0 to the rest.
    Gamma,
    /// Agent 3 sends 100 to everyone; the other adversaries send 0.
    GammaGamma,
}

pub fn byzantine_split_value(
    agent: usize,
    receiver: usize,
    n: usize,
    _t: usize,
    scenario: ByzantineScenario,
) -> f64 {
    let high = match scenario {
        ByzantineScenario::Gamma => receiver <= n.div_ceil(2),
        ByzantineScenario::GammaGamma => agent == 3,
    };
    if high {
        100.0
    } else {
        0.0
    }
}

/// Built-in adversary behaviors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AdversaryStrategy {
    /// No adversaries; any non-normal role is an error.
    Silent,
    TrigMalicious,
    ByzantineSplit { scenario: ByzantineScenario, n: usize },
}

impl Adversary for AdversaryStrategy {
    fn value(&self, agent: usize, receiver: usize, t: usize) -> f64 {
        match *self {
            Self::Silent => 0.0,
            Self::TrigMalicious => trig_malicious_value(agent, t),
            Self::ByzantineSplit { scenario, n } => byzantine_split_value(agent, receiver, n, t, scenario),
        }
    }

    fn receiver_uniform(&self) -> bool {
        !matches!(
            self,
            Self::ByzantineSplit {
                scenario: ByzantineScenario::Gamma,
                ..
            }
        )
    }

    fn drives(&self, role: AgentRole) -> bool {
        match (self, role) {
            (_, AgentRole::Normal) => true,
            (Self::Silent, _) => false,
            (_, AgentRole::Malicious) => self.receiver_uniform(),
            (_, AgentRole::Byzantine) => true,
        }
    }
}

/// Scripted experiment setups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    /// All agents normal, states on `[-1000, 1000]`.
    Nominal,
    /// Agents `0..f` broadcast [`trig_malicious_value`]; normal states on
    /// `[-1000, 1000]`.
    MaliciousTrig { f: usize },
    /// Byzantine agents 0, 1. Normal states: `[15, 100]` for 2..=5,
    /// `[0, 7]` for 6..=n-2, `[8, 14]` for n-1.
    ByzantineGamma,
    /// Byzantine agents 0..=3. Normal states: `[50, 100]` for 4..=n-2,
    /// `[1, 50]` for n-1.
    ByzantineGammaGamma,
}

impl Scenario {
    pub const fn name(&self) -> &'static str {
        match self {
            Self::Nominal => "none",
            Self::MaliciousTrig { .. } => "viiA-malicious",
            Self::ByzantineGamma => "viiB-gamma",
            Self::ByzantineGammaGamma => "viiB-gammagamma",
        }
    }

    const fn min_nodes(&self) -> usize {
        match self {
            Self::Nominal => 1,
            Self::MaliciousTrig { f } => *f + 1,
            Self::ByzantineGamma => 7,
            Self::ByzantineGammaGamma => 6,
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        if n < self.min_nodes() {
            return Err(Error::ScenarioTooSmall {
                scenario: self.name(),
                min: self.min_nodes(),
                n,
            });
        }
        Ok(())
    }

    /// Number of misbehaving agents, which is also the W-MSR parameter the
    /// experiment uses.
    pub const fn adversary_count(&self) -> usize {
        match self {
            Self::Nominal => 0,
            Self::MaliciousTrig { f } => *f,
            Self::ByzantineGamma => 2,
            Self::ByzantineGammaGamma => 4,
        }
    }

    pub fn roles(&self, n: usize) -> Result<Vec<AgentRole>> {
        self.check(n)?;
        let k = self.adversary_count();
        let role = match self {
            Self::MaliciousTrig { .. } => AgentRole::Malicious,
            _ => AgentRole::Byzantine,
        };
        Ok((0..n)
            .map(|i| if i < k { role } else { AgentRole::Normal })
            .collect())
    }

    pub fn adversary(&self, n: usize) -> AdversaryStrategy {
        match self {
            Self::Nominal => AdversaryStrategy::Silent,
            Self::MaliciousTrig { .. } => AdversaryStrategy::TrigMalicious,
            Self::ByzantineGamma => AdversaryStrategy::ByzantineSplit {
                scenario: ByzantineScenario::Gamma,
                n,
            },
            Self::ByzantineGammaGamma => AdversaryStrategy::ByzantineSplit {
                scenario: ByzantineScenario::GammaGamma,
                n,
            },
        }
    }

    /// Sampling interval per node. Adversaries get the degenerate `[0, 0]`;
    /// their initial values are never read.
    pub fn intervals(&self, n: usize) -> Result<Vec<(f64, f64)>> {
        self.check(n)?;
        Ok((0..n)
            .map(|i| match self {
                Self::Nominal => (-1000.0, 1000.0),
                Self::MaliciousTrig { f } if i < *f => (0.0, 0.0),
                Self::MaliciousTrig { .. } => (-1000.0, 1000.0),
                Self::ByzantineGamma => match i {
                    0 | 1 => (0.0, 0.0),
                    _ if i == n - 1 => (8.0, 14.0),
                    2..=5 => (15.0, 100.0),
                    _ => (0.0, 7.0),
                },
                Self::ByzantineGammaGamma => match i {
                    0..=3 => (0.0, 0.0),
                    _ if i == n - 1 => (1.0, 50.0),
                    _ => (50.0, 100.0),
                },
            })
            .collect())
    }

    /// The single edge whose removal the edge-removal experiments
    /// demonstrate, for the node counts they use.
    pub const fn demonstration_edge(&self, n: usize) -> Option<(usize, usize)> {
        match (self, n) {
            (Self::ByzantineGamma, 9) => Some((3, 8)),
            (Self::ByzantineGamma, 10) => Some((4, 9)),
            (Self::ByzantineGammaGamma, 9) => Some((7, 8)),
            (Self::ByzantineGammaGamma, 10) => Some((0, 2)),
            _ => None,
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Draws one state per node, in node order, from `intervals`.
pub fn sample_states(intervals: &[(f64, f64)], seed: u64) -> Result<Vec<f64>> {
    let mut rng = SeededRng::new(seed);
    intervals
        .iter()
        .map(|&(lo, hi)| {
            if lo.is_nan() || hi.is_nan() || lo > hi {
                return Err(Error::BadInterval { lo, hi });
            }
            Ok(rng.uniform(lo, hi))
        })
        .collect()
}

/// Reproducible initial states for `scenario` on `n` nodes.
pub fn initial_states(n: usize, scenario: Scenario, seed: u64) -> Result<Vec<f64>> {
    sample_states(&scenario.intervals(n)?, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trig_values() {
        assert_eq!(trig_malicious_value(0, 0), 1080.0);
        assert_eq!(trig_malicious_value(1, 0), 0.0);
        assert!((trig_malicious_value(2, 5) - 583.526_490).abs() < 1e-5);
        assert!((trig_malicious_value(3, 5) - 1080.0 * libm::sin(1.0)).abs() < 1e-12);
    }

    #[test]
    fn byzantine_values() {
        use ByzantineScenario::*;
        assert_eq!(byzantine_split_value(0, 2, 9, 0, Gamma), 100.0);
        assert_eq!(byzantine_split_value(1, 5, 9, 4, Gamma), 100.0);
        assert_eq!(byzantine_split_value(1, 8, 9, 0, Gamma), 0.0);
        assert_eq!(byzantine_split_value(3, 7, 10, 0, GammaGamma), 100.0);
        assert_eq!(byzantine_split_value(2, 7, 10, 0, GammaGamma), 0.0);
    }

    #[test]
    fn scenario_intervals() {
        let states = initial_states(9, Scenario::ByzantineGamma, 11).unwrap();
        assert!((8.0..=14.0).contains(&states[8]));
        assert!(states[2..=5].iter().all(|x| (15.0..=100.0).contains(x)));
        assert!(states[6..=7].iter().all(|x| (0.0..=7.0).contains(x)));

        let states = initial_states(49, Scenario::MaliciousTrig { f: 12 }, 0).unwrap();
        assert!(states[12..].iter().all(|x| (-1000.0..=1000.0).contains(x)));

        let states = initial_states(10, Scenario::ByzantineGammaGamma, 5).unwrap();
        assert!(states[4..9].iter().all(|x| (50.0..=100.0).contains(x)));
        assert!((1.0..=50.0).contains(&states[9]));

        assert_eq!(sample_states(&[(2.5, 2.5)], 99).unwrap(), alloc::vec![2.5]);
        assert!(sample_states(&[(3.0, 1.0)], 0).is_err());
        assert_eq!(
            initial_states(6, Scenario::ByzantineGamma, 0),
            Err(Error::ScenarioTooSmall {
                scenario: "viiB-gamma",
                min: 7,
                n: 6
            })
        );
    }

    #[test]
    fn seeded_states_repeat() {
        let a = initial_states(50, Scenario::Nominal, 17).unwrap();
        assert_eq!(a, initial_states(50, Scenario::Nominal, 17).unwrap());
        assert_ne!(a, initial_states(50, Scenario::Nominal, 18).unwrap());
    }

    #[test]
    fn strategy_role_compatibility() {
        let split = Scenario::ByzantineGamma.adversary(9);
        assert!(!split.drives(AgentRole::Malicious));
        assert!(split.drives(AgentRole::Byzantine));
        assert!(Scenario::ByzantineGammaGamma.adversary(9).drives(AgentRole::Malicious));
        assert!(!AdversaryStrategy::Silent.drives(AgentRole::Byzantine));
        assert!(AdversaryStrategy::TrigMalicious.drives(AgentRole::Malicious));
    }
}
