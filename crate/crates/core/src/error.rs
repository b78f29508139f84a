use thiserror::Error;

/// Errors raised by graph construction, the exact oracle and the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a graph needs at least one node")]
    NoNodes,
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("node {node} is out of range for a graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("node count mismatch: {left} vs {right}")]
    NodeCountMismatch { left: usize, right: usize },
    #[error("exact check infeasible: {n} nodes exceeds the limit of {limit}")]
    ExactCapExceeded { n: usize, limit: usize },
    #[error("node set must be nonempty")]
    EmptySet,
    #[error("robustness parameter r must be at least 1")]
    ZeroR,
    #[error("parameter s = {s} must lie in 1..={n}")]
    SOutOfRange { s: usize, n: usize },
    #[error("graph does not satisfy the target {0} beforehand")]
    TargetNotMet(crate::oracle::Target),
    #[error("operation requires an even node count, got {0}")]
    RequiresEvenNodes(usize),
    #[error("construction requires n >= 2, got {0}")]
    TooFewNodes(usize),
    #[error("edge ({0}, {1}) is not present")]
    MissingEdge(usize, usize),
    #[error("per-node vector has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("agent {node} has role {role} which the adversary strategy cannot drive")]
    RoleStrategyMismatch {
        node: usize,
        role: crate::sim::AgentRole,
    },
    #[error("scenario {scenario} needs at least {min} nodes, got {n}")]
    ScenarioTooSmall {
        scenario: &'static str,
        min: usize,
        n: usize,
    },
    #[error("simulation needs at least one step")]
    ZeroSteps,
    #[error("invalid interval [{lo}, {hi}]")]
    BadInterval { lo: f64, hi: f64 },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
