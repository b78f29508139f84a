//! Maximum-robustness graphs with provably minimal edge sets.
//!
//! * [`graph`]: bit-row adjacency, complements, induced counts, cliques.
//! * [`oracle`]: exact r- and (r,s)-robustness by exhaustive enumeration.
//! * [`certificates`]: closed-form necessary conditions and the exact
//!   (γ,γ) spanning-subgraph test.
//! * [`construction`]: γ-MERG and (γ,γ)-MERG builders with recipes.
//! * [`wmsr`], [`scenario`], [`sim`]: W-MSR resilient consensus under
//!   malicious and Byzantine agents.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod certificates;
mod clique;
pub mod construction;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod rng;
pub mod scenario;
pub mod sim;
pub mod wmsr;

pub use certificates::{certificate_report, gamma, CertificateReport};
pub use construction::{construct, construct_gamma_gamma_merg, construct_gamma_merg, ConstructionRecipe, MergKind};
pub use error::{Error, Result};
pub use graph::{Graph, NodeSet};
pub use oracle::{Oracle, RobustnessVerdict, Serial, SubsetPair, Target};
pub use scenario::{Adversary, AdversaryStrategy, Scenario};
pub use sim::{run_simulation, AgentRole, SimConfig, Trajectory};
