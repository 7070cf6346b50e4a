//! Information dissemination on directed social graphs with multi-topic
//! stance dynamics and influence between non-adjacent users, alongside an
//! Independent Cascade baseline and trace scoring.
//!
//! The usual flow: build a [`SocialGraph`] (from an edge list, a JSON
//! document, or [`generate_synthetic`]), pick [`SeedAssignment`]s, then call
//! [`run_simulation`] with a [`SimulationConfig`] and an rng from
//! [`rng::derive_replica_rng`].

pub mod attitude;
pub mod baselines;
pub mod engine;
pub mod error;
pub mod graph;
pub mod kernel;
pub mod metrics;
pub mod rng;
pub mod stance;
pub mod state;

pub use engine::{run_simulation, run_topics, RoundTrace, SimulationConfig, SimulationOutput, StanceCounts};
pub use error::{Error, Result};
pub use graph::{generate_synthetic, GeneratorKind, NodeIndex, SeedAssignment, SocialGraph, TopicId};
pub use kernel::{KernelParams, TransferMode};
pub use stance::Stance;
pub use state::AttitudeState;
