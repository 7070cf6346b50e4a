//! Experiment runner around `dmnai-core`: input resolution, replicas,
//! trace files and scoring.

pub mod cli;
pub mod commands;
pub mod output;
pub mod spec;

pub use commands::Metric;
pub use output::{FinalState, GraphSummary, TraceDocument};
pub use spec::{ExperimentSpec, GraphSource, Model, SeedSource};
