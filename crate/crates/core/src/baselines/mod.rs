//! Reference diffusion models to compare against.

mod ic;

pub use ic::{ic_round_traces, run_ic, EdgeProbability, IcConfig, IcOutput};
