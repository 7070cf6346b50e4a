use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::KernelParams;

/// Lifetime of the set of nodes already updated by the adjacent phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VadjScope {
    /// Built once for the whole run: a node gets at most one adjacent update per topic.
    #[default]
    Persistent,
    /// Cleared at the start of every round.
    PerRound,
}

/// Every free parameter of a DM-NAI run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulationConfig {
    pub kernel: KernelParams,
    /// Number of dissemination rounds `K`.
    pub rounds: usize,
    /// Similarity threshold `tau` for influence between non-adjacent nodes.
    pub sim_threshold: f64,
    /// Fraction of the newly active nodes that act as non-adjacent influencers each round.
    pub r1: f64,
    /// Fraction of the nodes outside the adjacent set that receive non-adjacent influence.
    pub r2: f64,
    /// Share of the non-adjacent receivers drawn from nodes already aware of the topic.
    pub aware_ratio: f64,
    pub init_perseverance: f64,
    pub vadj_scope: VadjScope,
    /// Require `sim(q, v) > sim_threshold` before non-adjacent influence.
    pub nadj_tau_gate: bool,
    pub master_seed: u64,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        SimulationConfig {
            kernel: KernelParams::default(),
            rounds: 10,
            sim_threshold: 0.3,
            r1: 0.5,
            r2: 0.1,
            aware_ratio: 0.7,
            init_perseverance: 0.5,
            vadj_scope: VadjScope::Persistent,
            nadj_tau_gate: true,
            master_seed: 0,
        }
    }
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        self.kernel.validate()?;
        if self.rounds == 0 {
            return Err(Error::param("rounds must be at least 1"));
        }
        for (name, v) in [
            ("sim_threshold", self.sim_threshold),
            ("r1", self.r1),
            ("r2", self.r2),
            ("init_perseverance", self.init_perseverance),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::param(format!("{name} = {v} outside [0, 1]")));
            }
        }
        if !(0.5..=1.0).contains(&self.aware_ratio) {
            return Err(Error::param(format!("aware_ratio = {} outside [0.5, 1]", self.aware_ratio)));
        }
        Ok(())
    }
}

/// `round_half_up(fraction * len)`, at least one when both are positive.
pub fn sample_size(fraction: f64, len: usize) -> usize {
    if len == 0 || fraction <= 0.0 {
        return 0;
    }
    let raw = (fraction * len as f64 + 0.5).floor() as usize;
    raw.clamp(1, len)
}
