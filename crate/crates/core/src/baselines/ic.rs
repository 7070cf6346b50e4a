use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::engine::{RoundTrace, StanceCounts};
use crate::error::{Error, Result};
use crate::graph::{NodeIndex, SocialGraph};
use crate::stance::Stance;
use crate::state::AttitudeState;

/// Activation probability override for one edge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeProbability {
    pub source: String,
    pub target: String,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IcConfig {
    /// `P_e` for every edge without an override.
    pub edge_probability: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub edge_probabilities: Vec<EdgeProbability>,
    pub master_seed: u64,
}

impl Default for IcConfig {
    fn default() -> Self {
        IcConfig { edge_probability: 0.1, edge_probabilities: Vec::new(), master_seed: 0 }
    }
}

impl IcConfig {
    pub fn validate(&self) -> Result<()> {
        let all = std::iter::once(self.edge_probability).chain(self.edge_probabilities.iter().map(|e| e.probability));
        for p in all {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::param(format!("edge probability {p} outside [0, 1]")));
            }
        }
        Ok(())
    }
}

/// Activation sets per round; entry 0 is the seed set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IcOutput {
    pub rounds: Vec<Vec<NodeIndex>>,
    pub active: Vec<bool>,
}

impl IcOutput {
    pub fn active_count(&self) -> usize {
        self.active.iter().filter(|&&a| a).count()
    }

    /// Final state in stance form: active nodes hold `1` on `topic`, the rest are unknown.
    pub fn to_state(&self, topic_count: usize, topic: usize) -> Result<AttitudeState> {
        let mut state = AttitudeState::new(self.active.len(), topic_count, 0.0)?;
        for (v, _) in self.active.iter().enumerate().filter(|(_, &a)| a) {
            state.set_stance(v, topic, Stance::Negative);
        }
        Ok(state)
    }
}

/// Independent Cascade: every node activated in round `t` gets one chance to
/// activate each inactive out-neighbour in round `t + 1`. Stops when a round
/// activates nothing.
pub fn run_ic<R: Rng + ?Sized>(
    graph: &SocialGraph,
    seeds: &[NodeIndex],
    config: &IcConfig,
    rng: &mut R,
) -> Result<IcOutput> {
    config.validate()?;
    let mut overrides = HashMap::new();
    for e in &config.edge_probabilities {
        let u = graph.index_of(&e.source).ok_or_else(|| Error::UnknownNode(e.source.clone()))?;
        let v = graph.index_of(&e.target).ok_or_else(|| Error::UnknownNode(e.target.clone()))?;
        overrides.insert((u, v), e.probability);
    }

    let n = graph.node_count();
    let mut active = vec![false; n];
    let mut frontier = Vec::new();
    for &s in seeds {
        if s >= n {
            return Err(Error::UnknownNode(format!("#{s}")));
        }
        if !active[s] {
            active[s] = true;
            frontier.push(s);
        }
    }
    frontier.sort_unstable();
    let mut rounds = vec![frontier.clone()];

    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &u in &frontier {
            for &v in graph.out_neighbors(u) {
                if active[v] {
                    continue;
                }
                let p = overrides.get(&(u, v)).copied().unwrap_or(config.edge_probability);
                // random() is in [0, 1): p = 1 always fires, p = 0 never does.
                if rng.random::<f64>() < p {
                    active[v] = true;
                    next.push(v);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort_unstable();
        rounds.push(next.clone());
        frontier = next;
    }
    Ok(IcOutput { rounds, active })
}

/// Round records in the same schema as the main engine; active nodes are
/// reported under stance `1`. Padded with idle rounds up to `min_rounds`.
pub fn ic_round_traces(output: &IcOutput, topic: usize, min_rounds: usize) -> Vec<RoundTrace> {
    let n = output.active.len();
    let mut total = 0;
    let mut traces = Vec::new();
    let last = (output.rounds.len() - 1).max(min_rounds);
    for round in 0..=last {
        let new = output.rounds.get(round).map_or(0, Vec::len);
        total += new;
        let counts = StanceCounts { positive: 0, neutral: 0, negative: total, unknown: n - total };
        let mut r = RoundTrace::initial(topic, counts);
        r.round = round;
        if round > 0 {
            r.new_adjacent = new;
            r.adjacent_updates = new;
        }
        traces.push(r);
    }
    traces
}
