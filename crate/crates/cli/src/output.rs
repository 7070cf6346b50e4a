use std::fmt::Write as _;

use anyhow::{ensure, Result};
use serde::{Deserialize, Serialize};

use dmnai_core::graph::GraphBuilder;
use dmnai_core::metrics::ReferenceTrace;
use dmnai_core::{AttitudeState, RoundTrace, SocialGraph, Stance};
use dmnai_core::engine::TRACE_CSV_HEADER;

use crate::spec::ExperimentSpec;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub nodes: usize,
    pub edges: usize,
    pub topics: usize,
}

/// Final stance of every node on every topic, rows in node order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinalState {
    pub nodes: Vec<String>,
    pub stances: Vec<Vec<Stance>>,
}

impl FinalState {
    pub fn capture(graph: &SocialGraph, state: &AttitudeState) -> Self {
        FinalState {
            nodes: graph.node_ids().to_vec(),
            stances: (0..state.node_count()).map(|v| state.attitudes(v).to_vec()).collect(),
        }
    }

    pub fn topic_count(&self) -> usize {
        self.stances.first().map_or(0, Vec::len)
    }

    /// Rebuilds the node universe (no edges) and the attitude state.
    pub fn restore(&self) -> Result<(SocialGraph, AttitudeState)> {
        ensure!(self.nodes.len() == self.stances.len(), "final state has {} ids but {} rows", self.nodes.len(), self.stances.len());
        let z = self.topic_count();
        let mut builder = GraphBuilder::new();
        for id in &self.nodes {
            builder.add_node(id);
        }
        let universe = builder.build(z)?;
        let mut state = AttitudeState::new(self.nodes.len(), z, 0.0)?;
        for (v, row) in self.stances.iter().enumerate() {
            ensure!(row.len() == z, "ragged final state row for `{}`", self.nodes[v]);
            for (t, &s) in row.iter().enumerate() {
                state.set_stance(v, t, s);
            }
        }
        Ok((universe, state))
    }
}

/// One replica's complete record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub experiment: ExperimentSpec,
    pub replica: u64,
    pub graph: GraphSummary,
    pub rounds: Vec<RoundTrace>,
    pub final_state: FinalState,
}

impl TraceDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("trace document serializes");
        s.push('\n');
        s
    }

    pub fn reference(&self) -> Result<(SocialGraph, AttitudeState, ReferenceTrace)> {
        let (universe, state) = self.final_state.restore()?;
        let reference = ReferenceTrace::from_state(&state);
        Ok((universe, state, reference))
    }
}

/// Mean of each per-round column across replicas. Shorter traces are
/// extended with their last record.
pub fn aggregate_csv(traces: &[&[RoundTrace]]) -> String {
    let mut out = String::from(TRACE_CSV_HEADER);
    out.push('\n');
    let len = traces.iter().map(|t| t.len()).max().unwrap_or(0);
    let count = traces.len() as f64;
    for round in 0..len {
        let mut sums = [0.0f64; 7];
        for t in traces {
            let Some(r) = t.get(round).or(t.last()) else { continue };
            let c = &r.counts;
            let cols = [r.affected_total, r.new_adjacent, r.new_nonadjacent, c.positive, c.neutral, c.negative, c.unknown];
            let padded = round >= t.len();
            for (i, v) in cols.iter().enumerate() {
                // Padding rounds carry totals forward but report no new activations.
                if !(padded && (i == 1 || i == 2)) {
                    sums[i] += *v as f64;
                }
            }
        }
        let _ = write!(out, "{round}");
        for s in sums {
            let _ = write!(out, ",{:.4}", s / count);
        }
        out.push('\n');
    }
    out
}
