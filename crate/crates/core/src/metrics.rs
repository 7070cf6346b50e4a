//! Scoring simulated outcomes against a reference and extracting plot-ready curves.
//!
//! A reference lists `node,topic,stance` rows. Nodes it does not mention are
//! taken as unknown (never reached) on that topic.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::engine::RoundTrace;
use crate::error::{Error, Result};
use crate::graph::{SocialGraph, TopicId};
use crate::stance::Stance;
use crate::state::AttitudeState;

/// Observed final stances, one row per topic, indexed by node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceTrace {
    node_count: usize,
    stances: Vec<Vec<Stance>>,
}

#[derive(Debug, Deserialize, Serialize)]
struct ReferenceRow {
    node: String,
    topic: usize,
    stance: String,
}

impl ReferenceTrace {
    pub fn from_state(state: &AttitudeState) -> Self {
        ReferenceTrace {
            node_count: state.node_count(),
            stances: (0..state.topic_count()).map(|t| state.topic_stances(t)).collect(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn topic_count(&self) -> usize {
        self.stances.len()
    }

    pub fn stance(&self, node: usize, topic: TopicId) -> Stance {
        self.stances[topic][node]
    }

    /// Parses a `node,topic,stance` CSV, resolving ids against `graph`.
    pub fn read_csv<R: Read>(reader: R, graph: &SocialGraph) -> Result<Self> {
        let mut stances = vec![vec![Stance::Unknown; graph.node_count()]; graph.topic_count()];
        let mut seen = HashSet::new();
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers()?.clone();
        if headers.iter().collect::<Vec<_>>() != ["node", "topic", "stance"] {
            return Err(Error::Format(format!("reference header must be `node,topic,stance`, got `{}`", headers.iter().collect::<Vec<_>>().join(","))));
        }
        for (i, row) in rdr.deserialize::<ReferenceRow>().enumerate() {
            let line = i + 2;
            let row = row.map_err(|e| Error::parse(line, e.to_string()))?;
            let node = graph.index_of(&row.node).ok_or_else(|| {
                Error::UniverseMismatch(format!("reference node `{}` is not in the graph", row.node))
            })?;
            if row.topic >= graph.topic_count() {
                return Err(Error::UniverseMismatch(format!(
                    "reference topic {} but the graph has {} topics",
                    row.topic,
                    graph.topic_count()
                )));
            }
            let stance: Stance = row.stance.parse().map_err(|e: Error| Error::parse(line, e.to_string()))?;
            if !seen.insert((node, row.topic)) {
                return Err(Error::parse(line, format!("duplicate entry for `{}` on topic {}", row.node, row.topic)));
            }
            stances[row.topic][node] = stance;
        }
        Ok(ReferenceTrace { node_count: graph.node_count(), stances })
    }

    /// Writes every (node, topic) pair, unknown ones included.
    pub fn write_csv<W: Write>(&self, graph: &SocialGraph, out: W) -> Result<()> {
        if graph.node_count() != self.node_count {
            return Err(Error::UniverseMismatch(format!(
                "graph has {} nodes, reference {}",
                graph.node_count(),
                self.node_count
            )));
        }
        let mut w = csv::Writer::from_writer(out);
        for node in 0..self.node_count {
            for topic in 0..self.topic_count() {
                w.serialize(ReferenceRow {
                    node: graph.node_id(node).to_owned(),
                    topic,
                    stance: self.stance(node, topic).label().to_owned(),
                })?;
            }
        }
        w.flush().map_err(|e| Error::Format(e.to_string()))?;
        Ok(())
    }

    fn check(&self, sim: &AttitudeState, topic: TopicId) -> Result<()> {
        if sim.node_count() != self.node_count {
            return Err(Error::UniverseMismatch(format!(
                "simulation has {} nodes, reference {}",
                sim.node_count(),
                self.node_count
            )));
        }
        if sim.topic_count() != self.topic_count() {
            return Err(Error::UniverseMismatch(format!(
                "simulation has {} topics, reference {}",
                sim.topic_count(),
                self.topic_count()
            )));
        }
        if topic >= self.topic_count() {
            return Err(Error::TopicOutOfRange { topic, topic_count: self.topic_count() });
        }
        if self.node_count == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(())
    }

    fn agreement(&self, sim: &AttitudeState, topic: TopicId, same: impl Fn(Stance, Stance) -> bool) -> Result<f64> {
        self.check(sim, topic)?;
        let hits = (0..self.node_count)
            .filter(|&v| same(sim.stance(v, topic), self.stance(v, topic)))
            .count();
        Ok(hits as f64 / self.node_count as f64)
    }
}

/// Fraction of nodes whose reached / not-reached status matches the reference.
pub fn range_accuracy(sim: &AttitudeState, reference: &ReferenceTrace, topic: TopicId) -> Result<f64> {
    reference.agreement(sim, topic, |a, b| a.is_known() == b.is_known())
}

/// Fraction of nodes holding exactly the reference stance.
pub fn stance_accuracy(sim: &AttitudeState, reference: &ReferenceTrace, topic: TopicId) -> Result<f64> {
    reference.agreement(sim, topic, |a, b| a == b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    /// `(round, cumulative affected)`.
    AffectedCumulative,
    /// `(round, count per stance)`.
    StanceDistribution,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<usize>>,
}

impl Curve {
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

/// Curve for one topic's round records.
pub fn curve_extract(rounds: &[RoundTrace], kind: CurveKind) -> Result<Curve> {
    let first = rounds.first().ok_or(Error::EmptyTrace)?;
    if rounds.iter().any(|r| r.topic != first.topic) {
        return Err(Error::param("curve extraction expects the records of a single topic"));
    }
    Ok(match kind {
        CurveKind::AffectedCumulative => Curve {
            columns: vec!["round", "affected_total"],
            rows: rounds.iter().map(|r| vec![r.round, r.affected_total]).collect(),
        },
        CurveKind::StanceDistribution => Curve {
            columns: vec!["round", "stance_0", "stance_0.5", "stance_1", "unknown"],
            rows: rounds
                .iter()
                .map(|r| vec![r.round, r.counts.positive, r.counts.neutral, r.counts.negative, r.counts.unknown])
                .collect(),
        },
    })
}
