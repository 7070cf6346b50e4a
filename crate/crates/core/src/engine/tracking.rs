use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{NodeIndex, TopicId};
use crate::stance::Stance;
use crate::state::AttitudeState;

/// Number of nodes holding each stance on one topic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct StanceCounts {
    pub positive: usize,
    pub neutral: usize,
    pub negative: usize,
    pub unknown: usize,
}

impl StanceCounts {
    pub fn known(&self) -> usize {
        self.positive + self.neutral + self.negative
    }

    pub fn total(&self) -> usize {
        self.known() + self.unknown
    }

    pub fn of(stances: &[Stance]) -> Self {
        let mut c = StanceCounts::default();
        for s in stances {
            match s {
                Stance::Unknown => c.unknown += 1,
                Stance::Positive => c.positive += 1,
                Stance::Neutral => c.neutral += 1,
                Stance::Negative => c.negative += 1,
            }
        }
        c
    }
}

#[derive(Debug, Clone)]
struct TopicSets {
    /// Members per known stance, indexed by [`Stance::known_index`].
    by_stance: [BTreeSet<NodeIndex>; 3],
    /// Nodes that know the topic, in order of activation.
    newly_active: Vec<NodeIndex>,
    in_newly_active: Vec<bool>,
    adj_visited: Vec<bool>,
}

/// Per-topic bookkeeping sets of the main loop: the stance partitions, the
/// ordered set of active nodes and the adjacent-phase visited set.
#[derive(Debug, Clone)]
pub struct TrackingSets {
    node_count: usize,
    topics: Vec<TopicSets>,
}

impl TrackingSets {
    /// Initial sets: every node with a known stance is active, in index order.
    pub fn from_state(state: &AttitudeState) -> Self {
        let n = state.node_count();
        let topics = (0..state.topic_count())
            .map(|t| {
                let mut sets = TopicSets {
                    by_stance: Default::default(),
                    newly_active: Vec::new(),
                    in_newly_active: vec![false; n],
                    adj_visited: vec![false; n],
                };
                for v in 0..n {
                    if let Some(k) = state.stance(v, t).known_index() {
                        sets.by_stance[k].insert(v);
                        sets.newly_active.push(v);
                        sets.in_newly_active[v] = true;
                    }
                }
                sets
            })
            .collect();
        TrackingSets { node_count: n, topics }
    }

    pub fn newly_active(&self, topic: TopicId) -> &[NodeIndex] {
        &self.topics[topic].newly_active
    }

    pub fn stance_members(&self, topic: TopicId, stance: Stance) -> Option<&BTreeSet<NodeIndex>> {
        stance.known_index().map(|k| &self.topics[topic].by_stance[k])
    }

    pub fn adj_visited(&self, topic: TopicId, node: NodeIndex) -> bool {
        self.topics[topic].adj_visited[node]
    }

    pub(crate) fn mark_adj_visited(&mut self, topic: TopicId, node: NodeIndex) {
        self.topics[topic].adj_visited[node] = true;
    }

    pub(crate) fn clear_adj_visited(&mut self, topic: TopicId) {
        self.topics[topic].adj_visited.fill(false);
    }

    /// Moves `node` from the set of `from` to the set of `to`.
    pub(crate) fn record_change(&mut self, topic: TopicId, node: NodeIndex, from: Stance, to: Stance) {
        let sets = &mut self.topics[topic];
        if let Some(k) = from.known_index() {
            sets.by_stance[k].remove(&node);
        }
        if let Some(k) = to.known_index() {
            sets.by_stance[k].insert(node);
        }
    }

    /// Appends `node` to the active list. Returns `false` if it was already there.
    pub(crate) fn activate(&mut self, topic: TopicId, node: NodeIndex) -> bool {
        let sets = &mut self.topics[topic];
        if sets.in_newly_active[node] {
            return false;
        }
        sets.in_newly_active[node] = true;
        sets.newly_active.push(node);
        true
    }

    pub fn counts(&self, topic: TopicId) -> StanceCounts {
        let [positive, neutral, negative] = self.topics[topic].by_stance.each_ref().map(BTreeSet::len);
        StanceCounts { positive, neutral, negative, unknown: self.node_count - positive - neutral - negative }
    }

    /// Cross-checks the sets against `state` for one topic.
    pub fn verify(&self, state: &AttitudeState, topic: TopicId) -> Result<()> {
        let sets = &self.topics[topic];
        let mut seen = 0;
        for (k, members) in sets.by_stance.iter().enumerate() {
            for &v in members {
                if state.stance(v, topic).known_index() != Some(k) {
                    return Err(Error::Invariant(format!(
                        "node {v} listed under {} on topic {topic} but holds {}",
                        Stance::KNOWN[k],
                        state.stance(v, topic)
                    )));
                }
            }
            seen += members.len();
        }
        let known = (0..self.node_count).filter(|&v| state.stance(v, topic).is_known()).count();
        if seen != known {
            return Err(Error::Invariant(format!(
                "topic {topic}: stance sets hold {seen} nodes but {known} know the topic"
            )));
        }
        if sets.newly_active.len() != known {
            return Err(Error::Invariant(format!(
                "topic {topic}: {} active nodes but {known} know the topic",
                sets.newly_active.len()
            )));
        }
        Ok(())
    }
}
