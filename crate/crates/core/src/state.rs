use crate::error::{Error, Result};
use crate::graph::{NodeIndex, SeedAssignment, TopicId};
use crate::stance::Stance;

/// Stance and perseverance for every (node, topic) pair, stored row-major by
/// node so a node's full attitude distribution is one contiguous slice.
#[derive(Debug, Clone, PartialEq)]
pub struct AttitudeState {
    node_count: usize,
    topic_count: usize,
    stances: Vec<Stance>,
    perseverance: Vec<f64>,
}

impl AttitudeState {
    /// All stances unknown, all perseverance at `initial_perseverance`.
    pub fn new(node_count: usize, topic_count: usize, initial_perseverance: f64) -> Result<Self> {
        if topic_count == 0 {
            return Err(Error::NoTopics);
        }
        if !(0.0..=1.0).contains(&initial_perseverance) {
            return Err(Error::param(format!(
                "initial perseverance {initial_perseverance} outside [0, 1]"
            )));
        }
        let cells = node_count * topic_count;
        Ok(AttitudeState {
            node_count,
            topic_count,
            stances: vec![Stance::Unknown; cells],
            perseverance: vec![initial_perseverance; cells],
        })
    }

    pub fn with_seeds(mut self, seeds: &[SeedAssignment]) -> Result<Self> {
        for seed in seeds {
            if seed.node >= self.node_count {
                return Err(Error::UnknownNode(format!("#{}", seed.node)));
            }
            if seed.topic >= self.topic_count {
                return Err(Error::TopicOutOfRange { topic: seed.topic, topic_count: self.topic_count });
            }
            if !seed.stance.is_known() {
                return Err(Error::param("seed stance must be known"));
            }
            self.set_stance(seed.node, seed.topic, seed.stance);
        }
        Ok(self)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn topic_count(&self) -> usize {
        self.topic_count
    }

    fn cell(&self, node: NodeIndex, topic: TopicId) -> usize {
        debug_assert!(node < self.node_count && topic < self.topic_count);
        node * self.topic_count + topic
    }

    pub fn stance(&self, node: NodeIndex, topic: TopicId) -> Stance {
        self.stances[self.cell(node, topic)]
    }

    pub fn set_stance(&mut self, node: NodeIndex, topic: TopicId, stance: Stance) {
        let c = self.cell(node, topic);
        self.stances[c] = stance;
    }

    /// The attitude distribution `<t_1, ..., t_z>` of `node`.
    pub fn attitudes(&self, node: NodeIndex) -> &[Stance] {
        let start = node * self.topic_count;
        &self.stances[start..start + self.topic_count]
    }

    pub fn perseverance(&self, node: NodeIndex, topic: TopicId) -> f64 {
        self.perseverance[self.cell(node, topic)]
    }

    /// Stores `value` clamped to `[0, 1]`.
    pub fn set_perseverance(&mut self, node: NodeIndex, topic: TopicId, value: f64) {
        let c = self.cell(node, topic);
        self.perseverance[c] = value.clamp(0.0, 1.0);
    }

    /// Stances of every node on one topic.
    pub fn topic_stances(&self, topic: TopicId) -> Vec<Stance> {
        (0..self.node_count).map(|v| self.stance(v, topic)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_state_is_unknown() {
        let s = AttitudeState::new(3, 2, 0.5).unwrap();
        assert!(s.topic_stances(1).iter().all(|&t| t == Stance::Unknown));
        assert_eq!(s.perseverance(2, 1), 0.5);
        assert_eq!(s.attitudes(1), &[Stance::Unknown, Stance::Unknown]);
    }

    #[test]
    fn seeds_and_rows() {
        let seeds = [
            SeedAssignment { node: 1, topic: 1, stance: Stance::Negative },
            SeedAssignment { node: 2, topic: 0, stance: Stance::Positive },
        ];
        let s = AttitudeState::new(3, 2, 0.5).unwrap().with_seeds(&seeds).unwrap();
        assert_eq!(s.attitudes(1), &[Stance::Unknown, Stance::Negative]);
        assert_eq!(s.stance(2, 0), Stance::Positive);
        let bad = [SeedAssignment { node: 0, topic: 2, stance: Stance::Negative }];
        assert!(AttitudeState::new(3, 2, 0.5).unwrap().with_seeds(&bad).is_err());
    }

    #[test]
    fn perseverance_is_clamped() {
        let mut s = AttitudeState::new(1, 1, 0.5).unwrap();
        s.set_perseverance(0, 0, 1.7);
        assert_eq!(s.perseverance(0, 0), 1.0);
        s.set_perseverance(0, 0, -0.2);
        assert_eq!(s.perseverance(0, 0), 0.0);
        assert!(AttitudeState::new(1, 1, 1.2).is_err());
        assert!(AttitudeState::new(1, 0, 0.5).is_err());
    }
}
