//! Round-based dissemination: an adjacent phase along edges followed by a
//! sampled non-adjacent phase gated by attitude similarity.
//!
//! Update order is fixed for reproducibility: topics ascending within a
//! round, active nodes in activation order, neighbours in index order.
//! Randomness is consumed only by the non-adjacent sampling.

mod config;
mod nadj;
mod trace;
mod tracking;

use rand::Rng;

use crate::attitude::{perseverance_term, transition};
use crate::error::{Error, Result};
use crate::graph::{NodeIndex, SeedAssignment, SocialGraph, TopicId};
use crate::kernel::Kernel;
use crate::state::AttitudeState;

pub use config::{sample_size, SimulationConfig, VadjScope};
pub use trace::{trace_to_csv, RoundTrace, TRACE_CSV_HEADER};
pub use tracking::{StanceCounts, TrackingSets};

/// What one phase did to one topic.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PhaseStats {
    /// Nodes whose stance left unknown.
    pub activated: usize,
    /// Stance changes of any kind.
    pub updates: usize,
}

/// Result of a complete run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationOutput {
    /// Round records, round-major then topic-ascending; round 0 is the seeded state.
    pub rounds: Vec<RoundTrace>,
    pub state: AttitudeState,
}

impl SimulationOutput {
    /// Records of one topic in round order.
    pub fn topic_rounds(&self, topic: TopicId) -> Vec<RoundTrace> {
        self.rounds.iter().filter(|r| r.topic == topic).copied().collect()
    }
}

/// A run in progress. Owns its attitude state; shares the graph read-only.
#[derive(Debug, Clone)]
pub struct Simulation<'g> {
    graph: &'g SocialGraph,
    config: SimulationConfig,
    kernel: Kernel,
    state: AttitudeState,
    tracking: TrackingSets,
    round: usize,
    /// Adjacent-phase scratch: influencers per receiver.
    sources: Vec<Vec<NodeIndex>>,
}

impl<'g> Simulation<'g> {
    pub fn new(graph: &'g SocialGraph, seeds: &[SeedAssignment], config: &SimulationConfig) -> Result<Self> {
        config.validate()?;
        let kernel = Kernel::new(&config.kernel, graph)?;
        let state = AttitudeState::new(graph.node_count(), graph.topic_count(), config.init_perseverance)?
            .with_seeds(seeds)?;
        let tracking = TrackingSets::from_state(&state);
        Ok(Simulation {
            graph,
            config: config.clone(),
            kernel,
            state,
            tracking,
            round: 0,
            sources: vec![Vec::new(); graph.node_count()],
        })
    }

    pub fn state(&self) -> &AttitudeState {
        &self.state
    }

    pub fn tracking(&self) -> &TrackingSets {
        &self.tracking
    }

    pub fn config(&self) -> &SimulationConfig {
        &self.config
    }

    pub fn rounds_completed(&self) -> usize {
        self.round
    }

    pub fn into_state(self) -> AttitudeState {
        self.state
    }

    pub fn snapshot(&self, topic: TopicId) -> RoundTrace {
        let mut r = RoundTrace::initial(topic, self.tracking.counts(topic));
        r.round = self.round;
        r
    }

    /// Runs one round over `topics` (ascending) and returns one record per topic.
    pub fn step<R: Rng + ?Sized>(&mut self, topics: &[TopicId], rng: &mut R) -> Result<Vec<RoundTrace>> {
        for &t in topics {
            self.graph.check_topic(t)?;
        }
        self.round += 1;
        let mut out = Vec::with_capacity(topics.len());
        for &topic in topics {
            if self.config.vadj_scope == VadjScope::PerRound {
                self.tracking.clear_adj_visited(topic);
            }
            let adjacent = self.adjacent_phase(topic);
            let nonadjacent = self.nadj_phase(topic, rng);
            self.tracking.verify(&self.state, topic)?;
            let counts = self.tracking.counts(topic);
            out.push(RoundTrace {
                round: self.round,
                topic,
                affected_total: counts.known(),
                new_adjacent: adjacent.activated,
                new_nonadjacent: nonadjacent.activated,
                adjacent_updates: adjacent.updates,
                nonadjacent_updates: nonadjacent.updates,
                counts,
            });
        }
        Ok(out)
    }

    /// Influence along edges from every node active at the start of the phase
    /// to its out-neighbours not yet visited.
    ///
    /// A receiver reached by several influencers updates its perseverance with
    /// all of them (`k` = their number) and then takes the stance transition
    /// from the one with the largest influence probability, ties going to the
    /// lowest node index.
    pub fn adjacent_phase(&mut self, topic: TopicId) -> PhaseStats {
        let mut stats = PhaseStats::default();
        let active_len = self.tracking.newly_active(topic).len();
        let mut receivers = Vec::new();
        for i in 0..active_len {
            let v = self.tracking.newly_active(topic)[i];
            for &q in self.graph.out_neighbors(v) {
                if self.tracking.adj_visited(topic, q) {
                    continue;
                }
                if self.sources[q].is_empty() {
                    receivers.push(q);
                }
                self.sources[q].push(v);
            }
        }

        for q in receivers {
            let sources = std::mem::take(&mut self.sources[q]);
            let current = self.state.stance(q, topic);
            let mut total = 0.0;
            let mut best: Option<(f64, NodeIndex)> = None;
            for &v in &sources {
                let p = self
                    .kernel
                    .probability(v, q, self.state.attitudes(v), self.state.attitudes(q), topic);
                total += perseverance_term(self.state.stance(v, topic), current, p);
                best = match best {
                    Some((bp, bv)) if bp > p || (bp == p && bv < v) => Some((bp, bv)),
                    _ => Some((p, v)),
                };
            }
            let (p, v) = best.expect("receivers have at least one influencer");
            let a = (self.state.perseverance(q, topic) - total / sources.len() as f64).clamp(0.0, 1.0);
            self.state.set_perseverance(q, topic, a);
            let next = transition(current, self.state.stance(v, topic), p, a);
            self.apply(q, topic, current, next, &mut stats);
            self.tracking.mark_adj_visited(topic, q);

            let mut sources = sources;
            sources.clear();
            self.sources[q] = sources;
        }
        stats
    }

    fn apply(&mut self, q: NodeIndex, topic: TopicId, current: crate::Stance, next: crate::Stance, stats: &mut PhaseStats) {
        if next == current {
            return;
        }
        self.state.set_stance(q, topic, next);
        self.tracking.record_change(topic, q, current, next);
        stats.updates += 1;
        if !current.is_known() && self.tracking.activate(topic, q) {
            stats.activated += 1;
        }
    }
}

/// Runs `config.rounds` rounds on a single topic.
pub fn run_simulation<R: Rng + ?Sized>(
    graph: &SocialGraph,
    seeds: &[SeedAssignment],
    topic: TopicId,
    config: &SimulationConfig,
    rng: &mut R,
) -> Result<SimulationOutput> {
    run_topics(graph, seeds, &[topic], config, rng)
}

/// Runs `config.rounds` rounds, visiting `topics` in ascending order within each round.
pub fn run_topics<R: Rng + ?Sized>(
    graph: &SocialGraph,
    seeds: &[SeedAssignment],
    topics: &[TopicId],
    config: &SimulationConfig,
    rng: &mut R,
) -> Result<SimulationOutput> {
    let mut topics = topics.to_vec();
    topics.sort_unstable();
    topics.dedup();
    if topics.is_empty() {
        return Err(Error::param("no topics to simulate"));
    }
    for &t in &topics {
        graph.check_topic(t)?;
    }
    let mut sim = Simulation::new(graph, seeds, config)?;
    let mut rounds: Vec<RoundTrace> = topics.iter().map(|&t| sim.snapshot(t)).collect();
    for _ in 0..config.rounds {
        rounds.extend(sim.step(&topics, rng)?);
    }
    Ok(SimulationOutput { rounds, state: sim.into_state() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_edge_list, GraphBuilder};
    use crate::kernel::KernelParams;
    use crate::rng::seeded_rng;
    use crate::Stance;

    fn eager() -> SimulationConfig {
        SimulationConfig {
            kernel: KernelParams { rate: 0.0, ..Default::default() },
            init_perseverance: 0.0,
            r1: 0.0,
            r2: 0.0,
            rounds: 1,
            ..Default::default()
        }
    }

    fn seed(g: &SocialGraph, id: &str, stance: Stance) -> SeedAssignment {
        SeedAssignment::new(g, g.index_of(id).unwrap(), 0, stance).unwrap()
    }

    #[test]
    fn empty_seeds_do_nothing() {
        let g = parse_edge_list("a b\nb c\nc a").unwrap();
        let cfg = SimulationConfig { rounds: 3, r1: 1.0, r2: 1.0, ..Default::default() };
        let out = run_simulation(&g, &[], 0, &cfg, &mut seeded_rng(1)).unwrap();
        assert_eq!(out.rounds.len(), 4);
        for r in &out.rounds {
            assert_eq!((r.affected_total, r.adjacent_updates, r.nonadjacent_updates), (0, 0, 0));
        }
        assert!(out.state.topic_stances(0).iter().all(|&s| s == Stance::Unknown));
    }

    #[test]
    fn two_node_transfer() {
        let g = parse_edge_list("a b").unwrap();
        let out = run_simulation(&g, &[seed(&g, "a", Stance::Negative)], 0, &eager(), &mut seeded_rng(0)).unwrap();
        assert_eq!(out.state.stance(1, 0), Stance::Negative);
        assert_eq!(out.rounds[1].affected_total, 2);
        assert_eq!(out.rounds[1].new_adjacent, 1);
    }

    #[test]
    fn flow_follows_edge_direction() {
        let g = parse_edge_list("b a").unwrap();
        let out = run_simulation(&g, &[seed(&g, "a", Stance::Negative)], 0, &eager(), &mut seeded_rng(0)).unwrap();
        assert_eq!(out.state.stance(0, 0), Stance::Unknown);
    }

    #[test]
    fn one_hop_per_round() {
        let g = parse_edge_list("a b\nb c\nc d").unwrap();
        let cfg = SimulationConfig { rounds: 3, ..eager() };
        let out = run_simulation(&g, &[seed(&g, "a", Stance::Positive)], 0, &cfg, &mut seeded_rng(0)).unwrap();
        let affected: Vec<_> = out.rounds.iter().map(|r| r.affected_total).collect();
        assert_eq!(affected, vec![1, 2, 3, 4]);
    }

    #[test]
    fn strongest_influencer_wins() {
        // b gets influence from a (negative) and c (positive); c's row matches
        // b's other topic, so c is more similar and wins.
        let mut gb = GraphBuilder::new();
        gb.add_edge("a", "b").unwrap();
        gb.add_edge("c", "b").unwrap();
        let g = gb.build(2).unwrap();
        let (a, b, c) = (0, 1, 2);
        let seeds = [
            SeedAssignment { node: a, topic: 0, stance: Stance::Negative },
            SeedAssignment { node: c, topic: 0, stance: Stance::Positive },
            SeedAssignment { node: c, topic: 1, stance: Stance::Positive },
            SeedAssignment { node: b, topic: 1, stance: Stance::Positive },
        ];
        let out = run_simulation(&g, &seeds, 0, &eager(), &mut seeded_rng(0)).unwrap();
        assert_eq!(out.state.stance(b, 0), Stance::Positive);
    }

    #[test]
    fn persistent_visits_once() {
        let g = parse_edge_list("a b\nc b").unwrap();
        let seeds = [seed(&g, "a", Stance::Positive)];
        let cfg = SimulationConfig { rounds: 4, ..eager() };
        let mut sim = Simulation::new(&g, &seeds, &cfg).unwrap();
        let mut rng = seeded_rng(0);
        let first = sim.step(&[0], &mut rng).unwrap();
        assert_eq!(first[0].adjacent_updates, 1);
        for _ in 0..3 {
            let r = sim.step(&[0], &mut rng).unwrap();
            assert_eq!(r[0].adjacent_updates, 0);
        }
        assert!(sim.tracking().adj_visited(0, 1));
    }

    #[test]
    fn per_round_scope_revisits() {
        // a (positive) keeps pushing b, which starts negative: b moves to
        // neutral then (first contact rule for neutral) adopts positive.
        let g = parse_edge_list("a b").unwrap();
        let seeds = [seed(&g, "a", Stance::Positive), seed(&g, "b", Stance::Negative)];
        let persistent = SimulationConfig { rounds: 3, ..eager() };
        let out = run_simulation(&g, &seeds, 0, &persistent, &mut seeded_rng(0)).unwrap();
        assert_eq!(out.state.stance(1, 0), Stance::Neutral);

        let per_round = SimulationConfig { vadj_scope: VadjScope::PerRound, ..persistent };
        let out = run_simulation(&g, &seeds, 0, &per_round, &mut seeded_rng(0)).unwrap();
        assert_eq!(out.state.stance(1, 0), Stance::Positive);
    }

    #[test]
    fn topic_out_of_range() {
        let g = parse_edge_list("a b").unwrap();
        assert!(matches!(
            run_simulation(&g, &[], 1, &SimulationConfig::default(), &mut seeded_rng(0)),
            Err(Error::TopicOutOfRange { .. })
        ));
    }

    #[test]
    fn multi_topic_rounds_interleave() {
        let g = parse_edge_list("a b\nb c").unwrap().with_topic_count(2).unwrap();
        let seeds = [
            SeedAssignment { node: 0, topic: 0, stance: Stance::Negative },
            SeedAssignment { node: 1, topic: 1, stance: Stance::Positive },
        ];
        let cfg = SimulationConfig { rounds: 2, ..eager() };
        let out = run_topics(&g, &seeds, &[1, 0], &cfg, &mut seeded_rng(0)).unwrap();
        let order: Vec<_> = out.rounds.iter().map(|r| (r.round, r.topic)).collect();
        assert_eq!(order, vec![(0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1)]);
        assert_eq!(out.topic_rounds(1).last().unwrap().affected_total, 2);
        assert_eq!(out.topic_rounds(0).last().unwrap().affected_total, 3);
    }
}
