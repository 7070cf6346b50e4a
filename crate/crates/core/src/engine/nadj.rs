use rand::seq::index;
use rand::Rng;

use super::config::sample_size;
use super::{PhaseStats, Simulation};
use crate::attitude::{perseverance_term, transition};
use crate::graph::{NodeIndex, TopicId};

/// Receivers drawn for one non-adjacent phase, before sampling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct NadjPools {
    /// Active nodes, in activation order.
    pub influencers: Vec<NodeIndex>,
    /// Nodes outside the adjacent set that already know the topic.
    pub aware: Vec<NodeIndex>,
    /// Nodes outside the adjacent set that do not.
    pub unaware: Vec<NodeIndex>,
}

/// How many influencers, aware receivers and unaware receivers to draw.
pub(crate) fn nadj_sample_sizes(
    pools: &NadjPools,
    r1: f64,
    r2: f64,
    aware_ratio: f64,
) -> (usize, usize, usize) {
    let influencers = sample_size(r1, pools.influencers.len());
    let receivers = sample_size(r2, pools.aware.len() + pools.unaware.len());
    let mut aware = ((aware_ratio * receivers as f64 + 0.5).floor() as usize).min(pools.aware.len());
    let mut unaware = receivers - aware;
    if unaware > pools.unaware.len() {
        unaware = pools.unaware.len();
        aware = receivers - unaware;
    }
    (influencers, aware, unaware)
}

fn pick<R: Rng + ?Sized>(rng: &mut R, pool: &[NodeIndex], amount: usize) -> Vec<NodeIndex> {
    let mut picks = index::sample(rng, pool.len(), amount).into_vec();
    picks.sort_unstable();
    picks.into_iter().map(|i| pool[i]).collect()
}

impl Simulation<'_> {
    pub(crate) fn nadj_pools(&self, topic: TopicId) -> NadjPools {
        let mut aware = Vec::new();
        let mut unaware = Vec::new();
        for v in (0..self.graph.node_count()).filter(|&v| !self.tracking.adj_visited(topic, v)) {
            if self.state.stance(v, topic).is_known() {
                aware.push(v);
            } else {
                unaware.push(v);
            }
        }
        NadjPools { influencers: self.tracking.newly_active(topic).to_vec(), aware, unaware }
    }

    /// Influence between nodes regardless of edges.
    ///
    /// Draws `r1` of the active nodes as influencers and `r2` of the nodes
    /// outside the adjacent set as receivers (`aware_ratio` of them already
    /// aware of the topic when possible), uniformly without replacement.
    /// Each receiver then meets every drawn influencer in turn; when the
    /// similarity gate is on, pairs with `sim <= sim_threshold` are skipped.
    pub fn nadj_phase<R: Rng + ?Sized>(&mut self, topic: TopicId, rng: &mut R) -> PhaseStats {
        let mut stats = PhaseStats::default();
        let pools = self.nadj_pools(topic);
        let (n_influencers, n_aware, n_unaware) =
            nadj_sample_sizes(&pools, self.config.r1, self.config.r2, self.config.aware_ratio);
        if n_influencers == 0 || n_aware + n_unaware == 0 {
            return stats;
        }

        let influencers = pick(rng, &pools.influencers, n_influencers);
        let mut receivers = pick(rng, &pools.aware, n_aware);
        receivers.extend(pick(rng, &pools.unaware, n_unaware));
        receivers.sort_unstable();

        let gate = self.config.nadj_tau_gate.then_some(self.config.sim_threshold);
        for q in receivers {
            for &v in &influencers {
                if v == q {
                    continue;
                }
                let (row_q, row_v) = (self.state.attitudes(q), self.state.attitudes(v));
                if let Some(tau) = gate {
                    if self.kernel.similarity(row_q, row_v) <= tau {
                        continue;
                    }
                }
                let p = self.kernel.probability(v, q, row_v, row_q, topic);
                let current = self.state.stance(q, topic);
                let source = self.state.stance(v, topic);
                let a = (self.state.perseverance(q, topic) - perseverance_term(source, current, p)).clamp(0.0, 1.0);
                self.state.set_perseverance(q, topic, a);
                let next = transition(current, source, p, a);
                self.apply(q, topic, current, next, &mut stats);
            }
        }
        stats
    }
}
