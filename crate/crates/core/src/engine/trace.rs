use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::tracking::StanceCounts;
use crate::graph::TopicId;

pub const TRACE_CSV_HEADER: &str =
    "round,affected_total,new_adjacent,new_nonadjacent,count_stance_0,count_stance_0.5,count_stance_1,count_unknown";

/// State of one topic at the end of a round. Round `0` is the seeded state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundTrace {
    pub round: usize,
    pub topic: TopicId,
    /// Nodes with a known stance on the topic.
    pub affected_total: usize,
    /// Nodes activated by the adjacent phase this round.
    pub new_adjacent: usize,
    /// Nodes activated by the non-adjacent phase this round.
    pub new_nonadjacent: usize,
    /// Stance changes made by the adjacent phase.
    pub adjacent_updates: usize,
    /// Stance changes made by the non-adjacent phase.
    pub nonadjacent_updates: usize,
    pub counts: StanceCounts,
}

impl RoundTrace {
    pub fn initial(topic: TopicId, counts: StanceCounts) -> Self {
        RoundTrace {
            round: 0,
            topic,
            affected_total: counts.known(),
            new_adjacent: 0,
            new_nonadjacent: 0,
            adjacent_updates: 0,
            nonadjacent_updates: 0,
            counts,
        }
    }

    pub fn csv_row(&self) -> String {
        let c = &self.counts;
        format!(
            "{},{},{},{},{},{},{},{}",
            self.round,
            self.affected_total,
            self.new_adjacent,
            self.new_nonadjacent,
            c.positive,
            c.neutral,
            c.negative,
            c.unknown
        )
    }
}

/// One CSV row per round record, in the order given.
pub fn trace_to_csv(rounds: &[RoundTrace]) -> String {
    let mut out = String::with_capacity(64 * (rounds.len() + 1));
    out.push_str(TRACE_CSV_HEADER);
    out.push('\n');
    for r in rounds {
        let _ = writeln!(out, "{}", r.csv_row());
    }
    out
}
