use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{SeedAssignment, SocialGraph, TopicId};
use crate::error::{Error, Result};
use crate::stance::Stance;

/// How to pick seed nodes when no seed file is given.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", content = "count", rename_all = "snake_case")]
pub enum SeedRule {
    /// `k` nodes uniformly at random.
    Random(usize),
    /// The `k` nodes with the largest out-degree, ties broken by index.
    TopOutDegree(usize),
}

impl SeedRule {
    pub fn count(self) -> usize {
        match self {
            SeedRule::Random(k) | SeedRule::TopOutDegree(k) => k,
        }
    }
}

impl fmt::Display for SeedRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeedRule::Random(k) => write!(f, "random:{k}"),
            SeedRule::TopOutDegree(k) => write!(f, "top-out-degree:{k}"),
        }
    }
}

impl FromStr for SeedRule {
    type Err = Error;

    /// Accepts `random:K` and `top-out-degree:K`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, count) = s
            .split_once(':')
            .ok_or_else(|| Error::param(format!("seed rule `{s}` should look like `random:5`")))?;
        let count: usize = count
            .parse()
            .map_err(|_| Error::param(format!("bad seed count in `{s}`")))?;
        match name {
            "random" => Ok(SeedRule::Random(count)),
            "top-out-degree" | "top-degree" => Ok(SeedRule::TopOutDegree(count)),
            _ => Err(Error::param(format!("unknown seed rule `{name}`"))),
        }
    }
}

/// Picks seeds for `topic` and gives each a uniformly drawn known stance.
/// Seeds are returned in ascending node order.
pub fn select_seeds<R: Rng + ?Sized>(
    graph: &SocialGraph,
    rule: SeedRule,
    topic: TopicId,
    rng: &mut R,
) -> Result<Vec<SeedAssignment>> {
    graph.check_topic(topic)?;
    let n = graph.node_count();
    let k = rule.count();
    if k > n {
        return Err(Error::param(format!("cannot pick {k} seeds from {n} nodes")));
    }
    let mut nodes: Vec<usize> = match rule {
        SeedRule::Random(_) => index::sample(rng, n, k).into_vec(),
        SeedRule::TopOutDegree(_) => {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| graph.out_degree(b).cmp(&graph.out_degree(a)).then(a.cmp(&b)));
            order.truncate(k);
            order
        }
    };
    nodes.sort_unstable();
    Ok(nodes
        .into_iter()
        .map(|node| SeedAssignment {
            node,
            topic,
            stance: Stance::KNOWN[rng.random_range(0..Stance::KNOWN.len())],
        })
        .collect())
}
