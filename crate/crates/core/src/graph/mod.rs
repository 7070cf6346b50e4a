//! Directed social graph, seed assignments, and their text/JSON formats.

mod generate;
mod io;
mod seeds;

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::stance::Stance;

pub use generate::{generate_synthetic, GeneratorKind};
pub use io::{load_edge_list, load_seeds, parse_edge_list, write_edge_list, write_seeds, GraphDocument};
pub use seeds::{select_seeds, SeedRule};

/// Dense index of a node, assigned in order of first appearance.
pub type NodeIndex = usize;
/// Zero-based topic number.
pub type TopicId = usize;

/// An immutable directed graph `G = (V, E)` with `z` topics.
///
/// An edge `u -> v` means content posted by `u` reaches `v`. Adjacency lists
/// are sorted by index so every traversal order is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SocialGraph {
    ids: Vec<String>,
    lookup: HashMap<String, NodeIndex>,
    out_adj: Vec<Vec<NodeIndex>>,
    in_adj: Vec<Vec<NodeIndex>>,
    edge_count: usize,
    topic_count: usize,
}

impl SocialGraph {
    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn topic_count(&self) -> usize {
        self.topic_count
    }

    /// Same graph with a different number of topics.
    pub fn with_topic_count(mut self, topic_count: usize) -> Result<Self> {
        if topic_count == 0 {
            return Err(Error::NoTopics);
        }
        self.topic_count = topic_count;
        Ok(self)
    }

    pub fn node_id(&self, node: NodeIndex) -> &str {
        &self.ids[node]
    }

    pub fn node_ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Option<NodeIndex> {
        self.lookup.get(id).copied()
    }

    pub fn out_neighbors(&self, node: NodeIndex) -> &[NodeIndex] {
        &self.out_adj[node]
    }

    pub fn in_neighbors(&self, node: NodeIndex) -> &[NodeIndex] {
        &self.in_adj[node]
    }

    pub fn out_degree(&self, node: NodeIndex) -> usize {
        self.out_adj[node].len()
    }

    pub fn has_edge(&self, source: NodeIndex, target: NodeIndex) -> bool {
        self.out_adj
            .get(source)
            .is_some_and(|adj| adj.binary_search(&target).is_ok())
    }

    /// Edges ordered by source index, then target index.
    pub fn edges(&self) -> impl Iterator<Item = (NodeIndex, NodeIndex)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(u, adj)| adj.iter().map(move |&v| (u, v)))
    }

    pub fn check_topic(&self, topic: TopicId) -> Result<()> {
        if topic < self.topic_count {
            Ok(())
        } else {
            Err(Error::TopicOutOfRange { topic, topic_count: self.topic_count })
        }
    }
}

/// Incremental construction; duplicates collapse and self-loops are refused.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    ids: Vec<String>,
    lookup: HashMap<String, NodeIndex>,
    edges: Vec<(NodeIndex, NodeIndex)>,
    seen: HashSet<(NodeIndex, NodeIndex)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the index of `id`, registering it if it is new.
    pub fn add_node(&mut self, id: &str) -> NodeIndex {
        if let Some(&ix) = self.lookup.get(id) {
            return ix;
        }
        let ix = self.ids.len();
        self.ids.push(id.to_owned());
        self.lookup.insert(id.to_owned(), ix);
        ix
    }

    /// Adds `source -> target`. Returns `false` if the edge was already present.
    pub fn add_edge(&mut self, source: &str, target: &str) -> Result<bool> {
        if source == target {
            return Err(Error::param(format!("self-loop on node `{source}`")));
        }
        let u = self.add_node(source);
        let v = self.add_node(target);
        Ok(self.add_edge_ix(u, v))
    }

    pub(crate) fn add_edge_ix(&mut self, u: NodeIndex, v: NodeIndex) -> bool {
        debug_assert!(u != v && u < self.ids.len() && v < self.ids.len());
        if self.seen.insert((u, v)) {
            self.edges.push((u, v));
            true
        } else {
            false
        }
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn build(self, topic_count: usize) -> Result<SocialGraph> {
        if self.ids.is_empty() {
            return Err(Error::EmptyGraph);
        }
        if topic_count == 0 {
            return Err(Error::NoTopics);
        }
        let n = self.ids.len();
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        for adj in out_adj.iter_mut().chain(in_adj.iter_mut()) {
            adj.sort_unstable();
        }
        Ok(SocialGraph {
            ids: self.ids,
            lookup: self.lookup,
            out_adj,
            in_adj,
            edge_count: self.edges.len(),
            topic_count,
        })
    }
}

/// An initial known stance for one node on one topic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedAssignment {
    pub node: NodeIndex,
    pub topic: TopicId,
    pub stance: Stance,
}

impl SeedAssignment {
    pub fn new(graph: &SocialGraph, node: NodeIndex, topic: TopicId, stance: Stance) -> Result<Self> {
        if node >= graph.node_count() {
            return Err(Error::UnknownNode(format!("#{node}")));
        }
        graph.check_topic(topic)?;
        if !stance.is_known() {
            return Err(Error::param("seed stance must be known (0, 0.5 or 1)"));
        }
        Ok(SeedAssignment { node, topic, stance })
    }
}
