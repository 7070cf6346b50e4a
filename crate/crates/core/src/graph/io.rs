use std::collections::HashSet;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::{GraphBuilder, SeedAssignment, SocialGraph};
use crate::error::{Error, Result};
use crate::stance::Stance;

fn content(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

fn io_error(line: usize, e: std::io::Error) -> Error {
    Error::parse(line, format!("read failed: {e}"))
}

/// Reads `source target` lines into a single-topic graph. `#` starts a comment.
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<SocialGraph> {
    let mut builder = GraphBuilder::new();
    for (ix, line) in reader.lines().enumerate() {
        let lineno = ix + 1;
        let line = line.map_err(|e| io_error(lineno, e))?;
        let tokens: Vec<&str> = content(&line).split_whitespace().collect();
        match tokens.as_slice() {
            [] => continue,
            [u, v] => {
                if u == v {
                    return Err(Error::parse(lineno, format!("self-loop on node `{u}`")));
                }
                builder.add_edge(u, v)?;
            }
            other => {
                return Err(Error::parse(
                    lineno,
                    format!("expected `source target`, found {} tokens", other.len()),
                ))
            }
        }
    }
    builder.build(1)
}

pub fn parse_edge_list(text: &str) -> Result<SocialGraph> {
    load_edge_list(text.as_bytes())
}

/// Writes the edge list in the format read by [`load_edge_list`]. Isolated
/// nodes cannot be expressed in this format; use [`GraphDocument`] for those.
pub fn write_edge_list<W: Write>(graph: &SocialGraph, mut out: W) -> std::io::Result<()> {
    writeln!(out, "# nodes {} edges {}", graph.node_count(), graph.edge_count())?;
    for (u, v) in graph.edges() {
        writeln!(out, "{} {}", graph.node_id(u), graph.node_id(v))?;
    }
    Ok(())
}

/// Reads `node topic stance` lines. Seeds must carry a known stance, name an
/// existing node and a topic below the graph's topic count.
pub fn load_seeds<R: BufRead>(reader: R, graph: &SocialGraph) -> Result<Vec<SeedAssignment>> {
    let mut seeds = Vec::new();
    let mut seen = HashSet::new();
    for (ix, line) in reader.lines().enumerate() {
        let lineno = ix + 1;
        let line = line.map_err(|e| io_error(lineno, e))?;
        let tokens: Vec<&str> = content(&line).split_whitespace().collect();
        let (id, topic, stance) = match tokens.as_slice() {
            [] => continue,
            [id, topic, stance] => (*id, *topic, *stance),
            other => {
                return Err(Error::parse(
                    lineno,
                    format!("expected `node topic stance`, found {} tokens", other.len()),
                ))
            }
        };
        let node = graph
            .index_of(id)
            .ok_or_else(|| Error::parse(lineno, format!("unknown node `{id}`")))?;
        let topic: usize = topic
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad topic index `{topic}`")))?;
        if topic >= graph.topic_count() {
            return Err(Error::parse(
                lineno,
                format!("topic {topic} out of range (graph has {} topics)", graph.topic_count()),
            ));
        }
        let stance: Stance = stance.parse().map_err(|e: Error| Error::parse(lineno, e.to_string()))?;
        if !stance.is_known() {
            return Err(Error::parse(lineno, "seed stance must be known (0, 0.5 or 1)"));
        }
        if !seen.insert((node, topic)) {
            return Err(Error::parse(lineno, format!("duplicate seed for `{id}` on topic {topic}")));
        }
        seeds.push(SeedAssignment { node, topic, stance });
    }
    Ok(seeds)
}

pub fn write_seeds<W: Write>(graph: &SocialGraph, seeds: &[SeedAssignment], mut out: W) -> std::io::Result<()> {
    for s in seeds {
        writeln!(out, "{} {} {}", graph.node_id(s.node), s.topic, s.stance)?;
    }
    Ok(())
}

/// JSON form of a graph: `{"nodes": [...], "edges": [[u, v], ...], "topics": z}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub nodes: Vec<String>,
    pub edges: Vec<[String; 2]>,
    pub topics: usize,
}

impl GraphDocument {
    pub fn from_graph(graph: &SocialGraph) -> Self {
        GraphDocument {
            nodes: graph.node_ids().to_vec(),
            edges: graph
                .edges()
                .map(|(u, v)| [graph.node_id(u).to_owned(), graph.node_id(v).to_owned()])
                .collect(),
            topics: graph.topic_count(),
        }
    }

    pub fn into_graph(self) -> Result<SocialGraph> {
        let mut builder = GraphBuilder::new();
        for id in &self.nodes {
            if id.is_empty() || id.chars().any(char::is_whitespace) {
                return Err(Error::Format(format!("invalid node id `{id}`")));
            }
            builder.add_node(id);
        }
        if builder.node_count() != self.nodes.len() {
            return Err(Error::Format("duplicate node ids".into()));
        }
        for [u, v] in &self.edges {
            for id in [u, v] {
                if !self.nodes.contains(id) {
                    return Err(Error::UnknownNode(id.clone()));
                }
            }
            builder.add_edge(u, v)?;
        }
        builder.build(self.topics)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
