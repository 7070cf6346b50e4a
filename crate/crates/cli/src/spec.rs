//! The resolved description of an experiment, echoed into every JSON output.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use dmnai_core::baselines::IcConfig;
use dmnai_core::graph::{load_edge_list, load_seeds, select_seeds, GraphDocument, SeedRule};
use dmnai_core::rng::{seeded_rng, derive_replica_rng, SHARED_STREAM};
use dmnai_core::{generate_synthetic, GeneratorKind, SeedAssignment, SimulationConfig, SocialGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    #[default]
    Dmnai,
    Ic,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Dmnai => "dmnai",
            Model::Ic => "ic",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphSource {
    /// Edge list, or a JSON graph document when the path ends in `.json`.
    File { path: String, topics: Option<usize> },
    Synthetic { kind: GeneratorKind, nodes: usize, param: f64, seed: u64, topics: usize },
}

impl GraphSource {
    /// Parses `--graph`: `random:N:P`, `preferential:N:D`, or a file path.
    pub fn parse(value: &str, topics: Option<usize>, seed: u64) -> Result<Self> {
        let parts: Vec<&str> = value.split(':').collect();
        let kind = match parts[0] {
            "random" => Some(GeneratorKind::Random),
            "preferential" => Some(GeneratorKind::Preferential),
            _ => None,
        };
        match (kind, parts.as_slice()) {
            (Some(kind), [_, n, param]) => Ok(GraphSource::Synthetic {
                kind,
                nodes: n.parse().with_context(|| format!("bad node count in `{value}`"))?,
                param: param.parse().with_context(|| format!("bad edge parameter in `{value}`"))?,
                seed,
                topics: topics.unwrap_or(1),
            }),
            (Some(_), _) => bail!("synthetic graph spec `{value}` should look like `random:100:0.05`"),
            (None, _) => Ok(GraphSource::File { path: value.to_owned(), topics }),
        }
    }

    pub fn load(&self) -> Result<SocialGraph> {
        match self {
            GraphSource::File { path, topics } => {
                let text = fs::read_to_string(path).with_context(|| format!("cannot read graph `{path}`"))?;
                let graph = if path.ends_with(".json") {
                    GraphDocument::from_json(&text)?.into_graph()?
                } else {
                    load_edge_list(text.as_bytes()).with_context(|| format!("in graph `{path}`"))?
                };
                Ok(match topics {
                    Some(z) => graph.with_topic_count(*z)?,
                    None => graph,
                })
            }
            GraphSource::Synthetic { kind, nodes, param, seed, topics } => {
                let graph = generate_synthetic(*kind, *nodes, *param, &mut seeded_rng(*seed))?;
                Ok(graph.with_topic_count(*topics)?)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedSource {
    File(String),
    Rule(SeedRule),
}

impl SeedSource {
    /// Seeds for `topic`; rule-based seeds come from the shared rng stream so
    /// every replica starts from the same seed set.
    pub fn load(&self, graph: &SocialGraph, topic: usize, master_seed: u64) -> Result<Vec<SeedAssignment>> {
        match self {
            SeedSource::File(path) => {
                let text = fs::read_to_string(path).with_context(|| format!("cannot read seeds `{path}`"))?;
                Ok(load_seeds(text.as_bytes(), graph).with_context(|| format!("in seeds `{path}`"))?)
            }
            SeedSource::Rule(rule) => {
                let mut rng = derive_replica_rng(master_seed, SHARED_STREAM);
                Ok(select_seeds(graph, *rule, topic, &mut rng)?)
            }
        }
    }
}

/// Everything needed to reproduce a run, except where its outputs go.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentSpec {
    pub graph: Option<GraphSource>,
    pub seeds: Option<SeedSource>,
    pub model: Model,
    pub topic: usize,
    pub replicas: usize,
    pub master_seed: u64,
    pub simulation: SimulationConfig,
    pub ic: IcConfig,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        ExperimentSpec {
            graph: None,
            seeds: None,
            model: Model::Dmnai,
            topic: 0,
            replicas: 1,
            master_seed: 0,
            simulation: SimulationConfig::default(),
            ic: IcConfig::default(),
        }
    }
}

const SPEC_KEYS: [&str; 8] = ["graph", "seeds", "model", "topic", "replicas", "master_seed", "simulation", "ic"];

impl ExperimentSpec {
    /// Reads a config file: a trace document (its embedded experiment is
    /// used), an experiment spec, or a bare simulation config.
    pub fn from_config_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read config `{}`", path.display()))?;
        let value: serde_json::Value =
            serde_json::from_str(&text).with_context(|| format!("config `{}` is not JSON", path.display()))?;
        let obj = value.as_object().context("config must be a JSON object")?;
        let spec = if let Some(embedded) = obj.get("experiment") {
            serde_json::from_value(embedded.clone())?
        } else if SPEC_KEYS.iter().any(|k| obj.contains_key(*k) && *k != "master_seed") {
            serde_json::from_value(value)?
        } else {
            let simulation: SimulationConfig = serde_json::from_value(value)
                .with_context(|| format!("config `{}` is not a simulation config", path.display()))?;
            ExperimentSpec { master_seed: simulation.master_seed, simulation, ..Default::default() }
        };
        Ok(spec)
    }

    /// Copies the experiment-level seed into both model configs and checks ranges.
    pub fn resolve(mut self) -> Result<Self> {
        self.simulation.master_seed = self.master_seed;
        self.ic.master_seed = self.master_seed;
        if self.replicas == 0 {
            bail!("replicas must be at least 1");
        }
        if self.graph.is_none() {
            bail!("no graph given (use --graph)");
        }
        if self.seeds.is_none() {
            bail!("no seeds given (use --seeds or --seed-rule)");
        }
        self.simulation.validate()?;
        self.ic.validate()?;
        Ok(self)
    }

    pub fn load_inputs(&self) -> Result<(SocialGraph, Vec<SeedAssignment>)> {
        let graph = self.graph.as_ref().context("no graph given")?.load()?;
        graph.check_topic(self.topic)?;
        let seeds = self.seeds.as_ref().context("no seeds given")?.load(&graph, self.topic, self.master_seed)?;
        Ok((graph, seeds))
    }
}
