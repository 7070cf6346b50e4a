//! Command-line surface.

use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};

use dmnai_core::graph::SeedRule;

use crate::commands::{self, Metric};
use crate::spec::{ExperimentSpec, GraphSource, Model, SeedSource};

#[derive(Debug, Parser)]
#[command(name = "dmnai", version, about = "Opinion-aware information dissemination simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a synthetic graph to a file.
    Generate {
        /// `random:N:P` or `preferential:N:D`.
        #[arg(long)]
        graph: String,
        #[arg(long)]
        topics: Option<usize>,
        #[arg(long, default_value_t = 0)]
        master_seed: u64,
        /// Output path; `.json` writes a graph document, anything else an edge list.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run replicas of a model and write traces.
    Simulate {
        #[command(flatten)]
        run: RunArgs,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Score DM-NAI and IC against a reference final state.
    Compare {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        reference: PathBuf,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Score a trace against a reference final state.
    Accuracy {
        /// A replica JSON document or a `node,topic,stance` CSV.
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        reference: PathBuf,
        #[arg(long, value_enum, default_value = "range")]
        metric: Metric,
        #[arg(long)]
        topic: Option<usize>,
        /// Append `metric,topic,value` to this CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Show configuration.
    Config {
        #[arg(long)]
        print_defaults: bool,
    },
}

/// Experiment flags shared by `simulate` and `compare`. Flags win over `--config`.
#[derive(Debug, Args)]
pub struct RunArgs {
    /// Edge list, `.json` graph document, `random:N:P` or `preferential:N:D`.
    #[arg(long)]
    pub graph: Option<String>,
    #[arg(long)]
    pub topics: Option<usize>,
    /// `node topic stance` file.
    #[arg(long, conflicts_with = "seed_rule")]
    pub seeds: Option<String>,
    /// `random:K` or `top-out-degree:K`.
    #[arg(long)]
    pub seed_rule: Option<SeedRule>,
    #[arg(long, value_enum)]
    pub model: Option<Model>,
    /// Experiment spec, simulation config, or a replica JSON to re-run.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub replicas: Option<usize>,
    #[arg(long)]
    pub master_seed: Option<u64>,
    #[arg(long)]
    pub topic: Option<usize>,
    #[arg(long)]
    pub rounds: Option<usize>,
    /// IC activation probability for every edge.
    #[arg(long)]
    pub edge_probability: Option<f64>,
}

impl RunArgs {
    pub fn to_spec(&self) -> Result<ExperimentSpec> {
        let mut spec = match &self.config {
            Some(path) => ExperimentSpec::from_config_file(path)?,
            None => ExperimentSpec::default(),
        };
        if let Some(seed) = self.master_seed {
            spec.master_seed = seed;
        }
        if let Some(graph) = &self.graph {
            spec.graph = Some(GraphSource::parse(graph, self.topics, spec.master_seed)?);
        } else if let Some(z) = self.topics {
            match spec.graph.as_mut() {
                Some(GraphSource::File { topics, .. }) => *topics = Some(z),
                Some(GraphSource::Synthetic { topics, .. }) => *topics = z,
                None => bail!("--topics needs a graph"),
            }
        }
        if let Some(path) = &self.seeds {
            spec.seeds = Some(SeedSource::File(path.clone()));
        }
        if let Some(rule) = self.seed_rule {
            spec.seeds = Some(SeedSource::Rule(rule));
        }
        if let Some(model) = self.model {
            spec.model = model;
        }
        if let Some(n) = self.replicas {
            spec.replicas = n;
        }
        if let Some(t) = self.topic {
            spec.topic = t;
        }
        if let Some(k) = self.rounds {
            spec.simulation.rounds = k;
        }
        if let Some(p) = self.edge_probability {
            spec.ic.edge_probability = p;
        }
        spec.resolve()
    }
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate { graph, topics, master_seed, out } => {
            let source = GraphSource::parse(&graph, topics, master_seed)?;
            if matches!(source, GraphSource::File { .. }) {
                bail!("`{graph}` is not a generator spec (random:N:P or preferential:N:D)");
            }
            let g = commands::generate(&source, &out)?;
            eprintln!("wrote {} nodes, {} edges to {}", g.node_count(), g.edge_count(), out.display());
        }
        Command::Simulate { run, out } => {
            let spec = run.to_spec()?;
            let files = commands::simulate(&spec, &out)?;
            eprintln!("wrote {} files to {}", files.len(), out.display());
        }
        Command::Compare { run, reference, out } => {
            let spec = run.to_spec()?;
            let scores = commands::compare(&spec, &[Model::Dmnai, Model::Ic], &reference)?;
            let report = commands::compare_report(&scores);
            print!("{report}");
            if let Some(out) = out {
                std::fs::write(&out, &report)?;
            }
        }
        Command::Accuracy { trace, reference, metric, topic, out } => {
            let value = commands::accuracy(&trace, &reference, metric, topic, out.as_deref())?;
            println!("{value:.4}");
        }
        Command::Config { print_defaults } => {
            if !print_defaults {
                bail!("nothing to do; try --print-defaults");
            }
            println!("{}", serde_json::to_string_pretty(&ExperimentSpec::default())?);
        }
    }
    Ok(())
}
