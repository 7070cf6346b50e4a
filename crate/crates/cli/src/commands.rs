//! The work behind each subcommand, independent of argument parsing.

use std::fs::{self, OpenOptions};
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use rayon::prelude::*;

use dmnai_core::baselines::{ic_round_traces, run_ic};
use dmnai_core::engine::trace_to_csv;
use dmnai_core::graph::{write_edge_list, GraphBuilder, GraphDocument};
use dmnai_core::metrics::{range_accuracy, stance_accuracy, ReferenceTrace};
use dmnai_core::rng::derive_replica_rng;
use dmnai_core::{run_simulation, AttitudeState, SeedAssignment, SocialGraph};

use crate::output::{aggregate_csv, FinalState, GraphSummary, TraceDocument};
use crate::spec::{ExperimentSpec, GraphSource, Model};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Metric {
    Range,
    Stance,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Range => "range",
            Metric::Stance => "stance",
        }
    }
}

/// Runs one replica of a resolved experiment.
pub fn run_replica(
    spec: &ExperimentSpec,
    graph: &SocialGraph,
    seeds: &[SeedAssignment],
    replica: u64,
) -> Result<TraceDocument> {
    let mut rng = derive_replica_rng(spec.master_seed, replica);
    let (rounds, state) = match spec.model {
        Model::Dmnai => {
            let out = run_simulation(graph, seeds, spec.topic, &spec.simulation, &mut rng)?;
            (out.topic_rounds(spec.topic), out.state)
        }
        Model::Ic => {
            let active: Vec<usize> = seeds.iter().filter(|s| s.topic == spec.topic).map(|s| s.node).collect();
            let out = run_ic(graph, &active, &spec.ic, &mut rng)?;
            let traces = ic_round_traces(&out, spec.topic, spec.simulation.rounds);
            (traces, out.to_state(graph.topic_count(), spec.topic)?)
        }
    };
    Ok(TraceDocument {
        experiment: spec.clone(),
        replica,
        graph: GraphSummary {
            nodes: graph.node_count(),
            edges: graph.edge_count(),
            topics: graph.topic_count(),
        },
        rounds,
        final_state: FinalState::capture(graph, &state),
    })
}

/// Runs every replica in parallel; results come back in replica order.
pub fn run_replicas(spec: &ExperimentSpec, graph: &SocialGraph, seeds: &[SeedAssignment]) -> Result<Vec<TraceDocument>> {
    (0..spec.replicas as u64)
        .into_par_iter()
        .map(|i| run_replica(spec, graph, seeds, i))
        .collect()
}

fn write_file(path: &Path, contents: &[u8]) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write `{}`", path.display()))
}

fn final_csv(graph: &SocialGraph, doc: &TraceDocument) -> Result<Vec<u8>> {
    let (_, _, reference) = doc.reference()?;
    let mut buf = Vec::new();
    reference.write_csv(graph, &mut buf)?;
    Ok(buf)
}

/// Writes per-replica JSON / CSV traces, final states, the aggregate and
/// the resolved experiment into `out`. Returns the files written.
pub fn simulate(spec: &ExperimentSpec, out: &Path) -> Result<Vec<PathBuf>> {
    let (graph, seeds) = spec.load_inputs()?;
    let docs = run_replicas(spec, &graph, &seeds)?;
    fs::create_dir_all(out).with_context(|| format!("cannot create `{}`", out.display()))?;

    let mut written = Vec::new();
    let mut put = |name: String, contents: &[u8]| -> Result<()> {
        let path = out.join(name);
        write_file(&path, contents)?;
        written.push(path);
        Ok(())
    };
    let mut experiment = serde_json::to_string_pretty(spec)?;
    experiment.push('\n');
    put("experiment.json".into(), experiment.as_bytes())?;
    for doc in &docs {
        let i = doc.replica;
        put(format!("replica_{i}.json"), doc.to_json().as_bytes())?;
        put(format!("replica_{i}.csv"), trace_to_csv(&doc.rounds).as_bytes())?;
        put(format!("replica_{i}_final.csv"), &final_csv(&graph, doc)?)?;
    }
    let traces: Vec<_> = docs.iter().map(|d| d.rounds.as_slice()).collect();
    put("aggregate.csv".into(), aggregate_csv(&traces).as_bytes())?;
    Ok(written)
}

fn read_reference(path: &Path, universe: &SocialGraph) -> Result<ReferenceTrace> {
    let file = fs::File::open(path).with_context(|| format!("cannot read reference `{}`", path.display()))?;
    ReferenceTrace::read_csv(file, universe).with_context(|| format!("in reference `{}`", path.display()))
}

/// Mean range accuracy of each model against `reference`, same inputs and seeds.
pub fn compare(spec: &ExperimentSpec, models: &[Model], reference: &Path) -> Result<Vec<(Model, f64)>> {
    let (graph, seeds) = spec.load_inputs()?;
    let reference = read_reference(reference, &graph)?;
    models
        .iter()
        .map(|&model| {
            let spec = ExperimentSpec { model, ..spec.clone() };
            let docs = run_replicas(&spec, &graph, &seeds)?;
            let mut total = 0.0;
            for doc in &docs {
                let (_, state, _) = doc.reference()?;
                total += range_accuracy(&state, &reference, spec.topic)?;
            }
            Ok((model, total / docs.len() as f64))
        })
        .collect()
}

pub fn compare_report(scores: &[(Model, f64)]) -> String {
    let mut s = String::from("model,range_accuracy\n");
    for (model, score) in scores {
        s.push_str(&format!("{},{score:.4}\n", model.name()));
    }
    s
}

/// Loads a simulated final state: either a JSON trace document or a
/// `node,topic,stance` CSV. Returns the node universe, the state and the
/// topic the trace was run on (0 for CSV).
pub fn load_trace(path: &Path) -> Result<(SocialGraph, AttitudeState, usize)> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read trace `{}`", path.display()))?;
    if text.trim_start().starts_with('{') {
        let doc: TraceDocument = serde_json::from_str(&text).with_context(|| format!("bad trace `{}`", path.display()))?;
        let (universe, state, _) = doc.reference()?;
        return Ok((universe, state, doc.experiment.topic));
    }
    // CSV traces list every (node, topic) pair, so they define their own universe.
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut builder = GraphBuilder::new();
    let mut topics = 0;
    for row in rdr.records() {
        let row = row.with_context(|| format!("bad trace `{}`", path.display()))?;
        ensure!(row.len() == 3, "trace `{}` rows must be node,topic,stance", path.display());
        builder.add_node(&row[0]);
        let topic: usize = row[1].parse().with_context(|| format!("bad topic `{}`", &row[1]))?;
        topics = topics.max(topic + 1);
    }
    let universe = builder.build(topics).with_context(|| format!("trace `{}` is empty", path.display()))?;
    let state_ref = ReferenceTrace::read_csv(text.as_bytes(), &universe)?;
    let mut state = AttitudeState::new(universe.node_count(), topics, 0.0)?;
    for v in 0..universe.node_count() {
        for t in 0..topics {
            state.set_stance(v, t, state_ref.stance(v, t));
        }
    }
    Ok((universe, state, 0))
}

/// Scores a trace against a reference. With `out`, appends `metric,topic,value`.
pub fn accuracy(trace: &Path, reference: &Path, metric: Metric, topic: Option<usize>, out: Option<&Path>) -> Result<f64> {
    let (universe, state, trace_topic) = load_trace(trace)?;
    let topic = topic.unwrap_or(trace_topic);
    let reference = read_reference(reference, &universe)?;
    let value = match metric {
        Metric::Range => range_accuracy(&state, &reference, topic)?,
        Metric::Stance => stance_accuracy(&state, &reference, topic)?,
    };
    if let Some(out) = out {
        let fresh = !out.exists() || fs::metadata(out)?.len() == 0;
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(out)
            .with_context(|| format!("cannot open `{}`", out.display()))?;
        if fresh {
            writeln!(file, "metric,topic,value")?;
        }
        writeln!(file, "{},{topic},{value:.4}", metric.name())?;
    }
    Ok(value)
}

fn has_isolated(graph: &SocialGraph) -> bool {
    (0..graph.node_count()).any(|v| graph.out_degree(v) == 0 && graph.in_neighbors(v).is_empty())
}

/// Materialises a graph source as a JSON document (`.json`) or an edge list.
pub fn generate(source: &GraphSource, out: &Path) -> Result<SocialGraph> {
    let graph = source.load()?;
    let is_json = out.extension().is_some_and(|e| e == "json");
    if !is_json && (graph.topic_count() != 1 || has_isolated(&graph)) {
        bail!("edge lists cannot hold isolated nodes or topic counts; write to a .json file instead");
    }
    let bytes = if is_json {
        let mut s = GraphDocument::from_graph(&graph).to_json();
        s.push('\n');
        s.into_bytes()
    } else {
        let mut buf = Vec::new();
        write_edge_list(&graph, &mut buf)?;
        buf
    };
    write_file(out, &bytes)?;
    Ok(graph)
}
