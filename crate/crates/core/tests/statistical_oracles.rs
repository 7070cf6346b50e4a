mod oracle;

use std::collections::BTreeMap;

use dmnai_core::baselines::{run_ic, IcConfig};
use dmnai_core::graph::{parse_edge_list, GraphBuilder};
use dmnai_core::rng::derive_replica_rng;
use dmnai_core::{run_simulation, SeedAssignment, SimulationConfig, SocialGraph, Stance};

fn graph_with_isolated(edges: &[(&str, &str)], isolated: &[&str], topics: usize) -> SocialGraph {
    let mut b = GraphBuilder::new();
    for (u, v) in edges {
        b.add_edge(u, v).unwrap();
    }
    for id in isolated {
        b.add_node(id);
    }
    b.build(topics).unwrap()
}

fn check_against_enumeration(graph: &SocialGraph, seeds: &[SeedAssignment], config: &SimulationConfig) {
    const RUNS: usize = 20_000;
    let exact = oracle::enumerate_single_round(graph, seeds, 0, config);
    assert!(exact.len() >= 2, "instance should be stochastic, got {exact:?}");
    assert!((exact.values().sum::<f64>() - 1.0).abs() < 1e-9);
    let mut observed: BTreeMap<Vec<Stance>, usize> = BTreeMap::new();
    for i in 0..RUNS {
        let out = run_simulation(graph, seeds, 0, config, &mut derive_replica_rng(config.master_seed, i as u64)).unwrap();
        *observed.entry(out.state.topic_stances(0)).or_insert(0) += 1;
    }
    let bad = oracle::three_sigma_violations(&exact, &observed, RUNS);
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn isolated_nodes_single_round() {
    let g = graph_with_isolated(&[("a", "b")], &["c", "d"], 1);
    let seeds = [SeedAssignment { node: 0, topic: 0, stance: Stance::Negative }];
    let cfg = SimulationConfig { rounds: 1, r1: 1.0, r2: 0.5, master_seed: 1, ..Default::default() };
    check_against_enumeration(&g, &seeds, &cfg);
}

#[test]
fn two_topic_gate_single_round() {
    let g = graph_with_isolated(&[("a", "b"), ("b", "c")], &["d", "e"], 2);
    let seeds = [
        SeedAssignment { node: 0, topic: 0, stance: Stance::Negative },
        SeedAssignment { node: 3, topic: 0, stance: Stance::Positive },
        SeedAssignment { node: 3, topic: 1, stance: Stance::Negative },
        SeedAssignment { node: 4, topic: 1, stance: Stance::Negative },
    ];
    let cfg = SimulationConfig {
        rounds: 1,
        r1: 0.5,
        r2: 0.75,
        sim_threshold: 0.35,
        init_perseverance: 0.1,
        master_seed: 2,
        ..Default::default()
    };
    check_against_enumeration(&g, &seeds, &cfg);
}

#[test]
fn ic_diamond_matches_live_edge_enumeration() {
    let g = parse_edge_list("a b\na c\nb d\nc d").unwrap();
    let exact = oracle::ic_activation_probabilities(&g, &[0], 0.5);
    assert!((exact[3] - 7.0 / 16.0).abs() < 1e-12);
    let cfg = IcConfig { edge_probability: 0.5, ..Default::default() };
    const RUNS: usize = 100_000;
    let mut hits = [0usize; 4];
    for i in 0..RUNS {
        let out = run_ic(&g, &[0], &cfg, &mut derive_replica_rng(5, i as u64)).unwrap();
        for (v, h) in hits.iter_mut().enumerate() {
            *h += usize::from(out.active[v]);
        }
    }
    for v in 0..4 {
        let est = hits[v] as f64 / RUNS as f64;
        let sigma = (exact[v] * (1.0 - exact[v]) / RUNS as f64).sqrt();
        assert!((est - exact[v]).abs() <= 3.0 * sigma + 1e-12, "node {v}: {est} vs {}", exact[v]);
    }
    assert!((hits[3] as f64 / RUNS as f64 - 0.4375).abs() < 0.01);
}

#[test]
fn ic_small_graphs_match_enumeration() {
    let graphs = ["a b\nb c\nc a\na d", "a b\na c\nb c\nc d\nd e\nb e", "a b\nb a\nb c\nc d"];
    for (gi, text) in graphs.iter().enumerate() {
        let g = parse_edge_list(text).unwrap();
        for p in [0.3, 0.7] {
            let exact = oracle::ic_activation_probabilities(&g, &[0], p);
            let cfg = IcConfig { edge_probability: p, ..Default::default() };
            const RUNS: usize = 20_000;
            let mut hits = vec![0usize; g.node_count()];
            for i in 0..RUNS {
                let out = run_ic(&g, &[0], &cfg, &mut derive_replica_rng(gi as u64, i as u64)).unwrap();
                for (v, h) in hits.iter_mut().enumerate() {
                    *h += usize::from(out.active[v]);
                }
            }
            for v in 0..g.node_count() {
                let est = hits[v] as f64 / RUNS as f64;
                let pv = exact[v].clamp(0.0, 1.0);
                let sigma = (pv * (1.0 - pv) / RUNS as f64).sqrt();
                assert!((est - pv).abs() <= 3.0 * sigma + 1e-9, "graph {gi} p={p} node {v}: {est} vs {}", exact[v]);
            }
        }
    }
}
