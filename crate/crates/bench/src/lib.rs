//! Shared fixtures for the criterion benches.

use dmnai_core::graph::{select_seeds, SeedRule};
use dmnai_core::rng::seeded_rng;
use dmnai_core::{generate_synthetic, GeneratorKind, SeedAssignment, SocialGraph};

/// Preferential-attachment graph with `seeds` top-out-degree seeds on topic 0.
pub fn preferential_fixture(n: usize, out_degree: usize, seeds: usize) -> (SocialGraph, Vec<SeedAssignment>) {
    let mut rng = seeded_rng(2024);
    let graph = generate_synthetic(GeneratorKind::Preferential, n, out_degree as f64, &mut rng).expect("valid generator parameters");
    let seeds = select_seeds(&graph, SeedRule::Random(seeds), 0, &mut rng).expect("enough nodes for seeds");
    (graph, seeds)
}
