//! Independent reference computations for the statistical tests.
//!
//! Nothing here calls into the engine: the single-round enumerator is a
//! direct re-implementation built only from the public pairwise functions,
//! and the IC enumerator works on live-edge subgraphs instead of rounds.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use dmnai_core::attitude::{att_update, update_perseverance, InfluenceEvent};
use dmnai_core::kernel::{attitude_similarity, stance_factor, transfer_weight, TransferMode};
use dmnai_core::{SeedAssignment, SimulationConfig, SocialGraph, Stance};

/// `1 - exp(-x)` from its alternating Taylor series, for `0 <= x <= 4`.
pub fn one_minus_exp_neg_series(x: f64) -> f64 {
    assert!((0.0..=4.0).contains(&x));
    let mut term = x;
    let mut sum = 0.0;
    let mut comp = 0.0;
    for k in 1..200 {
        // Kahan summation of (-1)^(k+1) x^k / k!
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        term *= -x / (k as f64 + 1.0);
        if term.abs() < 1e-30 {
            break;
        }
    }
    sum
}

fn choose(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if items.len() < k {
        return vec![];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        for mut rest in choose(&items[i + 1..], k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn half_up(x: f64) -> usize {
    (x + 0.5).floor() as usize
}

fn sample_count(fraction: f64, len: usize) -> usize {
    if len == 0 || fraction == 0.0 {
        0
    } else {
        half_up(fraction * len as f64).max(1).min(len)
    }
}

#[derive(Clone)]
struct World {
    z: usize,
    stance: Vec<Vec<Stance>>,
    persev: Vec<Vec<f64>>,
}

impl World {
    fn p(&self, cfg: &SimulationConfig, u: usize, v: usize, topic: usize) -> f64 {
        let sim = attitude_similarity(&self.stance[u], &self.stance[v]).unwrap();
        let w = transfer_weight(cfg.kernel.rate, cfg.kernel.horizon).unwrap();
        let carried = match cfg.kernel.transfer_interpretation {
            TransferMode::Literal => 1.0 - w,
            TransferMode::Complement => w,
        };
        carried * sim * stance_factor(self.stance[v][topic], self.stance[u][topic], &cfg.kernel)
    }
}

/// Exact distribution of final stances on `topic` after one round.
pub fn enumerate_single_round(
    graph: &SocialGraph,
    seeds: &[SeedAssignment],
    topic: usize,
    cfg: &SimulationConfig,
) -> BTreeMap<Vec<Stance>, f64> {
    assert!(cfg.kernel.edge_rates.is_empty());
    let n = graph.node_count();
    let z = graph.topic_count();
    let mut world = World {
        z,
        stance: vec![vec![Stance::Unknown; z]; n],
        persev: vec![vec![cfg.init_perseverance; z]; n],
    };
    for s in seeds {
        world.stance[s.node][s.topic] = s.stance;
    }

    let mut active: Vec<usize> = (0..n).filter(|&v| world.stance[v][topic].is_known()).collect();
    let start_active = active.clone();

    // adjacent phase
    let mut visited = vec![false; n];
    let mut order: Vec<usize> = Vec::new();
    let mut sources: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &v in &start_active {
        for q in 0..n {
            if graph.has_edge(v, q) {
                if sources[q].is_empty() {
                    order.push(q);
                }
                sources[q].push(v);
            }
        }
    }
    for q in order {
        let before = world.stance[q][topic];
        let events: Vec<InfluenceEvent> = sources[q]
            .iter()
            .map(|&v| InfluenceEvent {
                source: v,
                source_stance: world.stance[v][topic],
                probability: world.p(cfg, v, q, topic),
            })
            .collect();
        let a = update_perseverance(world.persev[q][topic], &events, before).unwrap();
        world.persev[q][topic] = a;
        let mut best = events[0];
        for e in &events[1..] {
            if e.probability > best.probability || (e.probability == best.probability && e.source < best.source) {
                best = *e;
            }
        }
        let after = att_update(before, best.source_stance, best.probability, a).unwrap();
        world.stance[q][topic] = after;
        visited[q] = true;
        if !before.is_known() && after.is_known() {
            active.push(q);
        }
    }

    // non-adjacent phase: enumerate every equally likely sample
    let outside: Vec<usize> = (0..n).filter(|&v| !visited[v]).collect();
    let aware: Vec<usize> = outside.iter().copied().filter(|&v| world.stance[v][topic].is_known()).collect();
    let unaware: Vec<usize> = outside.iter().copied().filter(|&v| !world.stance[v][topic].is_known()).collect();
    let k1 = sample_count(cfg.r1, active.len());
    let k2 = sample_count(cfg.r2, outside.len());
    let mut ka = half_up(cfg.aware_ratio * k2 as f64).min(aware.len());
    let mut ku = k2 - ka;
    if ku > unaware.len() {
        ku = unaware.len();
        ka = k2 - ku;
    }

    let mut dist = BTreeMap::new();
    if k1 == 0 || k2 == 0 {
        dist.insert((0..n).map(|v| world.stance[v][topic]).collect(), 1.0);
        return dist;
    }
    let positions: Vec<usize> = (0..active.len()).collect();
    let infl_sets = choose(&positions, k1);
    let aware_sets = choose(&aware, ka);
    let unaware_sets = choose(&unaware, ku);
    let weight = 1.0 / (infl_sets.len() * aware_sets.len() * unaware_sets.len()) as f64;

    for infl in &infl_sets {
        let influencers: Vec<usize> = infl.iter().map(|&i| active[i]).collect();
        for a_set in &aware_sets {
            for u_set in &unaware_sets {
                let mut w = world.clone();
                let mut receivers: Vec<usize> = a_set.iter().chain(u_set).copied().collect();
                receivers.sort();
                for &q in &receivers {
                    for &v in &influencers {
                        if v == q {
                            continue;
                        }
                        if cfg.nadj_tau_gate
                            && attitude_similarity(&w.stance[q], &w.stance[v]).unwrap() <= cfg.sim_threshold
                        {
                            continue;
                        }
                        let p = w.p(cfg, v, q, topic);
                        let before = w.stance[q][topic];
                        let ev = [InfluenceEvent { source: v, source_stance: w.stance[v][topic], probability: p }];
                        let a = update_perseverance(w.persev[q][topic], &ev, before).unwrap();
                        w.persev[q][topic] = a;
                        w.stance[q][topic] = att_update(before, w.stance[v][topic], p, a).unwrap();
                    }
                }
                *dist.entry((0..n).map(|v| w.stance[v][topic]).collect()).or_insert(0.0) += weight;
            }
        }
    }
    dist
}

/// Projects a stance distribution onto activated-set bitmasks.
pub fn activated_sets(dist: &BTreeMap<Vec<Stance>, f64>) -> BTreeMap<u32, f64> {
    let mut out = BTreeMap::new();
    for (stances, p) in dist {
        *out.entry(activation_mask(stances)).or_insert(0.0) += p;
    }
    out
}

pub fn activation_mask(stances: &[Stance]) -> u32 {
    stances
        .iter()
        .enumerate()
        .filter(|(_, s)| s.is_known())
        .fold(0, |m, (i, _)| m | (1 << i))
}

/// Exact per-node activation probability under IC with uniform edge
/// probability `p`, by enumerating all live-edge subgraphs.
pub fn ic_activation_probabilities(graph: &SocialGraph, seeds: &[usize], p: f64) -> Vec<f64> {
    let edges: Vec<(usize, usize)> = graph.edges().collect();
    assert!(edges.len() <= 20);
    let n = graph.node_count();
    let mut prob = vec![0.0; n];
    for mask in 0u32..(1 << edges.len()) {
        let live = mask.count_ones() as i32;
        let weight = p.powi(live) * (1.0 - p).powi(edges.len() as i32 - live);
        let mut reached = vec![false; n];
        let mut stack: Vec<usize> = seeds.to_vec();
        for &s in seeds {
            reached[s] = true;
        }
        while let Some(u) = stack.pop() {
            for (i, &(a, b)) in edges.iter().enumerate() {
                if a == u && mask & (1 << i) != 0 && !reached[b] {
                    reached[b] = true;
                    stack.push(b);
                }
            }
        }
        for v in 0..n {
            if reached[v] {
                prob[v] += weight;
            }
        }
    }
    prob
}

/// Max over outcomes of `|count - N p| / sigma` failures under a 3-sigma
/// binomial bound. Returns the offending outcomes, empty when all pass.
pub fn three_sigma_violations<K: Ord + Clone + std::fmt::Debug>(
    expected: &BTreeMap<K, f64>,
    observed: &BTreeMap<K, usize>,
    runs: usize,
) -> Vec<String> {
    let mut bad = Vec::new();
    let n = runs as f64;
    for (k, &p) in expected {
        let count = observed.get(k).copied().unwrap_or(0) as f64;
        let p = p.clamp(0.0, 1.0);
        let sigma = (n * p * (1.0 - p)).sqrt();
        if (count - n * p).abs() > 3.0 * sigma + 1e-9 {
            bad.push(format!("{k:?}: expected {:.1} ± {:.1}, observed {count}", n * p, 3.0 * sigma));
        }
    }
    for (k, &count) in observed {
        if !expected.contains_key(k) {
            bad.push(format!("{k:?}: impossible outcome observed {count} times"));
        }
    }
    bad
}
