use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{GraphBuilder, SocialGraph};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    /// Directed G(n, p): every ordered pair independently with probability `p`.
    Random,
    /// Preferential attachment: each arriving node emits `d` edges to existing
    /// nodes chosen with probability proportional to in-degree + 1.
    Preferential,
}

/// Builds a synthetic single-topic graph with node ids `"0"..n`.
///
/// `edge_param` is the edge probability for [`GeneratorKind::Random`] and the
/// per-node out-degree for [`GeneratorKind::Preferential`].
pub fn generate_synthetic<R: Rng + ?Sized>(
    kind: GeneratorKind,
    n: usize,
    edge_param: f64,
    rng: &mut R,
) -> Result<SocialGraph> {
    if n < 2 {
        return Err(Error::param(format!("synthetic graphs need at least 2 nodes, got {n}")));
    }
    let mut builder = GraphBuilder::new();
    for i in 0..n {
        builder.add_node(&i.to_string());
    }
    match kind {
        GeneratorKind::Random => {
            if !(0.0..=1.0).contains(&edge_param) {
                return Err(Error::param(format!("edge probability {edge_param} outside [0, 1]")));
            }
            for u in 0..n {
                for v in 0..n {
                    // random() is in [0, 1): p = 1 always fires, p = 0 never does.
                    if u != v && rng.random::<f64>() < edge_param {
                        builder.add_edge_ix(u, v);
                    }
                }
            }
        }
        GeneratorKind::Preferential => {
            if edge_param.fract() != 0.0 || edge_param < 1.0 {
                return Err(Error::param(format!("out-degree must be a positive integer, got {edge_param}")));
            }
            let degree = edge_param as usize;
            if degree >= n {
                return Err(Error::param(format!("out-degree {degree} must be below n = {n}")));
            }
            // Each node appears once, plus once per received edge.
            let mut urn: Vec<usize> = vec![0];
            let mut picked = Vec::with_capacity(degree);
            for t in 1..n {
                let want = degree.min(t);
                picked.clear();
                while picked.len() < want {
                    let target = urn[rng.random_range(0..urn.len())];
                    if !picked.contains(&target) {
                        picked.push(target);
                    }
                }
                for &target in &picked {
                    builder.add_edge_ix(t, target);
                    urn.push(target);
                }
                urn.push(t);
            }
        }
    }
    builder.build(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded_rng;

    #[test]
    fn complete_and_empty_random_graphs() {
        let mut rng = seeded_rng(1);
        let full = generate_synthetic(GeneratorKind::Random, 10, 1.0, &mut rng).unwrap();
        assert_eq!(full.edge_count(), 90);
        let none = generate_synthetic(GeneratorKind::Random, 10, 0.0, &mut rng).unwrap();
        assert_eq!((none.node_count(), none.edge_count()), (10, 0));
    }

    #[test]
    fn random_graph_is_deterministic() {
        let a = generate_synthetic(GeneratorKind::Random, 100, 0.1, &mut seeded_rng(7)).unwrap();
        let b = generate_synthetic(GeneratorKind::Random, 100, 0.1, &mut seeded_rng(7)).unwrap();
        assert_eq!(a, b);
        let c = generate_synthetic(GeneratorKind::Random, 100, 0.1, &mut seeded_rng(8)).unwrap();
        assert_ne!(a.edges().collect::<Vec<_>>(), c.edges().collect::<Vec<_>>());
    }

    #[test]
    fn preferential_out_degrees() {
        let g = generate_synthetic(GeneratorKind::Preferential, 200, 3.0, &mut seeded_rng(3)).unwrap();
        for v in 0..200 {
            assert_eq!(g.out_degree(v), v.min(3));
        }
        assert_eq!(g.edge_count(), 1 + 2 + 197 * 3);
        // Older nodes collect more in-edges.
        let early: usize = (0..10).map(|v| g.in_neighbors(v).len()).sum();
        let late: usize = (190..200).map(|v| g.in_neighbors(v).len()).sum();
        assert!(early > late);
    }

    #[test]
    fn parameter_errors() {
        let mut rng = seeded_rng(0);
        assert!(generate_synthetic(GeneratorKind::Random, 1, 0.5, &mut rng).is_err());
        assert!(generate_synthetic(GeneratorKind::Random, 5, 1.5, &mut rng).is_err());
        assert!(generate_synthetic(GeneratorKind::Random, 5, -0.1, &mut rng).is_err());
        assert!(generate_synthetic(GeneratorKind::Preferential, 5, 5.0, &mut rng).is_err());
        assert!(generate_synthetic(GeneratorKind::Preferential, 5, 0.0, &mut rng).is_err());
        assert!(generate_synthetic(GeneratorKind::Preferential, 5, 1.5, &mut rng).is_err());
        assert!(generate_synthetic(GeneratorKind::Preferential, 5, 4.0, &mut rng).is_ok());
    }
}
