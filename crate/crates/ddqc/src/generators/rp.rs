//! Random graphs with a power-law expected degree sequence.

use rand::Rng;

use crate::graph::{Graph, GraphBuilder, NodeId};

/// Assigns each node a weight drawn from a Pareto distribution with tail
/// exponent `gamma - 1` (so expected degrees follow a power law with
/// exponent `gamma`), then connects each pair independently with probability
/// min(1, w_u * w_v / sum of weights).
pub(crate) fn generate<R: Rng>(n: usize, gamma: f64, rng: &mut R) -> Graph {
    let pareto_exp = -1.0 / (gamma - 1.0);
    let weights: Vec<f64> = (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            (1.0 - u).powf(pareto_exp)
        })
        .collect();
    let total: f64 = weights.iter().sum();

    let mut builder = GraphBuilder::new(n);
    for u in 0..n {
        let wu = weights[u];
        for v in (u + 1)..n {
            let p = (wu * weights[v] / total).min(1.0);
            if rng.random::<f64>() < p {
                builder.add_edge(u as NodeId, v as NodeId);
            }
        }
    }
    builder.build()
}
