//! Small-world graphs: ring lattice plus random rewiring.

use rand::Rng;

use crate::graph::{Graph, GraphBuilder, NodeId};

/// Builds a ring lattice where every node connects to its k/2 nearest
/// neighbors on each side, then rewires each lattice edge with probability
/// `beta` to a uniformly random endpoint that creates neither a loop nor a
/// duplicate. Rewiring preserves the edge count: exactly n * (k/2) edges.
pub(crate) fn generate<R: Rng>(n: usize, k: usize, beta: f64, rng: &mut R) -> Graph {
    let half = k / 2;
    let mut builder = GraphBuilder::new(n);
    for offset in 1..=half {
        for u in 0..n {
            builder.add_edge(u as NodeId, ((u + offset) % n) as NodeId);
        }
    }
    for offset in 1..=half {
        for u in 0..n {
            if rng.random::<f64>() >= beta {
                continue;
            }
            let old = ((u + offset) % n) as NodeId;
            if builder.degree(u as NodeId) >= n - 1 {
                continue;
            }
            let new = loop {
                let candidate = rng.random_range(0..n) as NodeId;
                if candidate != u as NodeId && !builder.has_edge(u as NodeId, candidate) {
                    break candidate;
                }
            };
            builder.remove_edge(u as NodeId, old);
            builder.add_edge(u as NodeId, new);
        }
    }
    builder.build()
}
