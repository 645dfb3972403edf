//! Preferential attachment growth.

use rand::Rng;

use crate::graph::{Graph, GraphBuilder, NodeId};

/// Grows a graph by attaching each new node to `k` distinct existing nodes,
/// chosen with probability proportional to their current degree. The nucleus
/// is a complete graph on `k` nodes, so attachment is well-defined from the
/// first arrival.
pub(crate) fn generate<R: Rng>(n: usize, k: usize, rng: &mut R) -> Graph {
    let mut builder = GraphBuilder::new(n);
    // One entry per unit of degree; uniform picks from it are
    // degree-proportional picks.
    let mut endpoints: Vec<NodeId> = Vec::with_capacity(2 * k * n);

    for u in 0..k {
        for v in (u + 1)..k {
            builder.add_edge(u as NodeId, v as NodeId);
            endpoints.push(u as NodeId);
            endpoints.push(v as NodeId);
        }
    }

    let mut chosen: Vec<NodeId> = Vec::with_capacity(k);
    for t in k..n {
        chosen.clear();
        while chosen.len() < k {
            // A graph with no edges yet has no degree mass; fall back to a
            // uniform pick (only reachable while the nucleus is a single node).
            let pick = if endpoints.is_empty() {
                rng.random_range(0..t) as NodeId
            } else {
                endpoints[rng.random_range(0..endpoints.len())]
            };
            if !chosen.contains(&pick) {
                chosen.push(pick);
            }
        }
        for &c in &chosen {
            builder.add_edge(t as NodeId, c);
            endpoints.push(t as NodeId);
            endpoints.push(c);
        }
    }
    builder.build()
}
