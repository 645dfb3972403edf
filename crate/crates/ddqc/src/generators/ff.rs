//! Fire-spreading growth.

use std::collections::VecDeque;

use rand::Rng;

use crate::graph::{Graph, GraphBuilder, NodeId};

/// Grows a graph one node at a time. Each new node picks a uniformly random
/// ambassador among the existing nodes and starts a burn: from every burned
/// node, a geometric number of its unburned out-neighbors (mean
/// `p/(1-p)`) and in-neighbors (mean `p_b/(1-p_b)`) catch fire, without
/// revisits. The new node then links to every burned node. The burn runs on
/// the directed growth history; the returned graph is undirected.
pub(crate) fn generate<R: Rng>(n: usize, p_forward: f64, p_backward: f64, rng: &mut R) -> Graph {
    let mut builder = GraphBuilder::new(n);
    let mut out_adj: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    let mut in_adj: Vec<Vec<NodeId>> = vec![Vec::new(); n];

    let mut visited = vec![false; n];
    let mut burned: Vec<NodeId> = Vec::new();
    let mut queue: VecDeque<NodeId> = VecDeque::new();
    let mut scratch: Vec<NodeId> = Vec::new();

    for v in 1..n {
        let ambassador = rng.random_range(0..v) as NodeId;
        burned.clear();
        queue.clear();
        visited[ambassador as usize] = true;
        burned.push(ambassador);
        queue.push_back(ambassador);

        while let Some(u) = queue.pop_front() {
            let forward = geometric(rng, p_forward);
            let backward = geometric(rng, p_backward);
            for (count, neighbors) in [
                (forward, &out_adj[u as usize]),
                (backward, &in_adj[u as usize]),
            ] {
                scratch.clear();
                scratch.extend(neighbors.iter().filter(|&&x| !visited[x as usize]));
                let take = count.min(scratch.len());
                for i in 0..take {
                    let j = rng.random_range(i..scratch.len());
                    scratch.swap(i, j);
                    let next = scratch[i];
                    visited[next as usize] = true;
                    burned.push(next);
                    queue.push_back(next);
                }
            }
        }

        for &b in &burned {
            builder.add_edge(v as NodeId, b);
            out_adj[v].push(b);
            in_adj[b as usize].push(v as NodeId);
        }
        for &b in &burned {
            visited[b as usize] = false;
        }
    }
    builder.build()
}

/// Geometric draw with P(K >= k) = p^k, i.e. mean p/(1-p).
fn geometric<R: Rng>(rng: &mut R, p: f64) -> usize {
    if p <= 0.0 {
        return 0;
    }
    let u: f64 = 1.0 - rng.random::<f64>();
    (u.ln() / p.ln()).floor() as usize
}
