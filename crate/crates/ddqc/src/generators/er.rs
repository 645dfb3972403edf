//! Uniform random graphs at a fixed edge density.

use rand::Rng;

use crate::graph::{Graph, GraphBuilder, NodeId};

/// Samples G(n, p) with p = `density` by geometric skips over the ordered
/// pair sequence, so the cost is proportional to the number of edges rather
/// than the number of pairs.
pub(crate) fn generate<R: Rng>(n: usize, density: f64, rng: &mut R) -> Graph {
    let mut builder = GraphBuilder::new(n);
    if density >= 1.0 {
        for u in 0..n as NodeId {
            for v in (u + 1)..n as NodeId {
                builder.add_edge(u, v);
            }
        }
        return builder.build();
    }
    let lnq = (1.0 - density).ln();
    let mut v: i64 = 1;
    let mut w: i64 = -1;
    while (v as usize) < n {
        let r: f64 = rng.random();
        let skip = ((1.0 - r).ln() / lnq).floor() as i64;
        w += 1 + skip;
        while w >= v && (v as usize) < n {
            w -= v;
            v += 1;
        }
        if (v as usize) < n {
            builder.add_edge(w as NodeId, v as NodeId);
        }
    }
    builder.build()
}
