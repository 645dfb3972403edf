//! Stochastic Kronecker graphs from a 2x2 initiator matrix.

use rand::Rng;

use crate::graph::{Graph, GraphBuilder, NodeId};

/// Samples a graph whose edge probabilities are the `m`-fold Kronecker power
/// of the initiator, with m = ceil(log2 n). The initiator is symmetrized by
/// averaging so the sampled upper triangle defines an undirected graph; the
/// result is truncated to the first `n` nodes.
///
/// The probability of edge (u, v) factors over bit positions:
/// prod_b S[u_b][v_b]. Per-row lookup tables over the low and high bit halves
/// turn each pair probability into a single multiplication.
pub(crate) fn generate<R: Rng>(n: usize, initiator: &[[f64; 2]; 2], rng: &mut R) -> Graph {
    let m = (n as f64).log2().ceil() as u32;
    let s = [
        [
            initiator[0][0],
            0.5 * (initiator[0][1] + initiator[1][0]),
        ],
        [
            0.5 * (initiator[0][1] + initiator[1][0]),
            initiator[1][1],
        ],
    ];

    let lo_bits = (m / 2) as usize;
    let hi_bits = (m - m / 2) as usize;
    let lo_mask = (1usize << lo_bits) - 1;
    let mut table_lo = vec![0.0f64; 1 << lo_bits];
    let mut table_hi = vec![0.0f64; 1 << hi_bits];

    let mut builder = GraphBuilder::new(n);
    for u in 0..n {
        fill_table(&mut table_lo, u, 0, lo_bits, &s);
        fill_table(&mut table_hi, u, lo_bits, hi_bits, &s);
        for v in (u + 1)..n {
            let p = table_hi[v >> lo_bits] * table_lo[v & lo_mask];
            if rng.random::<f64>() < p {
                builder.add_edge(u as NodeId, v as NodeId);
            }
        }
    }
    builder.build()
}

/// table[x] = prod over `bits` positions starting at `offset` of
/// s[bit of u][bit of x].
fn fill_table(table: &mut [f64], u: usize, offset: usize, bits: usize, s: &[[f64; 2]; 2]) {
    for (x, slot) in table.iter_mut().enumerate() {
        let mut p = 1.0;
        for b in 0..bits {
            let ub = (u >> (offset + b)) & 1;
            let xb = (x >> b) & 1;
            p *= s[ub][xb];
        }
        *slot = p;
    }
}
