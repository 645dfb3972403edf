//! Structural graph features: clustering, path length, degree assortativity,
//! and modularity of a greedily optimized partition.

use std::collections::BTreeMap;
use std::collections::VecDeque;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::{fit_power_law, percentile_features};
use crate::degree::DegreeDistribution;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::quantify::features_from_distribution;
use crate::rng::rng_from_seed;

/// The four structural features, with a flag recording whether the path
/// length is exact or a sampled estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StructuralVector {
    pub avg_clustering: f64,
    pub avg_path_length: f64,
    /// False when the path length was estimated from sampled BFS sources.
    pub path_length_exact: bool,
    pub assortativity: f64,
    pub modularity: f64,
}

impl StructuralVector {
    /// Feature values in fixed column order.
    pub fn values(&self) -> [f64; 4] {
        [
            self.avg_clustering,
            self.avg_path_length,
            self.assortativity,
            self.modularity,
        ]
    }

    pub const COLUMNS: [&'static str; 4] = [
        "avg_clustering",
        "avg_path_length",
        "assortativity",
        "modularity",
    ];
}

/// Mean local clustering coefficient; nodes of degree < 2 contribute 0.
pub fn avg_clustering(g: &Graph) -> f64 {
    let n = g.node_count();
    if n == 0 {
        return 0.0;
    }
    let total: f64 = (0..n as NodeId)
        .into_par_iter()
        .map(|v| {
            let nbrs = g.neighbors(v);
            let deg = nbrs.len();
            if deg < 2 {
                return 0.0;
            }
            // Each edge among neighbors is seen twice across the merges.
            let mut twice_links = 0usize;
            for &u in nbrs {
                twice_links += sorted_intersection_count(nbrs, g.neighbors(u));
            }
            let links = twice_links / 2;
            links as f64 / (deg * (deg - 1) / 2) as f64
        })
        .sum();
    total / n as f64
}

fn sorted_intersection_count(a: &[NodeId], b: &[NodeId]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Average shortest-path length, as a value plus an exactness flag.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathLength {
    pub value: f64,
    pub exact: bool,
}

/// Mean shortest-path length over connected node pairs.
///
/// Runs BFS from every node when the graph has at most `sample_size` nodes;
/// otherwise from `sample_size` uniformly sampled sources, flagging the
/// result as an estimate. Disconnected pairs are excluded, not infinite.
pub fn avg_path_length(g: &Graph, sample_size: usize) -> Result<PathLength> {
    avg_path_length_seeded(g, sample_size, 0)
}

/// [`avg_path_length`] with an explicit seed for the source sample.
pub fn avg_path_length_seeded(g: &Graph, sample_size: usize, seed: u64) -> Result<PathLength> {
    if g.edge_count() == 0 {
        return Err(Error::Undefined(
            "average path length requires at least one edge".into(),
        ));
    }
    let n = g.node_count();
    let exact = n <= sample_size;
    let sources: Vec<NodeId> = if exact {
        (0..n as NodeId).collect()
    } else {
        let mut pool: Vec<NodeId> = (0..n as NodeId).collect();
        let mut rng = rng_from_seed(seed);
        for i in 0..sample_size {
            let j = rng.random_range(i..n);
            pool.swap(i, j);
        }
        pool.truncate(sample_size);
        pool
    };

    // Distances are integers, so u64 accumulation keeps the reduction exact
    // and independent of the parallel schedule.
    let (dist_sum, pair_count) = sources
        .par_iter()
        .map(|&s| bfs_distance_sum(g, s))
        .reduce(|| (0u64, 0u64), |a, b| (a.0 + b.0, a.1 + b.1));

    if pair_count == 0 {
        return Err(Error::Undefined(
            "no connected pairs among the sampled sources".into(),
        ));
    }
    Ok(PathLength {
        value: dist_sum as f64 / pair_count as f64,
        exact,
    })
}

fn bfs_distance_sum(g: &Graph, source: NodeId) -> (u64, u64) {
    let mut dist = vec![u32::MAX; g.node_count()];
    let mut queue = VecDeque::new();
    dist[source as usize] = 0;
    queue.push_back(source);
    let (mut sum, mut count) = (0u64, 0u64);
    while let Some(u) = queue.pop_front() {
        let du = dist[u as usize];
        for &v in g.neighbors(u) {
            if dist[v as usize] == u32::MAX {
                dist[v as usize] = du + 1;
                sum += (du + 1) as u64;
                count += 1;
                queue.push_back(v);
            }
        }
    }
    (sum, count)
}

/// Pearson correlation of degrees across edge endpoints, with both
/// orientations of every edge included.
///
/// Undefined when the endpoint degrees have zero variance (regular graphs
/// and unions of same-degree components); detected exactly in integers.
pub fn assortativity(g: &Graph) -> Result<f64> {
    if g.edge_count() == 0 {
        return Err(Error::Undefined(
            "assortativity requires at least one edge".into(),
        ));
    }
    let degrees = g.degree_sequence();
    let mut sum_x: u128 = 0;
    let mut sum_x2: u128 = 0;
    let mut sum_xy: u128 = 0;
    for (u, v) in g.edges() {
        let (du, dv) = (degrees[u as usize] as u128, degrees[v as usize] as u128);
        sum_x += du + dv;
        sum_x2 += du * du + dv * dv;
        sum_xy += 2 * du * dv;
    }
    let pairs = 2 * g.edge_count() as u128;
    // var * pairs^2 = pairs * sum_x2 - sum_x^2, exactly.
    let var_num = pairs * sum_x2 - sum_x * sum_x;
    if var_num == 0 {
        return Err(Error::Undefined(
            "assortativity undefined: endpoint degrees have zero variance".into(),
        ));
    }
    let cov_num = pairs as i128 * sum_xy as i128 - (sum_x * sum_x) as i128;
    Ok(cov_num as f64 / var_num as f64)
}

/// Modularity of the partition found by greedy local moving with graph
/// aggregation, visiting nodes in id order so the result is deterministic.
/// The single-community partition (Q = 0) is always a candidate, so the
/// returned value is never negative.
pub fn modularity(g: &Graph) -> Result<f64> {
    if g.edge_count() == 0 {
        return Err(Error::Domain(
            "modularity requires at least one edge".into(),
        ));
    }
    let m = g.edge_count() as f64;
    let mut adj: Vec<Vec<(usize, f64)>> = (0..g.node_count() as NodeId)
        .map(|v| g.neighbors(v).iter().map(|&u| (u as usize, 1.0)).collect())
        .collect();
    let mut loops: Vec<f64> = vec![0.0; g.node_count()];

    let mut best_q = 0.0f64;
    loop {
        let n = adj.len();
        let k: Vec<f64> = (0..n)
            .map(|v| 2.0 * loops[v] + adj[v].iter().map(|&(_, w)| w).sum::<f64>())
            .collect();
        let mut comm: Vec<usize> = (0..n).collect();
        let mut tot = k.clone();

        loop {
            let mut moved = false;
            for v in 0..n {
                let c_old = comm[v];
                tot[c_old] -= k[v];
                let mut weights: BTreeMap<usize, f64> = BTreeMap::new();
                for &(u, w) in &adj[v] {
                    if u != v {
                        *weights.entry(comm[u]).or_insert(0.0) += w;
                    }
                }
                let gain_of = |c: usize, w_in: f64| w_in / m - tot[c] * k[v] / (2.0 * m * m);
                let mut best_c = c_old;
                let mut best_gain = gain_of(c_old, weights.get(&c_old).copied().unwrap_or(0.0));
                for (&c, &w_in) in &weights {
                    let gain = gain_of(c, w_in);
                    if gain > best_gain + 1e-12 {
                        best_gain = gain;
                        best_c = c;
                    }
                }
                tot[best_c] += k[v];
                comm[v] = best_c;
                if best_c != c_old {
                    moved = true;
                }
            }
            if !moved {
                break;
            }
        }

        let q = partition_modularity(&adj, &loops, &k, &comm, m);
        if q > best_q {
            best_q = q;
        }

        // Renumber communities densely, in ascending old-label order.
        let mut labels: Vec<usize> = comm.clone();
        labels.sort_unstable();
        labels.dedup();
        if labels.len() == n {
            break;
        }
        let dense: BTreeMap<usize, usize> =
            labels.iter().enumerate().map(|(i, &c)| (c, i)).collect();

        let mut new_loops = vec![0.0f64; labels.len()];
        let mut new_maps: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); labels.len()];
        for v in 0..n {
            let cv = dense[&comm[v]];
            new_loops[cv] += loops[v];
            for &(u, w) in &adj[v] {
                let cu = dense[&comm[u]];
                if cu == cv {
                    // Both directions of the internal edge pass here.
                    new_loops[cv] += 0.5 * w;
                } else {
                    *new_maps[cv].entry(cu).or_insert(0.0) += w;
                }
            }
        }
        adj = new_maps
            .into_iter()
            .map(|m| m.into_iter().collect())
            .collect();
        loops = new_loops;
    }
    Ok(best_q)
}

fn partition_modularity(
    adj: &[Vec<(usize, f64)>],
    loops: &[f64],
    k: &[f64],
    comm: &[usize],
    m: f64,
) -> f64 {
    let mut internal: BTreeMap<usize, f64> = BTreeMap::new();
    let mut degree: BTreeMap<usize, f64> = BTreeMap::new();
    for v in 0..adj.len() {
        let c = comm[v];
        *internal.entry(c).or_insert(0.0) += loops[v];
        *degree.entry(c).or_insert(0.0) += k[v];
        for &(u, w) in &adj[v] {
            if u != v && comm[u] == c {
                *internal.entry(c).or_insert(0.0) += 0.5 * w;
            }
        }
    }
    internal
        .iter()
        .map(|(c, &e_c)| {
            let d_c = degree[c];
            e_c / m - (d_c / (2.0 * m)).powi(2)
        })
        .sum()
}

/// Which degree-distribution features to append to the structural vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DdMethod {
    None,
    Powerlaw,
    Percentiles,
    Ddqc,
}

impl DdMethod {
    pub const ALL: [DdMethod; 4] = [
        DdMethod::None,
        DdMethod::Powerlaw,
        DdMethod::Percentiles,
        DdMethod::Ddqc,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            DdMethod::None => "none",
            DdMethod::Powerlaw => "powerlaw",
            DdMethod::Percentiles => "percentiles",
            DdMethod::Ddqc => "ddqc",
        }
    }
}

impl std::fmt::Display for DdMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for DdMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<DdMethod> {
        match s {
            "none" => Ok(DdMethod::None),
            "powerlaw" => Ok(DdMethod::Powerlaw),
            "percentiles" => Ok(DdMethod::Percentiles),
            "ddqc" => Ok(DdMethod::Ddqc),
            other => Err(Error::Param(format!(
                "unknown feature method '{other}' (expected none, powerlaw, percentiles, or ddqc)"
            ))),
        }
    }
}

/// Computes the full structural vector with a seeded path-length sample.
pub fn structural_vector(g: &Graph, path_sample: usize, seed: u64) -> Result<StructuralVector> {
    let path = avg_path_length_seeded(g, path_sample, seed)?;
    Ok(StructuralVector {
        avg_clustering: avg_clustering(g),
        avg_path_length: path.value,
        path_length_exact: path.exact,
        assortativity: assortativity(g)?,
        modularity: modularity(g)?,
    })
}

/// Concatenates the 4 structural features with 0, 1, or 8
/// degree-distribution features depending on the method.
pub fn integrated_features(g: &Graph, dd_method: DdMethod) -> Result<Vec<f64>> {
    integrated_features_seeded(g, dd_method, 500, 0)
}

/// [`integrated_features`] with explicit path sampling parameters.
pub fn integrated_features_seeded(
    g: &Graph,
    dd_method: DdMethod,
    path_sample: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    let base = structural_vector(g, path_sample, seed)?;
    let mut out: Vec<f64> = base.values().to_vec();
    match dd_method {
        DdMethod::None => {}
        DdMethod::Powerlaw => {
            let dist = DegreeDistribution::from_graph(g)?;
            out.push(fit_power_law(&dist)?.gamma);
        }
        DdMethod::Percentiles => {
            let dist = DegreeDistribution::from_graph(g)?;
            out.extend_from_slice(percentile_features(&dist).values());
        }
        DdMethod::Ddqc => {
            let dist = DegreeDistribution::from_graph(g)?;
            out.extend_from_slice(features_from_distribution(&dist).values());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate, GenSpec, ModelParams};

    const EPS: f64 = 1e-9;

    fn complete(n: usize) -> Graph {
        let edges: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|u| ((u + 1)..n as u32).map(move |v| (u, v)))
            .collect();
        Graph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn clustering_hand_values() {
        assert!((avg_clustering(&complete(3)) - 1.0).abs() < EPS);

        let p3 = Graph::from_edges(3, vec![(0, 1), (1, 2)]).unwrap();
        assert_eq!(avg_clustering(&p3), 0.0);

        // K4 minus one edge: two degree-3 nodes close 2 of 3 neighbor pairs,
        // two degree-2 nodes close their single pair.
        let g = Graph::from_edges(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let expected = (2.0 / 3.0 + 2.0 / 3.0 + 1.0 + 1.0) / 4.0;
        assert!((avg_clustering(&g) - expected).abs() < EPS);
        assert!((avg_clustering(&g) - 5.0 / 6.0).abs() < EPS);
    }

    #[test]
    fn path_length_hand_values() {
        let p3 = Graph::from_edges(3, vec![(0, 1), (1, 2)]).unwrap();
        let r = avg_path_length(&p3, 100).unwrap();
        assert!(r.exact);
        assert!((r.value - 4.0 / 3.0).abs() < EPS);

        let k5 = complete(5);
        assert!((avg_path_length(&k5, 100).unwrap().value - 1.0).abs() < EPS);

        let two_k3 = Graph::from_edges(
            6,
            vec![(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)],
        )
        .unwrap();
        assert!((avg_path_length(&two_k3, 100).unwrap().value - 1.0).abs() < EPS);

        let no_edges = Graph::from_edges(4, Vec::new()).unwrap();
        assert!(matches!(
            avg_path_length(&no_edges, 100),
            Err(Error::Undefined(_))
        ));
    }

    #[test]
    fn sampled_path_length_tracks_exact() {
        let g = generate(&GenSpec {
            node_count: 600,
            params: ModelParams::Ba { k: 3 },
            seed: 4,
        })
        .unwrap();
        let exact = avg_path_length(&g, 600).unwrap();
        assert!(exact.exact);
        let sampled = avg_path_length_seeded(&g, 150, 9).unwrap();
        assert!(!sampled.exact);
        let rel = (sampled.value - exact.value).abs() / exact.value;
        assert!(rel < 0.05, "relative error {rel}");
    }

    #[test]
    fn assortativity_hand_values() {
        let star = Graph::from_edges(5, vec![(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert!((assortativity(&star).unwrap() + 1.0).abs() < EPS);

        let p4 = Graph::from_edges(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!((assortativity(&p4).unwrap() + 0.5).abs() < EPS);

        let two_edges = Graph::from_edges(4, vec![(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            assortativity(&two_edges),
            Err(Error::Undefined(_))
        ));
        // Regular graphs have no endpoint degree variance either.
        let cycle = Graph::from_edges(5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        assert!(matches!(assortativity(&cycle), Err(Error::Undefined(_))));
    }

    #[test]
    fn modularity_hand_values() {
        let two_k3 = Graph::from_edges(
            6,
            vec![(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)],
        )
        .unwrap();
        assert!((modularity(&two_k3).unwrap() - 0.5).abs() < 1e-9);

        let k5 = complete(5);
        let q = modularity(&k5).unwrap();
        assert!((0.0..0.05).contains(&q), "K5 modularity {q}");
    }

    #[test]
    fn modularity_finds_planted_cliques() {
        // Four K5 cliques joined in a ring by single bridges; the clique
        // partition scores (10/44 - (22/88)^2) * 4 ≈ 0.659.
        let mut edges = Vec::new();
        for c in 0..4u32 {
            let base = 5 * c;
            for u in 0..5 {
                for v in (u + 1)..5 {
                    edges.push((base + u, base + v));
                }
            }
        }
        edges.extend_from_slice(&[(4, 5), (9, 10), (14, 15), (19, 0)]);
        let g = Graph::from_edges(20, edges).unwrap();
        let q = modularity(&g).unwrap();
        assert!(q > 0.6, "ring-of-cliques modularity {q}");
    }

    #[test]
    fn modularity_is_deterministic() {
        let g = generate(&GenSpec {
            node_count: 300,
            params: ModelParams::Er { density: 0.03 },
            seed: 12,
        })
        .unwrap();
        let a = modularity(&g).unwrap();
        let b = modularity(&g).unwrap();
        assert_eq!(a, b);
        assert!(a >= 0.0);
    }

    #[test]
    fn integrated_feature_lengths() {
        let g = generate(&GenSpec {
            node_count: 200,
            params: ModelParams::Ba { k: 2 },
            seed: 3,
        })
        .unwrap();
        assert_eq!(integrated_features(&g, DdMethod::None).unwrap().len(), 4);
        assert_eq!(
            integrated_features(&g, DdMethod::Powerlaw).unwrap().len(),
            5
        );
        assert_eq!(
            integrated_features(&g, DdMethod::Percentiles)
                .unwrap()
                .len(),
            12
        );
        assert_eq!(integrated_features(&g, DdMethod::Ddqc).unwrap().len(), 12);
    }
}
