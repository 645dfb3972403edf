//! Seeded generators for six network models.
//!
//! Every generator is deterministic for a fixed seed: graphs are built from a
//! counter-based stream RNG, so corpus construction can run in parallel
//! without the schedule affecting the output.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::baselines::PercentileBinning;
use crate::error::{Error, Result};
use crate::evaluation::{instance_from_graph, Instance, LabeledCorpus};
use crate::graph::Graph;
use crate::rng::{derive_seed, rng_from_seed};

mod ba;
mod er;
mod ff;
mod kg;
mod rp;
mod ws;

/// The six supported generative models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModelKind {
    Ba,
    Er,
    Ff,
    Kg,
    Rp,
    Ws,
}

impl ModelKind {
    pub const ALL: [ModelKind; 6] = [
        ModelKind::Ba,
        ModelKind::Er,
        ModelKind::Ff,
        ModelKind::Kg,
        ModelKind::Rp,
        ModelKind::Ws,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::Ba => "BA",
            ModelKind::Er => "ER",
            ModelKind::Ff => "FF",
            ModelKind::Kg => "KG",
            ModelKind::Rp => "RP",
            ModelKind::Ws => "WS",
        }
    }
}

impl std::fmt::Display for ModelKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<ModelKind> {
        match s.to_ascii_uppercase().as_str() {
            "BA" => Ok(ModelKind::Ba),
            "ER" => Ok(ModelKind::Er),
            "FF" => Ok(ModelKind::Ff),
            "KG" => Ok(ModelKind::Kg),
            "RP" => Ok(ModelKind::Rp),
            "WS" => Ok(ModelKind::Ws),
            other => Err(Error::Param(format!(
                "unknown model '{other}' (expected one of BA, ER, FF, KG, RP, WS)"
            ))),
        }
    }
}

/// Model-specific generation parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelParams {
    /// Preferential attachment: each new node brings `k` edges.
    Ba { k: u32 },
    /// Uniform random graph at the given edge density.
    Er { density: f64 },
    /// Fire-spreading growth with forward and backward burn probabilities.
    Ff { p_forward: f64, p_backward: f64 },
    /// Stochastic Kronecker product of a 2x2 initiator matrix.
    Kg { initiator: [[f64; 2]; 2] },
    /// Random graph with a power-law expected degree sequence.
    Rp { gamma: f64 },
    /// Ring lattice with `k` nearest neighbors, rewired with probability `beta`.
    Ws { k: u32, beta: f64 },
}

impl ModelParams {
    pub fn kind(&self) -> ModelKind {
        match self {
            ModelParams::Ba { .. } => ModelKind::Ba,
            ModelParams::Er { .. } => ModelKind::Er,
            ModelParams::Ff { .. } => ModelKind::Ff,
            ModelParams::Kg { .. } => ModelKind::Kg,
            ModelParams::Rp { .. } => ModelKind::Rp,
            ModelParams::Ws { .. } => ModelKind::Ws,
        }
    }
}

/// A fully specified generation request.
#[derive(Debug, Clone, PartialEq)]
pub struct GenSpec {
    pub node_count: usize,
    pub params: ModelParams,
    pub seed: u64,
}

impl GenSpec {
    pub fn model(&self) -> ModelKind {
        self.params.kind()
    }

    /// Checks structural validity: enough nodes, probabilities in range,
    /// neighbor counts that fit the graph.
    pub fn validate(&self) -> Result<()> {
        let n = self.node_count;
        if n < 10 {
            return Err(Error::Param(format!(
                "node_count must be at least 10, got {n}"
            )));
        }
        match &self.params {
            ModelParams::Ba { k } => {
                if *k < 1 || *k as usize >= n {
                    return Err(Error::Param(format!(
                        "BA attachment k must satisfy 1 <= k < node_count, got k = {k}"
                    )));
                }
            }
            ModelParams::Er { density } => {
                if !(*density > 0.0 && *density <= 1.0) {
                    return Err(Error::Param(format!(
                        "ER density must lie in (0, 1], got {density}"
                    )));
                }
            }
            ModelParams::Ff {
                p_forward,
                p_backward,
            } => {
                for (name, p) in [("p_forward", p_forward), ("p_backward", p_backward)] {
                    if !(*p >= 0.0 && *p < 1.0) {
                        return Err(Error::Param(format!(
                            "FF {name} must lie in [0, 1), got {p}"
                        )));
                    }
                }
            }
            ModelParams::Kg { initiator } => {
                for row in initiator {
                    for p in row {
                        if !(*p >= 0.0 && *p <= 1.0) {
                            return Err(Error::Param(format!(
                                "KG initiator entries must lie in [0, 1], got {p}"
                            )));
                        }
                    }
                }
            }
            ModelParams::Rp { gamma } => {
                if !(*gamma > 2.0) {
                    return Err(Error::Param(format!(
                        "RP gamma must exceed 2, got {gamma}"
                    )));
                }
            }
            ModelParams::Ws { k, beta } => {
                if *k < 2 || 2 * (*k as usize / 2) >= n {
                    return Err(Error::Param(format!(
                        "WS neighbor count k must satisfy 2 <= k and k/2 < node_count/2, got k = {k}"
                    )));
                }
                if !(*beta >= 0.0 && *beta <= 1.0) {
                    return Err(Error::Param(format!(
                        "WS beta must lie in [0, 1], got {beta}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Checks the tighter parameter ranges used for the artificial corpus.
    pub fn validate_corpus_ranges(&self) -> Result<()> {
        self.validate()?;
        match &self.params {
            ModelParams::Ba { k } => {
                if !(1..=10).contains(k) {
                    return Err(Error::Param(format!(
                        "corpus BA k must lie in [1, 10], got {k}"
                    )));
                }
            }
            ModelParams::Er { density } => {
                if !(*density >= 0.002 && *density <= 0.005) {
                    return Err(Error::Param(format!(
                        "corpus ER density must lie in [0.002, 0.005], got {density}"
                    )));
                }
            }
            ModelParams::Ff {
                p_forward,
                p_backward,
            } => {
                if (*p_backward - 0.32).abs() > 1e-12 {
                    return Err(Error::Param(format!(
                        "corpus FF p_backward is fixed at 0.32, got {p_backward}"
                    )));
                }
                if !(*p_forward >= 0.0 && *p_forward <= 0.3) {
                    return Err(Error::Param(format!(
                        "corpus FF p_forward must lie in [0, 0.3], got {p_forward}"
                    )));
                }
            }
            ModelParams::Kg { initiator } => {
                let ranges = [
                    [(0.7, 0.9), (0.5, 0.7)],
                    [(0.4, 0.6), (0.2, 0.4)],
                ];
                for i in 0..2 {
                    for j in 0..2 {
                        let (lo, hi) = ranges[i][j];
                        let p = initiator[i][j];
                        if !(p >= lo && p <= hi) {
                            return Err(Error::Param(format!(
                                "corpus KG initiator[{}][{}] must lie in [{lo}, {hi}], got {p}",
                                i + 1,
                                j + 1
                            )));
                        }
                    }
                }
            }
            ModelParams::Rp { gamma } => {
                if !(*gamma > 2.5 && *gamma < 3.0) {
                    return Err(Error::Param(format!(
                        "corpus RP gamma must lie in (2.5, 3), got {gamma}"
                    )));
                }
            }
            ModelParams::Ws { k, beta } => {
                if !(2..=10).contains(k) {
                    return Err(Error::Param(format!(
                        "corpus WS k must lie in [2, 10], got {k}"
                    )));
                }
                if (*beta - 0.5).abs() > 1e-12 {
                    return Err(Error::Param(format!(
                        "corpus WS beta is fixed at 0.5, got {beta}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Generates a graph from a validated spec. Deterministic per seed.
pub fn generate(spec: &GenSpec) -> Result<Graph> {
    spec.validate()?;
    let mut rng = rng_from_seed(spec.seed);
    let n = spec.node_count;
    let graph = match &spec.params {
        ModelParams::Ba { k } => ba::generate(n, *k as usize, &mut rng),
        ModelParams::Er { density } => er::generate(n, *density, &mut rng),
        ModelParams::Ff {
            p_forward,
            p_backward,
        } => ff::generate(n, *p_forward, *p_backward, &mut rng),
        ModelParams::Kg { initiator } => kg::generate(n, initiator, &mut rng),
        ModelParams::Rp { gamma } => rp::generate(n, *gamma, &mut rng),
        ModelParams::Ws { k, beta } => ws::generate(n, *k as usize, *beta, &mut rng),
    };
    Ok(graph)
}

/// Draws model parameters uniformly from the corpus ranges.
pub fn sample_params<R: Rng>(model: ModelKind, rng: &mut R) -> ModelParams {
    match model {
        ModelKind::Ba => ModelParams::Ba {
            k: rng.random_range(1..=10),
        },
        ModelKind::Er => ModelParams::Er {
            density: rng.random_range(0.002..=0.005),
        },
        ModelKind::Ff => ModelParams::Ff {
            p_forward: rng.random_range(0.0..=0.3),
            p_backward: 0.32,
        },
        ModelKind::Kg => ModelParams::Kg {
            initiator: [
                [rng.random_range(0.7..=0.9), rng.random_range(0.5..=0.7)],
                [rng.random_range(0.4..=0.6), rng.random_range(0.2..=0.4)],
            ],
        },
        ModelKind::Rp => ModelParams::Rp {
            gamma: loop {
                let g = rng.random_range(2.5..3.0);
                if g > 2.5 {
                    break g;
                }
            },
        },
        ModelKind::Ws => ModelParams::Ws {
            k: rng.random_range(2..=10),
            beta: 0.5,
        },
    }
}

/// Deterministically enumerates the specs of an artificial corpus:
/// `iterations` rounds of `per_model` graphs per model, with node counts
/// uniform in `n_range` and parameters drawn from the corpus ranges.
pub fn corpus_specs(
    iterations: usize,
    per_model: usize,
    n_range: (usize, usize),
    seed: u64,
) -> Vec<GenSpec> {
    let mut specs = Vec::with_capacity(iterations * per_model * ModelKind::ALL.len());
    for iter in 0..iterations {
        for (mi, model) in ModelKind::ALL.iter().enumerate() {
            for j in 0..per_model {
                let index = (iter * ModelKind::ALL.len() + mi) * per_model + j;
                // Two independent streams per graph: parameter draws must not
                // perturb the generation stream.
                let mut param_rng = rng_from_seed(derive_seed(seed, 2 * index as u64));
                let gen_seed = derive_seed(seed, 2 * index as u64 + 1);
                let node_count = param_rng.random_range(n_range.0..=n_range.1);
                let params = sample_params(*model, &mut param_rng);
                specs.push(GenSpec {
                    node_count,
                    params,
                    seed: gen_seed,
                });
            }
        }
    }
    specs
}

/// Corpus construction knobs beyond the generation parameters.
#[derive(Debug, Clone, Copy)]
pub struct CorpusOptions {
    pub binning: PercentileBinning,
    /// When set, structural vectors are computed with this path-length
    /// source-sample budget.
    pub structural_sample: Option<usize>,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions {
            binning: PercentileBinning::Linear,
            structural_sample: None,
        }
    }
}

/// [`build_artificial_corpus`] with explicit feature options. Graphs are
/// generated and measured in parallel, then discarded; only the extracted
/// features and distributions are kept. Instance ids read
/// `<MODEL>-<iteration>-<index within model>`, labels are model names.
pub fn build_corpus_with(
    iterations: usize,
    per_model: usize,
    n_range: (usize, usize),
    seed: u64,
    options: &CorpusOptions,
) -> Result<LabeledCorpus> {
    let specs = corpus_specs(iterations, per_model, n_range, seed);
    let group = ModelKind::ALL.len() * per_model;
    let instances: Vec<Instance> = specs
        .par_iter()
        .enumerate()
        .map(|(index, spec)| {
            let iteration = index / group;
            let j = index % per_model;
            let id = format!("{}-{:03}-{:02}", spec.model().name(), iteration, j);
            let graph = generate(spec)?;
            instance_from_graph(
                id,
                spec.model().name(),
                &graph,
                options.binning,
                options.structural_sample.map(|s| (s, spec.seed)),
            )
        })
        .collect::<Result<_>>()?;
    LabeledCorpus::new(instances)
}

/// Builds a labeled corpus of `iterations` rounds with `per_model` graphs
/// from each of the six models, node counts uniform over `n_range`.
pub fn build_artificial_corpus(
    iterations: usize,
    per_model: usize,
    n_range: (usize, usize),
    seed: u64,
) -> Result<LabeledCorpus> {
    build_corpus_with(iterations, per_model, n_range, seed, &CorpusOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edges_of(g: &Graph) -> Vec<(u32, u32)> {
        g.edges().collect()
    }

    fn spec(node_count: usize, params: ModelParams, seed: u64) -> GenSpec {
        GenSpec {
            node_count,
            params,
            seed,
        }
    }

    #[test]
    fn all_models_are_deterministic_per_seed() {
        let specs = [
            spec(200, ModelParams::Ba { k: 3 }, 5),
            spec(200, ModelParams::Er { density: 0.05 }, 5),
            spec(
                200,
                ModelParams::Ff {
                    p_forward: 0.25,
                    p_backward: 0.32,
                },
                5,
            ),
            spec(
                200,
                ModelParams::Kg {
                    initiator: [[0.8, 0.6], [0.5, 0.3]],
                },
                5,
            ),
            spec(200, ModelParams::Rp { gamma: 2.7 }, 5),
            spec(200, ModelParams::Ws { k: 4, beta: 0.5 }, 5),
        ];
        for s in &specs {
            let a = generate(s).unwrap();
            let b = generate(s).unwrap();
            assert_eq!(edges_of(&a), edges_of(&b), "model {}", s.model());
            let mut other = s.clone();
            other.seed = 6;
            let c = generate(&other).unwrap();
            assert_ne!(edges_of(&a), edges_of(&c), "model {}", s.model());
        }
    }

    #[test]
    fn ba_edge_count_is_exact() {
        let g = generate(&spec(1000, ModelParams::Ba { k: 3 }, 42)).unwrap();
        assert_eq!(g.node_count(), 1000);
        assert_eq!(g.edge_count(), 3 + 997 * 3);
    }

    #[test]
    fn ba_degree_distribution_is_heavy_tailed() {
        let mut hits = 0;
        for seed in 0..10 {
            let g = generate(&spec(1000, ModelParams::Ba { k: 3 }, seed)).unwrap();
            let degrees = g.degree_sequence();
            let mean = degrees.iter().sum::<usize>() as f64 / degrees.len() as f64;
            let max = *degrees.iter().max().unwrap() as f64;
            if max > 3.0 * mean {
                hits += 1;
            }
        }
        assert!(hits >= 9, "only {hits}/10 seeds were heavy-tailed");
    }

    #[test]
    fn er_edge_count_tracks_density() {
        let n = 1000usize;
        let density = 0.003;
        let pairs = n * (n - 1) / 2;
        let expected = density * pairs as f64;
        let sigma = (pairs as f64 * density * (1.0 - density)).sqrt();
        for seed in 0..5 {
            let g = generate(&spec(n, ModelParams::Er { density }, seed)).unwrap();
            let diff = (g.edge_count() as f64 - expected).abs();
            assert!(diff < 4.0 * sigma, "seed {seed}: {} edges", g.edge_count());
        }
    }

    #[test]
    fn ff_graphs_are_connected() {
        let g = generate(&spec(
            300,
            ModelParams::Ff {
                p_forward: 0.2,
                p_backward: 0.32,
            },
            9,
        ))
        .unwrap();
        // Every joining node links at least to its ambassador.
        let mut seen = vec![false; g.node_count()];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        assert_eq!(count, g.node_count());
    }

    #[test]
    fn kg_expected_edge_count() {
        // Power-of-two node count: no truncation, so the closed-form expected
        // edge count applies: ((sum P)^m - (P11 + P22)^m) / 2.
        let initiator = [[0.8, 0.6], [0.5, 0.3]];
        let n = 4096usize;
        let m = 12u32;
        let total: f64 = 2.2;
        let diag: f64 = 0.8 + 0.3;
        let expected = (total.powi(m as i32) - diag.powi(m as i32)) / 2.0;
        let sigma = expected.sqrt();
        for seed in 0..3 {
            let g = generate(&spec(n, ModelParams::Kg { initiator }, seed)).unwrap();
            let diff = (g.edge_count() as f64 - expected).abs();
            assert!(
                diff < 5.0 * sigma,
                "seed {seed}: {} edges vs expected {expected:.1}",
                g.edge_count()
            );
        }
    }

    #[test]
    fn kg_truncates_to_requested_node_count() {
        let g = generate(&spec(
            1500,
            ModelParams::Kg {
                initiator: [[0.8, 0.6], [0.5, 0.3]],
            },
            1,
        ))
        .unwrap();
        assert_eq!(g.node_count(), 1500);
    }

    #[test]
    fn ws_edge_count_is_exact() {
        let g = generate(&spec(1000, ModelParams::Ws { k: 4, beta: 0.5 }, 3)).unwrap();
        assert_eq!(g.edge_count(), 2000);
        // Odd k floors to k/2 neighbors per side.
        let g = generate(&spec(1000, ModelParams::Ws { k: 7, beta: 0.5 }, 3)).unwrap();
        assert_eq!(g.edge_count(), 3000);
    }

    #[test]
    fn rp_generates_sparse_heavy_tail() {
        let g = generate(&spec(2000, ModelParams::Rp { gamma: 2.7 }, 17)).unwrap();
        assert!(g.edge_count() > 0);
        let degrees = g.degree_sequence();
        let mean = degrees.iter().sum::<usize>() as f64 / degrees.len() as f64;
        assert!(mean < 10.0, "unexpectedly dense: mean degree {mean}");
    }

    #[test]
    fn validation_rejects_out_of_range_params() {
        assert!(spec(5, ModelParams::Ba { k: 1 }, 0).validate().is_err());
        assert!(spec(100, ModelParams::Ba { k: 100 }, 0).validate().is_err());
        assert!(spec(100, ModelParams::Er { density: 0.0 }, 0)
            .validate()
            .is_err());
        assert!(spec(100, ModelParams::Ws { k: 1, beta: 0.5 }, 0)
            .validate()
            .is_err());

        let err = spec(100, ModelParams::Er { density: 0.5 }, 0)
            .validate_corpus_ranges()
            .unwrap_err();
        assert!(err.to_string().contains("0.002"));
        assert!(spec(
            100,
            ModelParams::Ff {
                p_forward: 0.2,
                p_backward: 0.5
            },
            0
        )
        .validate_corpus_ranges()
        .is_err());
        assert!(spec(100, ModelParams::Rp { gamma: 2.1 }, 0)
            .validate_corpus_ranges()
            .is_err());
    }

    #[test]
    fn corpus_specs_are_reproducible_and_in_range() {
        let a = corpus_specs(2, 3, (50, 90), 77);
        let b = corpus_specs(2, 3, (50, 90), 77);
        assert_eq!(a, b);
        assert_eq!(a.len(), 2 * 6 * 3);
        for s in &a {
            assert!(s.node_count >= 50 && s.node_count <= 90);
            s.validate_corpus_ranges().unwrap();
        }
        // Each model appears per_model times per iteration.
        let ba_count = a.iter().filter(|s| s.model() == ModelKind::Ba).count();
        assert_eq!(ba_count, 6);
        // Param draws differ across slots.
        let seeds: std::collections::HashSet<u64> = a.iter().map(|s| s.seed).collect();
        assert_eq!(seeds.len(), a.len());
    }

    #[test]
    fn corpus_node_counts_center_on_range_midpoint() {
        let specs = corpus_specs(100, 10, (1000, 5000), 42);
        assert_eq!(specs.len(), 6000);
        let mean = specs.iter().map(|s| s.node_count).sum::<usize>() as f64 / 6000.0;
        assert!((mean - 3000.0).abs() < 100.0, "mean node count {mean}");
    }

    #[test]
    fn artificial_corpus_has_one_instance_per_slot() {
        let corpus = build_artificial_corpus(1, 10, (50, 90), 9).unwrap();
        assert_eq!(corpus.len(), 60);
        assert_eq!(corpus.classes(), vec!["BA", "ER", "FF", "KG", "RP", "WS"]);
        for model in ModelKind::ALL {
            let count = corpus
                .instances()
                .iter()
                .filter(|i| i.label == model.name())
                .count();
            assert_eq!(count, 10);
        }
        assert_eq!(corpus.instances()[0].id, "BA-000-00");
        assert_eq!(corpus.instances()[59].id, "WS-000-09");
    }

    #[test]
    fn artificial_corpus_is_seed_deterministic() {
        let a = build_artificial_corpus(1, 2, (50, 90), 4242).unwrap();
        let b = build_artificial_corpus(1, 2, (50, 90), 4242).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.instances().iter().zip(b.instances()) {
            assert_eq!(x.id, y.id);
            assert_eq!(x.distribution.support(), y.distribution.support());
            assert_eq!(x.ddqc.values(), y.ddqc.values());
        }

        let c = build_artificial_corpus(1, 2, (50, 90), 4243).unwrap();
        let same = a
            .instances()
            .iter()
            .zip(c.instances())
            .all(|(x, y)| x.distribution.support() == y.distribution.support());
        assert!(!same, "different master seeds must change the corpus");
    }
}
