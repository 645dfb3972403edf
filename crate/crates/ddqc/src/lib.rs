//! Degree-distribution quantification and comparison for complex networks.
//!
//! The crate turns a graph's degree distribution into a compact feature
//! vector whose regions adapt to the distribution's mean and standard
//! deviation, making graphs of very different sizes directly comparable.
//! Alongside the core quantification it ships the classic comparison
//! baselines (Kolmogorov-Smirnov distance, power-law exponent fits,
//! fixed-bin percentiles), seeded generators for six network models,
//! structural graph features, and evaluation protocols for measuring how
//! well a distance separates networks by their generating model.

pub mod baselines;
pub mod degree;
pub mod error;
pub mod evaluation;
pub mod generators;
pub mod graph;
pub mod io;
pub mod quantify;
pub mod rng;
pub mod structural;

pub use baselines::{
    fit_power_law, ks_distance, percentile_distance, percentile_features,
    percentile_features_with, powerlaw_distance, PercentileBinning, PercentileFeatures,
    PowerLawFit,
};
pub use degree::DegreeDistribution;
pub use error::{Error, Result};
pub use evaluation::{
    distance_matrix, dunn_index, instance_from_graph, instances_from_manifest, knn_accuracy,
    precision_at_k, run_experiment, DistanceMatrix, DistanceMethod, EvalReport,
    ExperimentOutcome, Instance, LabeledCorpus,
};
pub use generators::{
    build_artificial_corpus, build_corpus_with, corpus_specs, generate, sample_params,
    CorpusOptions, GenSpec, ModelKind, ModelParams,
};
pub use io::config::{load_config, parse_config, CorpusMode, ExperimentConfig, ExperimentKind};
pub use graph::{Graph, NodeId, SanitizeStats};
pub use quantify::{
    build_regions, ddqc_distance, extract_features, features_from_distribution,
    interval_degree_probability, l1_distance, DdqcFeatures, Interval, RegionPartition,
};
pub use structural::{
    assortativity, avg_clustering, avg_path_length, integrated_features, modularity,
    structural_vector, DdMethod, PathLength, StructuralVector,
};
