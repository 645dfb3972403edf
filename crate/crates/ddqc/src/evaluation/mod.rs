//! Labeled corpora, pairwise distance matrices, and the retrieval /
//! clustering measures used to compare degree-distribution methods.

mod experiment;

pub use experiment::{run_experiment, ExperimentOutcome};

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::baselines::{
    fit_power_law, ks_distance, percentile_features_with, powerlaw_distance, PercentileBinning,
    PercentileFeatures, PowerLawFit,
};
use crate::degree::DegreeDistribution;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::{edgelist, manifest};
use crate::quantify::{ddqc_distance, features_from_distribution, DdqcFeatures};
use crate::structural::{structural_vector, StructuralVector};

/// One graph's worth of evaluation inputs. The graph itself is not kept;
/// every method works from the distribution or the precomputed features.
#[derive(Debug, Clone)]
pub struct Instance {
    pub id: String,
    pub label: String,
    pub distribution: DegreeDistribution,
    pub ddqc: DdqcFeatures,
    pub percentiles: PercentileFeatures,
    /// None when the power-law fit failed for this graph.
    pub powerlaw: Option<PowerLawFit>,
    /// None unless requested at build time, or when undefined for the graph.
    pub structural: Option<StructuralVector>,
}

/// Builds an instance from a graph. `structural` is `(path_sample, seed)`
/// for the path-length estimate; fit or structural failures leave the
/// corresponding field `None` rather than failing the instance.
pub fn instance_from_graph(
    id: impl Into<String>,
    label: impl Into<String>,
    g: &Graph,
    binning: PercentileBinning,
    structural: Option<(usize, u64)>,
) -> Result<Instance> {
    let distribution = DegreeDistribution::from_graph(g)?;
    Ok(Instance {
        id: id.into(),
        label: label.into(),
        ddqc: features_from_distribution(&distribution),
        percentiles: percentile_features_with(&distribution, binning),
        powerlaw: fit_power_law(&distribution).ok(),
        structural: structural.and_then(|(sample, seed)| structural_vector(g, sample, seed).ok()),
        distribution,
    })
}

/// A corpus of labeled instances: ids unique, at least two classes.
#[derive(Debug, Clone)]
pub struct LabeledCorpus {
    instances: Vec<Instance>,
}

impl LabeledCorpus {
    pub fn new(instances: Vec<Instance>) -> Result<LabeledCorpus> {
        let mut ids = HashSet::new();
        for inst in &instances {
            if inst.id.is_empty() || inst.label.is_empty() {
                return Err(Error::Domain(
                    "corpus instances need non-empty ids and labels".into(),
                ));
            }
            if !ids.insert(inst.id.as_str()) {
                return Err(Error::Domain(format!("duplicate instance id '{}'", inst.id)));
            }
        }
        let corpus = LabeledCorpus { instances };
        if corpus.classes().len() < 2 {
            return Err(Error::Domain(
                "corpus must contain at least two classes".into(),
            ));
        }
        Ok(corpus)
    }

    pub fn instances(&self) -> &[Instance] {
        &self.instances
    }

    pub fn into_instances(self) -> Vec<Instance> {
        self.instances
    }

    pub fn len(&self) -> usize {
        self.instances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instances.is_empty()
    }

    /// Distinct labels, sorted.
    pub fn classes(&self) -> Vec<&str> {
        let mut out: Vec<&str> = self.instances.iter().map(|i| i.label.as_str()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Reads a manifest and loads every referenced edge list as an instance,
/// labeled by the record's `model` field. `structural_sample` turns on the
/// structural vector with the given path-length budget.
pub fn instances_from_manifest(
    path: &Path,
    binning: PercentileBinning,
    structural_sample: Option<usize>,
) -> Result<Vec<Instance>> {
    let records = manifest::read_manifest(path)?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    records
        .par_iter()
        .map(|rec| {
            let (g, _) = edgelist::read_edge_list_declared(&base.join(&rec.path), Some(rec.nodes))?;
            instance_from_graph(
                rec.id.clone(),
                rec.model.clone(),
                &g,
                binning,
                structural_sample.map(|s| (s, rec.seed)),
            )
        })
        .collect()
}

/// A distance on degree distributions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceMethod {
    Ddqc,
    Ks,
    Powerlaw,
    Percentiles,
}

impl DistanceMethod {
    pub const ALL: [DistanceMethod; 4] = [
        DistanceMethod::Ddqc,
        DistanceMethod::Ks,
        DistanceMethod::Powerlaw,
        DistanceMethod::Percentiles,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            DistanceMethod::Ddqc => "ddqc",
            DistanceMethod::Ks => "ks",
            DistanceMethod::Powerlaw => "powerlaw",
            DistanceMethod::Percentiles => "percentiles",
        }
    }

    /// Whether the method depends on a successful power-law fit.
    pub fn needs_fit(&self) -> bool {
        matches!(self, DistanceMethod::Powerlaw)
    }
}

impl std::fmt::Display for DistanceMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for DistanceMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<DistanceMethod> {
        match s {
            "ddqc" => Ok(DistanceMethod::Ddqc),
            "ks" => Ok(DistanceMethod::Ks),
            "powerlaw" => Ok(DistanceMethod::Powerlaw),
            "percentiles" => Ok(DistanceMethod::Percentiles),
            other => Err(Error::Param(format!(
                "unknown distance method '{other}' (expected ddqc, ks, powerlaw, or percentiles)"
            ))),
        }
    }
}

/// Symmetric pairwise distance matrix with zero diagonal.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    method: String,
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    /// Fills the matrix from a pairwise function, computing each unordered
    /// pair once (rows in parallel) and mirroring.
    pub fn from_fn<F>(method: impl Into<String>, n: usize, f: F) -> DistanceMatrix
    where
        F: Fn(usize, usize) -> f64 + Sync,
    {
        let rows: Vec<Vec<f64>> = (0..n)
            .into_par_iter()
            .map(|i| ((i + 1)..n).map(|j| f(i, j)).collect())
            .collect();
        let mut data = vec![0.0; n * n];
        for (i, row) in rows.iter().enumerate() {
            for (off, &d) in row.iter().enumerate() {
                let j = i + 1 + off;
                data[i * n + j] = d;
                data[j * n + i] = d;
            }
        }
        DistanceMatrix {
            method: method.into(),
            n,
            data,
        }
    }

    /// Wraps a precomputed square matrix, validating shape, symmetry, zero
    /// diagonal, and non-negative finite entries.
    pub fn from_square(method: impl Into<String>, rows: Vec<Vec<f64>>) -> Result<DistanceMatrix> {
        let n = rows.len();
        let mut data = vec![0.0; n * n];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Domain("distance matrix must be square".into()));
            }
            for (j, &d) in row.iter().enumerate() {
                if !d.is_finite() || d < 0.0 {
                    return Err(Error::Domain("distances must be finite and >= 0".into()));
                }
                data[i * n + j] = d;
            }
        }
        for i in 0..n {
            if data[i * n + i] != 0.0 {
                return Err(Error::Domain("distance matrix diagonal must be zero".into()));
            }
            for j in (i + 1)..n {
                if data[i * n + j] != data[j * n + i] {
                    return Err(Error::Domain("distance matrix must be symmetric".into()));
                }
            }
        }
        Ok(DistanceMatrix {
            method: method.into(),
            n,
            data,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn method(&self) -> &str {
        &self.method
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i < self.n && j < self.n);
        self.data[i * self.n + j]
    }
}

fn pair_distance(a: &Instance, b: &Instance, method: DistanceMethod) -> f64 {
    match method {
        DistanceMethod::Ddqc => ddqc_distance(&a.ddqc, &b.ddqc),
        DistanceMethod::Ks => ks_distance(&a.distribution, &b.distribution),
        DistanceMethod::Percentiles => {
            crate::baselines::percentile_distance(&a.percentiles, &b.percentiles)
        }
        DistanceMethod::Powerlaw => powerlaw_distance(
            a.powerlaw.as_ref().expect("fit checked before pairing"),
            b.powerlaw.as_ref().expect("fit checked before pairing"),
        ),
    }
}

/// Indices of instances whose power-law fit failed.
pub fn fit_failures(instances: &[Instance]) -> Vec<usize> {
    instances
        .iter()
        .enumerate()
        .filter(|(_, inst)| inst.powerlaw.is_none())
        .map(|(i, _)| i)
        .collect()
}

/// Pairwise distances over `instances[kept]`, in `kept` order.
pub fn distance_matrix_over(
    instances: &[Instance],
    kept: &[usize],
    method: DistanceMethod,
) -> Result<DistanceMatrix> {
    for &i in kept {
        if method.needs_fit() && instances[i].powerlaw.is_none() {
            return Err(Error::Fit(format!(
                "instance '{}' has no power-law fit",
                instances[i].id
            )));
        }
    }
    Ok(DistanceMatrix::from_fn(method.name(), kept.len(), |i, j| {
        pair_distance(&instances[kept[i]], &instances[kept[j]], method)
    }))
}

/// Pairwise distances over a whole corpus. Instances a method cannot score
/// (failed power-law fits) are excluded; their ids are returned alongside.
pub fn distance_matrix(
    corpus: &LabeledCorpus,
    method: DistanceMethod,
) -> Result<(DistanceMatrix, Vec<String>)> {
    let instances = corpus.instances();
    let (kept, excluded): (Vec<usize>, Vec<usize>) = if method.needs_fit() {
        let failed: HashSet<usize> = fit_failures(instances).into_iter().collect();
        (0..instances.len()).partition(|i| !failed.contains(i))
    } else {
        ((0..instances.len()).collect(), Vec::new())
    };
    let dm = distance_matrix_over(instances, &kept, method)?;
    let excluded_ids = excluded
        .into_iter()
        .map(|i| instances[i].id.clone())
        .collect();
    Ok((dm, excluded_ids))
}

/// Neighbor indices of `i`, nearest first; ties broken by smaller index so
/// the ranking is total and deterministic.
fn ranked_neighbors(dm: &DistanceMatrix, i: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..dm.len()).filter(|&j| j != i).collect();
    order.sort_unstable_by(|&a, &b| {
        dm.get(i, a)
            .total_cmp(&dm.get(i, b))
            .then_with(|| a.cmp(&b))
    });
    order
}

fn check_labels(dm: &DistanceMatrix, labels: &[String]) -> Result<()> {
    if labels.len() != dm.len() {
        return Err(Error::Domain(format!(
            "{} labels for a {}-instance matrix",
            labels.len(),
            dm.len()
        )));
    }
    Ok(())
}

/// Leave-one-out k-nearest-neighbor accuracy. The predicted label is the
/// majority among the k nearest; vote ties go to the label with the smaller
/// summed distance, then to the lexicographically smaller label.
pub fn knn_accuracy(dm: &DistanceMatrix, labels: &[String], k: usize) -> Result<f64> {
    check_labels(dm, labels)?;
    let n = dm.len();
    if k == 0 || k >= n {
        return Err(Error::Domain(format!(
            "k must satisfy 1 <= k < {} instances, got {}",
            n, k
        )));
    }
    let mut hits = 0usize;
    for i in 0..n {
        let neighbors = ranked_neighbors(dm, i);
        let mut votes: BTreeMap<&str, (usize, f64)> = BTreeMap::new();
        for &j in &neighbors[..k] {
            let entry = votes.entry(labels[j].as_str()).or_insert((0, 0.0));
            entry.0 += 1;
            entry.1 += dm.get(i, j);
        }
        // BTreeMap iterates labels in ascending order, so on full ties the
        // smaller label is kept.
        let mut best: Option<(&str, usize, f64)> = None;
        for (&label, &(count, sum)) in &votes {
            let replace = match best {
                None => true,
                Some((_, bc, bs)) => count > bc || (count == bc && sum < bs),
            };
            if replace {
                best = Some((label, count, sum));
            }
        }
        if best.expect("k >= 1 neighbor").0 == labels[i] {
            hits += 1;
        }
    }
    Ok(hits as f64 / n as f64)
}

/// Mean fraction of the k nearest neighbors that share the query's label.
pub fn precision_at_k(dm: &DistanceMatrix, labels: &[String], k: usize) -> Result<f64> {
    check_labels(dm, labels)?;
    let n = dm.len();
    if k == 0 || k >= n {
        return Err(Error::Domain(format!(
            "k must satisfy 1 <= k < {} instances, got {}",
            n, k
        )));
    }
    let mut total = 0.0;
    for i in 0..n {
        let neighbors = ranked_neighbors(dm, i);
        let same = neighbors[..k]
            .iter()
            .filter(|&&j| labels[j] == labels[i])
            .count();
        total += same as f64 / k as f64;
    }
    Ok(total / n as f64)
}

/// Dunn index with average-linkage separations: minimum mean inter-class
/// distance over maximum mean intra-class distance. Scale-invariant.
pub fn dunn_index(dm: &DistanceMatrix, labels: &[String]) -> Result<f64> {
    check_labels(dm, labels)?;
    let mut classes: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, label) in labels.iter().enumerate() {
        classes.entry(label.as_str()).or_default().push(i);
    }
    if classes.len() < 2 {
        return Err(Error::Domain(
            "Dunn index needs at least two classes".into(),
        ));
    }
    let members: Vec<&Vec<usize>> = classes.values().collect();

    let mut max_intra = 0.0f64;
    for class in &members {
        if class.len() < 2 {
            continue;
        }
        let mut sum = 0.0;
        let mut pairs = 0usize;
        for (a, &i) in class.iter().enumerate() {
            for &j in &class[a + 1..] {
                sum += dm.get(i, j);
                pairs += 1;
            }
        }
        max_intra = max_intra.max(sum / pairs as f64);
    }

    let mut min_inter = f64::INFINITY;
    for (a, ca) in members.iter().enumerate() {
        for cb in &members[a + 1..] {
            let mut sum = 0.0;
            for &i in ca.iter() {
                for &j in cb.iter() {
                    sum += dm.get(i, j);
                }
            }
            min_inter = min_inter.min(sum / (ca.len() * cb.len()) as f64);
        }
    }

    if max_intra == 0.0 {
        return Err(Error::Undefined(
            "Dunn index division by zero intra-class spread".into(),
        ));
    }
    Ok(min_inter / max_intra)
}

/// Scores for one method on one corpus: indices 0..k_max-1 hold k=1..=k_max.
#[derive(Debug, Clone)]
pub struct MethodScores {
    pub knn: Vec<f64>,
    pub p_at_k: Vec<f64>,
    pub dunn: f64,
}

/// Evaluates one distance matrix at every k in 1..=k_max.
pub fn evaluate_matrix(
    dm: &DistanceMatrix,
    labels: &[String],
    k_max: usize,
) -> Result<MethodScores> {
    let mut knn = Vec::with_capacity(k_max);
    let mut p_at_k = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        knn.push(knn_accuracy(dm, labels, k)?);
        p_at_k.push(precision_at_k(dm, labels, k)?);
    }
    Ok(MethodScores {
        knn,
        p_at_k,
        dunn: dunn_index(dm, labels)?,
    })
}

/// Evaluation results for one method, averaged over iterations.
#[derive(Debug, Clone, Serialize)]
pub struct EvalReport {
    pub method: String,
    /// Corpus descriptor: generation parameters or the manifest path.
    pub corpus: String,
    pub iterations: usize,
    /// k -> mean leave-one-out accuracy.
    pub knn_accuracy: BTreeMap<usize, f64>,
    pub mean_knn_accuracy: f64,
    /// k -> mean precision at k.
    pub p_at_k: BTreeMap<usize, f64>,
    pub mean_p_at_k: f64,
    pub dunn_index: f64,
    /// Ids excluded because their power-law fit failed.
    pub excluded: Vec<String>,
}

impl EvalReport {
    /// Averages per-iteration scores into one report.
    pub fn from_scores(
        method: impl Into<String>,
        corpus: impl Into<String>,
        per_iteration: &[MethodScores],
        excluded: Vec<String>,
    ) -> EvalReport {
        let iterations = per_iteration.len();
        assert!(iterations > 0, "at least one iteration");
        let k_max = per_iteration[0].knn.len();
        let mean_at = |select: &dyn Fn(&MethodScores) -> &[f64], idx: usize| {
            per_iteration.iter().map(|s| select(s)[idx]).sum::<f64>() / iterations as f64
        };
        let mut knn_accuracy = BTreeMap::new();
        let mut p_at_k = BTreeMap::new();
        for idx in 0..k_max {
            knn_accuracy.insert(idx + 1, mean_at(&|s| &s.knn, idx));
            p_at_k.insert(idx + 1, mean_at(&|s| &s.p_at_k, idx));
        }
        let mean_knn_accuracy = knn_accuracy.values().sum::<f64>() / k_max as f64;
        let mean_p_at_k = p_at_k.values().sum::<f64>() / k_max as f64;
        let dunn_index =
            per_iteration.iter().map(|s| s.dunn).sum::<f64>() / iterations as f64;
        EvalReport {
            method: method.into(),
            corpus: corpus.into(),
            iterations,
            knn_accuracy,
            mean_knn_accuracy,
            p_at_k,
            mean_p_at_k,
            dunn_index,
            excluded,
        }
    }
}
