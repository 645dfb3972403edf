//! Config-driven experiment runner. Each iteration is an independent corpus;
//! measures are computed per iteration and averaged. All outputs are written
//! with fixed six-decimal formatting in a deterministic order, so the same
//! configuration always produces byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use crate::error::Result;
use crate::generators::{build_corpus_with, CorpusOptions, ModelKind};
use crate::io::config::{CorpusMode, ExperimentConfig, ExperimentKind};
use crate::structural::DdMethod;

use super::{
    distance_matrix_over, evaluate_matrix, instances_from_manifest, DistanceMatrix,
    DistanceMethod, EvalReport, Instance, LabeledCorpus,
};

/// What an experiment produced: one report per method, plus every file path
/// that was written under the configured output directory.
#[derive(Debug)]
pub struct ExperimentOutcome {
    pub reports: Vec<EvalReport>,
    pub written: Vec<PathBuf>,
}

/// A column in the comparison: either a distance on degree distributions, or
/// structural features extended with one degree-distribution summary.
#[derive(Debug, Clone, Copy)]
enum Variant {
    Distance(DistanceMethod),
    Integrated(DdMethod),
}

impl Variant {
    fn tag(&self) -> String {
        match self {
            Variant::Distance(m) => m.name().to_string(),
            Variant::Integrated(dd) => format!("features_{}", dd.name()),
        }
    }

    fn matrix(&self, tag: &str, group: &[Instance], kept: &[usize]) -> Result<DistanceMatrix> {
        match self {
            Variant::Distance(m) => distance_matrix_over(group, kept, *m),
            Variant::Integrated(dd) => {
                let mut rows: Vec<Vec<f64>> = kept
                    .iter()
                    .map(|&i| integrated_row(&group[i], *dd))
                    .collect();
                zscore_columns(&mut rows);
                Ok(DistanceMatrix::from_fn(tag, rows.len(), move |i, j| {
                    euclidean(&rows[i], &rows[j])
                }))
            }
        }
    }
}

/// Raw (un-normalized) feature row for the integrated comparison.
fn integrated_row(inst: &Instance, dd: DdMethod) -> Vec<f64> {
    let base = inst
        .structural
        .as_ref()
        .expect("kept instances carry structural vectors");
    let mut row = base.values().to_vec();
    match dd {
        DdMethod::None => {}
        DdMethod::Powerlaw => row.push(
            inst.powerlaw
                .as_ref()
                .expect("kept instances carry fits")
                .gamma,
        ),
        DdMethod::Percentiles => row.extend_from_slice(inst.percentiles.values()),
        DdMethod::Ddqc => row.extend_from_slice(inst.ddqc.values()),
    }
    row
}

/// Standardizes each column to mean 0, std 1; constant columns become 0 so
/// they stop contributing to distances instead of producing NaN.
fn zscore_columns(rows: &mut [Vec<f64>]) {
    if rows.len() < 2 {
        return;
    }
    let n = rows.len() as f64;
    for c in 0..rows[0].len() {
        let mean = rows.iter().map(|r| r[c]).sum::<f64>() / n;
        let var = rows.iter().map(|r| (r[c] - mean).powi(2)).sum::<f64>() / n;
        let std = var.sqrt();
        for row in rows.iter_mut() {
            row[c] = if std > 0.0 { (row[c] - mean) / std } else { 0.0 };
        }
    }
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Runs the configured experiment and writes `report.csv`, `report.json`,
/// and per-method `matrix_<tag>.csv` / `features_<tag>.csv` files into the
/// output directory. The matrix file holds the first iteration's distances;
/// the features file covers every instance used, across all iterations.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutcome> {
    fs::create_dir_all(&cfg.output_dir)?;

    let structural_sample =
        (cfg.experiment == ExperimentKind::Integrated).then_some(cfg.path_sample);
    let (groups, descriptor) = build_groups(cfg, structural_sample)?;

    let variants: Vec<Variant> = match cfg.experiment {
        ExperimentKind::Distance => cfg.methods.iter().copied().map(Variant::Distance).collect(),
        ExperimentKind::Integrated => cfg
            .dd_methods
            .iter()
            .copied()
            .map(Variant::Integrated)
            .collect(),
    };

    // An instance a selected method cannot score is dropped from every
    // method's matrices, so all methods compare over the same corpus.
    let needs_fit = variants.iter().any(|v| match v {
        Variant::Distance(m) => m.needs_fit(),
        Variant::Integrated(dd) => *dd == DdMethod::Powerlaw,
    });
    let needs_structural = cfg.experiment == ExperimentKind::Integrated;
    let usable = |inst: &Instance| {
        (!needs_fit || inst.powerlaw.is_some()) && (!needs_structural || inst.structural.is_some())
    };
    let kept: Vec<Vec<usize>> = groups
        .iter()
        .map(|g| (0..g.len()).filter(|&i| usable(&g[i])).collect())
        .collect();
    let excluded: Vec<String> = groups
        .iter()
        .zip(&kept)
        .flat_map(|(g, kept)| {
            (0..g.len())
                .filter(|i| !kept.contains(i))
                .map(|i| g[i].id.clone())
        })
        .collect();

    let mut reports = Vec::new();
    let mut written = Vec::new();
    for variant in &variants {
        let tag = variant.tag();
        let mut scores = Vec::with_capacity(groups.len());
        for (gi, group) in groups.iter().enumerate() {
            let dm = variant.matrix(&tag, group, &kept[gi])?;
            let labels: Vec<String> = kept[gi].iter().map(|&i| group[i].label.clone()).collect();
            scores.push(evaluate_matrix(&dm, &labels, cfg.k_max)?);
            if gi == 0 {
                let ids: Vec<&str> = kept[0].iter().map(|&i| group[i].id.as_str()).collect();
                let path = cfg.output_dir.join(format!("matrix_{}.csv", tag));
                fs::write(&path, matrix_csv(&ids, &dm))?;
                written.push(path);
            }
        }
        reports.push(EvalReport::from_scores(
            tag.clone(),
            descriptor.clone(),
            &scores,
            excluded.clone(),
        ));
        if let Some(text) = features_csv(variant, &groups, &kept) {
            let path = cfg.output_dir.join(format!("features_{}.csv", tag));
            fs::write(&path, text)?;
            written.push(path);
        }
    }

    let path = cfg.output_dir.join("report.csv");
    fs::write(&path, report_csv(&reports))?;
    written.push(path);

    let path = cfg.output_dir.join("report.json");
    let mut json = serde_json::to_string_pretty(&reports)?;
    json.push('\n');
    fs::write(&path, json)?;
    written.push(path);

    Ok(ExperimentOutcome { reports, written })
}

/// Builds the per-iteration instance groups plus a corpus descriptor.
fn build_groups(
    cfg: &ExperimentConfig,
    structural_sample: Option<usize>,
) -> Result<(Vec<Vec<Instance>>, String)> {
    match cfg.mode {
        CorpusMode::Generate => {
            let options = CorpusOptions {
                binning: cfg.percentile_binning,
                structural_sample,
            };
            let corpus = build_corpus_with(
                cfg.iterations,
                cfg.per_model,
                (cfg.n_min, cfg.n_max),
                cfg.seed,
                &options,
            )?;
            let group_size = ModelKind::ALL.len() * cfg.per_model;
            let mut instances = corpus.into_instances();
            let groups = (0..cfg.iterations)
                .map(|_| instances.drain(..group_size).collect())
                .collect();
            let descriptor = format!(
                "generated:iterations={},per_model={},n={}..{},seed={}",
                cfg.iterations, cfg.per_model, cfg.n_min, cfg.n_max, cfg.seed
            );
            Ok((groups, descriptor))
        }
        CorpusMode::Ingest => {
            let manifest = cfg.manifest.as_ref().expect("checked by config validation");
            let instances =
                instances_from_manifest(manifest, cfg.percentile_binning, structural_sample)?;
            let corpus = LabeledCorpus::new(instances)?;
            let descriptor = format!("manifest:{}", manifest.display());
            Ok((vec![corpus.into_instances()], descriptor))
        }
    }
}

fn matrix_csv(ids: &[&str], dm: &DistanceMatrix) -> String {
    let mut out = String::from("id");
    for id in ids {
        out.push(',');
        out.push_str(id);
    }
    out.push('\n');
    for i in 0..dm.len() {
        out.push_str(ids[i]);
        for j in 0..dm.len() {
            let _ = write!(out, ",{:.6}", dm.get(i, j));
        }
        out.push('\n');
    }
    out
}

fn report_csv(reports: &[EvalReport]) -> String {
    let mut out = String::from("method,metric,k,value\n");
    for r in reports {
        for (k, v) in &r.knn_accuracy {
            let _ = writeln!(out, "{},knn_accuracy,{},{:.6}", r.method, k, v);
        }
        let _ = writeln!(out, "{},mean_knn_accuracy,,{:.6}", r.method, r.mean_knn_accuracy);
        for (k, v) in &r.p_at_k {
            let _ = writeln!(out, "{},p_at_k,{},{:.6}", r.method, k, v);
        }
        let _ = writeln!(out, "{},mean_p_at_k,,{:.6}", r.method, r.mean_p_at_k);
        let _ = writeln!(out, "{},dunn_index,,{:.6}", r.method, r.dunn_index);
        let _ = writeln!(out, "{},excluded,,{}", r.method, r.excluded.len());
    }
    out
}

/// Per-instance feature table for methods that have a fixed-length feature
/// vector; the KS distance works on whole distributions, so it has none.
fn features_csv(variant: &Variant, groups: &[Vec<Instance>], kept: &[Vec<usize>]) -> Option<String> {
    let columns: Vec<String> = match variant {
        Variant::Distance(DistanceMethod::Ks) => return None,
        Variant::Distance(DistanceMethod::Ddqc) => (1..=8).map(|i| format!("q{}", i)).collect(),
        Variant::Distance(DistanceMethod::Percentiles) => {
            (1..=8).map(|i| format!("p{}", i)).collect()
        }
        Variant::Distance(DistanceMethod::Powerlaw) => {
            ["gamma", "xmin", "ks_gof"].map(String::from).to_vec()
        }
        Variant::Integrated(dd) => {
            let mut cols: Vec<String> = [
                "avg_clustering",
                "avg_path_length",
                "assortativity",
                "modularity",
            ]
            .map(String::from)
            .to_vec();
            match dd {
                DdMethod::None => {}
                DdMethod::Powerlaw => cols.push("gamma".into()),
                DdMethod::Percentiles => cols.extend((1..=8).map(|i| format!("p{}", i))),
                DdMethod::Ddqc => cols.extend((1..=8).map(|i| format!("q{}", i))),
            }
            cols
        }
    };

    let mut out = format!("id,label,{}\n", columns.join(","));
    for (group, kept) in groups.iter().zip(kept) {
        for &i in kept {
            let inst = &group[i];
            out.push_str(&inst.id);
            out.push(',');
            out.push_str(&inst.label);
            match variant {
                Variant::Distance(DistanceMethod::Powerlaw) => {
                    let fit = inst.powerlaw.as_ref().expect("kept instances carry fits");
                    let _ = write!(out, ",{:.6},{},{:.6}", fit.gamma, fit.xmin, fit.ks_gof);
                }
                Variant::Distance(DistanceMethod::Ddqc) => {
                    for v in inst.ddqc.values() {
                        let _ = write!(out, ",{:.6}", v);
                    }
                }
                Variant::Distance(DistanceMethod::Percentiles) => {
                    for v in inst.percentiles.values() {
                        let _ = write!(out, ",{:.6}", v);
                    }
                }
                Variant::Distance(DistanceMethod::Ks) => unreachable!(),
                Variant::Integrated(dd) => {
                    for v in integrated_row(inst, *dd) {
                        let _ = write!(out, ",{:.6}", v);
                    }
                }
            }
            out.push('\n');
        }
    }
    Some(out)
}
