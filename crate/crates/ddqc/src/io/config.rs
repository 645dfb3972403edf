//! Plain-text experiment configuration: one `key = value` per line, `#`
//! comments, unknown or repeated keys rejected. Every knob has a default so
//! an empty file is a valid configuration.

use std::io::BufRead;
use std::path::{Path, PathBuf};

use crate::baselines::PercentileBinning;
use crate::error::{Error, Result};
use crate::evaluation::DistanceMethod;
use crate::structural::DdMethod;

/// Which experiment to run: distance-only comparison of degree-distribution
/// methods, or classification on structural features integrated with each
/// degree-distribution summary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Distance,
    Integrated,
}

/// Where the corpus comes from: generated from the six models, or ingested
/// from an existing manifest of edge-list files.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusMode {
    Generate,
    Ingest,
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub mode: CorpusMode,
    /// Manifest path; required when `mode = ingest`.
    pub manifest: Option<PathBuf>,
    pub iterations: usize,
    /// Graphs per model per iteration.
    pub per_model: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    /// Distance methods compared in a `distance` experiment.
    pub methods: Vec<DistanceMethod>,
    /// Degree-distribution summaries appended to the structural features in
    /// an `integrated` experiment.
    pub dd_methods: Vec<DdMethod>,
    /// Neighborhood sizes k = 1..=k_max are evaluated.
    pub k_max: usize,
    pub output_dir: PathBuf,
    pub percentile_binning: PercentileBinning,
    /// Source-sample budget for average path length.
    pub path_sample: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            experiment: ExperimentKind::Distance,
            mode: CorpusMode::Generate,
            manifest: None,
            iterations: 1,
            per_model: 10,
            n_min: 1000,
            n_max: 5000,
            seed: 42,
            methods: vec![
                DistanceMethod::Ddqc,
                DistanceMethod::Ks,
                DistanceMethod::Powerlaw,
                DistanceMethod::Percentiles,
            ],
            dd_methods: vec![
                DdMethod::None,
                DdMethod::Powerlaw,
                DdMethod::Percentiles,
                DdMethod::Ddqc,
            ],
            k_max: 10,
            output_dir: PathBuf::from("."),
            percentile_binning: PercentileBinning::Linear,
            path_sample: 500,
        }
    }
}

/// Parses a configuration, starting from defaults.
pub fn parse_config<R: BufRead>(reader: R) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::default();
    let mut seen: Vec<String> = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (key, value) = trimmed.split_once('=').ok_or_else(|| {
            Error::Config(format!("line {}: expected 'key = value'", lineno))
        })?;
        let key = key.trim();
        let value = value.trim();
        if value.is_empty() {
            return Err(Error::Config(format!("line {}: empty value for '{}'", lineno, key)));
        }
        if seen.iter().any(|k| k == key) {
            return Err(Error::Config(format!("line {}: duplicate key '{}'", lineno, key)));
        }
        seen.push(key.to_string());
        apply(&mut cfg, key, value)
            .map_err(|e| Error::Config(format!("line {}: {}", lineno, e)))?;
    }

    validate(&cfg)?;
    Ok(cfg)
}

/// Loads a configuration file.
pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let file = std::fs::File::open(path)?;
    parse_config(std::io::BufReader::new(file))
}

fn apply(cfg: &mut ExperimentConfig, key: &str, value: &str) -> std::result::Result<(), String> {
    match key {
        "experiment" => {
            cfg.experiment = match value {
                "distance" => ExperimentKind::Distance,
                "integrated" => ExperimentKind::Integrated,
                _ => return Err(format!("unknown experiment '{}'", value)),
            };
        }
        "mode" => {
            cfg.mode = match value {
                "generate" => CorpusMode::Generate,
                "ingest" => CorpusMode::Ingest,
                _ => return Err(format!("unknown mode '{}'", value)),
            };
        }
        "manifest" => cfg.manifest = Some(PathBuf::from(value)),
        "iterations" => cfg.iterations = parse_num(key, value)?,
        "per_model" => cfg.per_model = parse_num(key, value)?,
        "n_min" => cfg.n_min = parse_num(key, value)?,
        "n_max" => cfg.n_max = parse_num(key, value)?,
        "seed" => cfg.seed = parse_num(key, value)?,
        "k_max" => cfg.k_max = parse_num(key, value)?,
        "path_sample" => cfg.path_sample = parse_num(key, value)?,
        "output_dir" => cfg.output_dir = PathBuf::from(value),
        "methods" => {
            cfg.methods = split_list(value)
                .map(|tok| tok.parse::<DistanceMethod>().map_err(|e| e.to_string()))
                .collect::<std::result::Result<_, _>>()?;
        }
        "dd_methods" => {
            cfg.dd_methods = split_list(value)
                .map(|tok| tok.parse::<DdMethod>().map_err(|e| e.to_string()))
                .collect::<std::result::Result<_, _>>()?;
        }
        "percentile_binning" => {
            cfg.percentile_binning = match value {
                "linear" => PercentileBinning::Linear,
                "log" => PercentileBinning::Log,
                _ => return Err(format!("unknown percentile_binning '{}'", value)),
            };
        }
        _ => return Err(format!("unknown key '{}'", key)),
    }
    Ok(())
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> std::result::Result<T, String> {
    value
        .parse::<T>()
        .map_err(|_| format!("invalid value '{}' for '{}'", value, key))
}

fn split_list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|t| !t.is_empty())
}

fn validate(cfg: &ExperimentConfig) -> Result<()> {
    let fail = |msg: String| Err(Error::Config(msg));
    if cfg.iterations == 0 {
        return fail("iterations must be at least 1".into());
    }
    if cfg.per_model == 0 {
        return fail("per_model must be at least 1".into());
    }
    if cfg.k_max == 0 {
        return fail("k_max must be at least 1".into());
    }
    if cfg.path_sample == 0 {
        return fail("path_sample must be at least 1".into());
    }
    if cfg.n_min < 10 {
        return fail("n_min must be at least 10".into());
    }
    if cfg.n_min > cfg.n_max {
        return fail(format!("n_min {} exceeds n_max {}", cfg.n_min, cfg.n_max));
    }
    if cfg.methods.is_empty() {
        return fail("methods must not be empty".into());
    }
    if cfg.dd_methods.is_empty() {
        return fail("dd_methods must not be empty".into());
    }
    if has_duplicates(&cfg.methods) {
        return fail("methods contains a duplicate".into());
    }
    if has_duplicates(&cfg.dd_methods) {
        return fail("dd_methods contains a duplicate".into());
    }
    if cfg.mode == CorpusMode::Ingest && cfg.manifest.is_none() {
        return fail("mode = ingest requires a manifest path".into());
    }
    Ok(())
}

fn has_duplicates<T: PartialEq>(items: &[T]) -> bool {
    items
        .iter()
        .enumerate()
        .any(|(i, x)| items[..i].contains(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn parse(text: &str) -> Result<ExperimentConfig> {
        parse_config(Cursor::new(text))
    }

    #[test]
    fn empty_config_is_all_defaults() {
        let cfg = parse("# nothing but a comment\n\n").unwrap();
        assert_eq!(cfg.iterations, 1);
        assert_eq!(cfg.per_model, 10);
        assert_eq!(cfg.methods.len(), 4);
        assert_eq!(cfg.k_max, 10);
        assert_eq!(cfg.experiment, ExperimentKind::Distance);
    }

    #[test]
    fn parses_every_key() {
        let cfg = parse(
            "experiment = integrated\n\
             mode = ingest\n\
             manifest = corpus/manifest.jsonl\n\
             iterations = 3\n\
             per_model = 5\n\
             n_min = 100\n\
             n_max = 200\n\
             seed = 7\n\
             methods = ddqc, ks\n\
             dd_methods = none, ddqc\n\
             k_max = 4\n\
             output_dir = out\n\
             percentile_binning = log\n\
             path_sample = 64\n",
        )
        .unwrap();
        assert_eq!(cfg.experiment, ExperimentKind::Integrated);
        assert_eq!(cfg.mode, CorpusMode::Ingest);
        assert_eq!(cfg.manifest.as_deref(), Some(Path::new("corpus/manifest.jsonl")));
        assert_eq!(cfg.iterations, 3);
        assert_eq!(cfg.methods, vec![DistanceMethod::Ddqc, DistanceMethod::Ks]);
        assert_eq!(cfg.dd_methods, vec![DdMethod::None, DdMethod::Ddqc]);
        assert_eq!(cfg.percentile_binning, PercentileBinning::Log);
        assert_eq!(cfg.path_sample, 64);
    }

    #[test]
    fn rejects_unknown_and_duplicate_keys() {
        let err = parse("bogus = 1\n").unwrap_err();
        assert!(err.to_string().contains("unknown key 'bogus'"), "{err}");
        assert!(err.to_string().contains("line 1"), "{err}");

        let err = parse("seed = 1\nseed = 2\n").unwrap_err();
        assert!(err.to_string().contains("duplicate key 'seed'"), "{err}");
    }

    #[test]
    fn rejects_bad_values() {
        assert!(parse("iterations = zero\n").is_err());
        assert!(parse("iterations = 0\n").is_err());
        assert!(parse("methods = ddqc, nearest\n").is_err());
        assert!(parse("methods = ddqc, ddqc\n").is_err());
        assert!(parse("n_min = 500\nn_max = 100\n").is_err());
        assert!(parse("n_min = 4\n").is_err());
        assert!(parse("mode = ingest\n").is_err());
        assert!(parse("seed\n").is_err());
        assert!(parse("seed =\n").is_err());
    }
}
