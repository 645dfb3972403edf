//! `ddqc`: extract degree-distribution features, compare graphs, generate
//! model corpora, and run evaluation experiments from the command line.
//!
//! stdout carries only data (feature rows, distances, reports); everything
//! else goes to stderr. Numeric text output uses six decimals with a '.'
//! separator regardless of locale. Exit codes: 0 success, 1 usage error,
//! 2 input or data error, 3 numerical or fit failure.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use ddqc::io::edgelist::{read_edge_list, write_edge_list_file};
use ddqc::io::manifest::{params_to_json, write_manifest_file, ManifestRecord};
use ddqc::{
    corpus_specs, ddqc_distance, features_from_distribution, fit_power_law, generate,
    instances_from_manifest, ks_distance, load_config, percentile_distance,
    percentile_features_with, powerlaw_distance, run_experiment, structural_vector,
    DegreeDistribution, Error, GenSpec, Graph, ModelKind, ModelParams, PercentileBinning,
};

#[derive(Parser)]
#[command(
    name = "ddqc",
    version,
    about = "Degree-distribution quantification and comparison for networks",
    propagate_version = true
)]
struct Cli {
    /// Cap the worker thread pool (default: one thread per core).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract one feature row from an edge-list file.
    Extract(ExtractArgs),
    /// Print the distance between two graphs' degree distributions.
    Distance(DistanceArgs),
    /// Generate a single graph from one of the six models.
    Generate(GenerateArgs),
    /// Generate a labeled corpus of graphs plus a JSONL manifest.
    Corpus(CorpusArgs),
    /// Extract a feature table for every graph in a corpus manifest.
    Features(FeaturesArgs),
    /// Run an experiment described by a config file.
    Evaluate(EvaluateArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Ddqc,
    Ks,
    Powerlaw,
    Percentiles,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FeatureMethodArg {
    Ddqc,
    Powerlaw,
    Percentiles,
    Structural,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BinningArg {
    Linear,
    Log,
}

impl From<BinningArg> for PercentileBinning {
    fn from(b: BinningArg) -> Self {
        match b {
            BinningArg::Linear => PercentileBinning::Linear,
            BinningArg::Log => PercentileBinning::Log,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct ExtractArgs {
    /// Edge-list file: one "u v" pair per line, '#' comments ignored.
    path: PathBuf,
    #[arg(long, value_enum, default_value = "ddqc")]
    method: FeatureMethodArg,
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Degree axis for percentile bins.
    #[arg(long, value_enum, default_value = "linear")]
    binning: BinningArg,
    /// Source-sample budget for average path length (structural only).
    #[arg(long, default_value_t = 500)]
    path_sample: usize,
    /// Sampling seed (structural only).
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct DistanceArgs {
    /// First edge-list file.
    path_a: PathBuf,
    /// Second edge-list file.
    path_b: PathBuf,
    #[arg(long, value_enum, default_value = "ddqc")]
    method: MethodArg,
    /// Degree axis for percentile bins.
    #[arg(long, value_enum, default_value = "linear")]
    binning: BinningArg,
}

#[derive(Args)]
struct GenerateArgs {
    /// Model: ba | er | ff | kg | rp | ws.
    #[arg(long)]
    model: String,
    #[arg(long)]
    nodes: usize,
    #[arg(long)]
    seed: u64,
    /// Edges per new node (BA) or neighbors per node (WS).
    #[arg(long)]
    k: Option<u32>,
    /// Rewiring probability (WS).
    #[arg(long, default_value_t = 0.5)]
    beta: f64,
    /// Edge density (ER).
    #[arg(long)]
    density: Option<f64>,
    /// Forward burning probability (FF).
    #[arg(long)]
    p_forward: Option<f64>,
    /// Backward burning probability (FF).
    #[arg(long, default_value_t = 0.32)]
    p_backward: f64,
    /// Initiator matrix "p11,p12,p21,p22" (KG).
    #[arg(long)]
    initiator: Option<String>,
    /// Degree exponent (RP).
    #[arg(long)]
    gamma: Option<f64>,
    /// Output file (default "<MODEL>-n<nodes>-s<seed>.txt").
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long, default_value_t = 1)]
    iterations: usize,
    /// Graphs per model per iteration.
    #[arg(long, default_value_t = 10)]
    per_model: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    n_min: usize,
    #[arg(long, default_value_t = 5000)]
    n_max: usize,
    #[arg(long, default_value = "corpus")]
    output_dir: PathBuf,
}

#[derive(Args)]
struct FeaturesArgs {
    /// Corpus manifest (JSONL).
    #[arg(long)]
    manifest: PathBuf,
    #[arg(long, value_enum, default_value = "ddqc")]
    method: FeatureMethodArg,
    /// Degree axis for percentile bins.
    #[arg(long, value_enum, default_value = "linear")]
    binning: BinningArg,
    /// Source-sample budget for average path length (structural only).
    #[arg(long, default_value_t = 500)]
    path_sample: usize,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Experiment config file ("key = value" lines).
    #[arg(long)]
    config: PathBuf,
}

/// A diagnostic plus the process exit code it maps to.
struct Failure {
    code: i32,
    message: String,
}

type CliResult = Result<(), Failure>;

fn exit_class(e: &Error) -> i32 {
    match e {
        Error::Fit(_) | Error::Undefined(_) => 3,
        _ => 2,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure {
            code: exit_class(&e),
            message: e.to_string(),
        }
    }
}

/// Attributes an error to the file it came from.
fn at_path(path: &Path, e: Error) -> Failure {
    Failure {
        code: exit_class(&e),
        message: format!("{}: {}", path.display(), e),
    }
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    read_edge_list(path)
        .map(|(g, _)| g)
        .map_err(|e| at_path(path, e))
}

fn distribution_of(path: &Path, g: &Graph) -> Result<DegreeDistribution, Failure> {
    DegreeDistribution::from_graph(g).map_err(|e| at_path(path, e))
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                print!("{}", e);
                std::process::exit(0);
            }
            _ => {
                eprint!("{}", e);
                std::process::exit(1);
            }
        },
    };

    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: could not size the thread pool: {e}");
            std::process::exit(1);
        }
    }

    let result = match &cli.command {
        Command::Extract(args) => cmd_extract(args),
        Command::Distance(args) => cmd_distance(args),
        Command::Generate(args) => cmd_generate(args),
        Command::Corpus(args) => cmd_corpus(args),
        Command::Features(args) => cmd_features(args),
        Command::Evaluate(args) => cmd_evaluate(args),
    };

    if let Err(failure) = result {
        eprintln!("error: {}", failure.message);
        std::process::exit(failure.code);
    }
}

/// One feature row, as (column names, formatted cells).
fn feature_row(
    g: &Graph,
    path: &Path,
    method: FeatureMethodArg,
    binning: PercentileBinning,
    path_sample: usize,
    seed: u64,
) -> Result<(Vec<String>, Vec<String>), Failure> {
    let row = match method {
        FeatureMethodArg::Ddqc => {
            let dist = distribution_of(path, g)?;
            let names = (1..=8).map(|i| format!("q{i}")).collect();
            let cells = features_from_distribution(&dist)
                .values()
                .iter()
                .map(|v| format!("{v:.6}"))
                .collect();
            (names, cells)
        }
        FeatureMethodArg::Percentiles => {
            let dist = distribution_of(path, g)?;
            let names = (1..=8).map(|i| format!("p{i}")).collect();
            let cells = percentile_features_with(&dist, binning)
                .values()
                .iter()
                .map(|v| format!("{v:.6}"))
                .collect();
            (names, cells)
        }
        FeatureMethodArg::Powerlaw => {
            let dist = distribution_of(path, g)?;
            let fit = fit_power_law(&dist).map_err(|e| at_path(path, e))?;
            (
                ["gamma", "xmin", "ks_gof"].map(String::from).to_vec(),
                vec![
                    format!("{:.6}", fit.gamma),
                    fit.xmin.to_string(),
                    format!("{:.6}", fit.ks_gof),
                ],
            )
        }
        FeatureMethodArg::Structural => {
            let sv = structural_vector(g, path_sample, seed).map_err(|e| at_path(path, e))?;
            (
                [
                    "avg_clustering",
                    "avg_path_length",
                    "assortativity",
                    "modularity",
                ]
                .map(String::from)
                .to_vec(),
                sv.values().iter().map(|v| format!("{v:.6}")).collect(),
            )
        }
    };
    Ok(row)
}

fn emit(output: Option<&Path>, text: &str) -> CliResult {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| at_path(path, Error::Io(e))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_extract(args: &ExtractArgs) -> CliResult {
    let g = load_graph(&args.path)?;
    let (names, cells) = feature_row(
        &g,
        &args.path,
        args.method,
        args.binning.into(),
        args.path_sample,
        args.seed,
    )?;
    let text = match args.format {
        FormatArg::Csv => format!("{}\n{}\n", names.join(","), cells.join(",")),
        FormatArg::Json => {
            // JSON keeps full float precision; the six-decimal rule is for
            // plain-text numeric output.
            let map: serde_json::Map<String, serde_json::Value> = names
                .iter()
                .zip(&cells)
                .map(|(name, cell)| {
                    let value = cell
                        .parse::<f64>()
                        .map(serde_json::Value::from)
                        .unwrap_or_else(|_| serde_json::Value::from(cell.clone()));
                    (name.clone(), value)
                })
                .collect();
            let mut text = serde_json::to_string_pretty(&map).expect("string map serializes");
            text.push('\n');
            text
        }
    };
    emit(args.output.as_deref(), &text)
}

fn cmd_distance(args: &DistanceArgs) -> CliResult {
    let ga = load_graph(&args.path_a)?;
    let gb = load_graph(&args.path_b)?;
    let da = distribution_of(&args.path_a, &ga)?;
    let db = distribution_of(&args.path_b, &gb)?;
    let value = match args.method {
        MethodArg::Ddqc => ddqc_distance(
            &features_from_distribution(&da),
            &features_from_distribution(&db),
        ),
        MethodArg::Ks => ks_distance(&da, &db),
        MethodArg::Percentiles => {
            let binning = args.binning.into();
            percentile_distance(
                &percentile_features_with(&da, binning),
                &percentile_features_with(&db, binning),
            )
        }
        MethodArg::Powerlaw => {
            let fa = fit_power_law(&da).map_err(|e| at_path(&args.path_a, e))?;
            let fb = fit_power_law(&db).map_err(|e| at_path(&args.path_b, e))?;
            powerlaw_distance(&fa, &fb)
        }
    };
    println!("{value:.6}");
    Ok(())
}

/// Assembles `ModelParams` from flags, rejecting flags that do not belong to
/// the chosen model so a typo cannot silently fall back to a default.
fn params_from_flags(model: ModelKind, args: &GenerateArgs) -> Result<ModelParams, Error> {
    fn need<T: Copy>(value: Option<T>, model: ModelKind, flag: &str) -> Result<T, Error> {
        value.ok_or_else(|| Error::Param(format!("model {model} requires --{flag}")))
    }

    let mut foreign: Vec<&str> = Vec::new();
    let mut check = |flag: &'static str, given: bool, used: bool| {
        if given && !used {
            foreign.push(flag);
        }
    };
    let used = |m: ModelKind| model == m;
    check("k", args.k.is_some(), used(ModelKind::Ba) || used(ModelKind::Ws));
    check("density", args.density.is_some(), used(ModelKind::Er));
    check("p-forward", args.p_forward.is_some(), used(ModelKind::Ff));
    check("initiator", args.initiator.is_some(), used(ModelKind::Kg));
    check("gamma", args.gamma.is_some(), used(ModelKind::Rp));
    if !foreign.is_empty() {
        return Err(Error::Param(format!(
            "--{} does not apply to model {model}",
            foreign.join(", --")
        )));
    }

    Ok(match model {
        ModelKind::Ba => ModelParams::Ba {
            k: need(args.k, model, "k")?,
        },
        ModelKind::Er => ModelParams::Er {
            density: need(args.density, model, "density")?,
        },
        ModelKind::Ff => ModelParams::Ff {
            p_forward: need(args.p_forward, model, "p-forward")?,
            p_backward: args.p_backward,
        },
        ModelKind::Kg => ModelParams::Kg {
            initiator: parse_initiator(need(args.initiator.as_deref(), model, "initiator")?)?,
        },
        ModelKind::Rp => ModelParams::Rp {
            gamma: need(args.gamma, model, "gamma")?,
        },
        ModelKind::Ws => ModelParams::Ws {
            k: need(args.k, model, "k")?,
            beta: args.beta,
        },
    })
}

fn parse_initiator(text: &str) -> Result<[[f64; 2]; 2], Error> {
    let values: Vec<f64> = text
        .split(',')
        .map(|tok| tok.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Error::Param(format!("initiator '{text}' is not four numbers")))?;
    if values.len() != 4 {
        return Err(Error::Param(format!(
            "initiator needs four values p11,p12,p21,p22, got {}",
            values.len()
        )));
    }
    Ok([[values[0], values[1]], [values[2], values[3]]])
}

fn cmd_generate(args: &GenerateArgs) -> CliResult {
    let model: ModelKind = args.model.parse()?;
    let spec = GenSpec {
        node_count: args.nodes,
        params: params_from_flags(model, args)?,
        seed: args.seed,
    };
    spec.validate()?;
    spec.validate_corpus_ranges()?;
    let g = generate(&spec)?;
    let output = args
        .output
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}-n{}-s{}.txt", model, args.nodes, args.seed)));
    write_edge_list_file(&output, &g).map_err(|e| at_path(&output, e))?;
    eprintln!(
        "wrote {} ({} nodes, {} edges)",
        output.display(),
        g.node_count(),
        g.edge_count()
    );
    Ok(())
}

fn cmd_corpus(args: &CorpusArgs) -> CliResult {
    if args.iterations == 0 || args.per_model == 0 {
        return Err(Error::Param("iterations and per-model must be at least 1".into()).into());
    }
    if args.n_min < 10 || args.n_min > args.n_max {
        return Err(Error::Param(format!(
            "node range {}..{} must satisfy 10 <= n-min <= n-max",
            args.n_min, args.n_max
        ))
        .into());
    }
    fs::create_dir_all(&args.output_dir).map_err(|e| at_path(&args.output_dir, Error::Io(e)))?;

    let specs = corpus_specs(
        args.iterations,
        args.per_model,
        (args.n_min, args.n_max),
        args.seed,
    );
    let group = ModelKind::ALL.len() * args.per_model;
    let records: Vec<ManifestRecord> = specs
        .par_iter()
        .enumerate()
        .map(|(index, spec)| -> Result<ManifestRecord, Error> {
            let iteration = index / group;
            let j = index % args.per_model;
            let id = format!("{}-{:03}-{:02}", spec.model(), iteration, j);
            let file = format!("{id}.txt");
            let g = generate(spec)?;
            write_edge_list_file(&args.output_dir.join(&file), &g)?;
            Ok(ManifestRecord {
                id,
                model: spec.model().to_string(),
                params: params_to_json(&spec.params),
                seed: spec.seed,
                nodes: g.node_count(),
                edges: g.edge_count(),
                path: file,
            })
        })
        .collect::<Result<_, _>>()?;

    let manifest = args.output_dir.join("manifest.jsonl");
    write_manifest_file(&manifest, &records).map_err(|e| at_path(&manifest, e))?;
    eprintln!(
        "wrote {} graphs and manifest.jsonl under {}",
        records.len(),
        args.output_dir.display()
    );
    Ok(())
}

fn cmd_features(args: &FeaturesArgs) -> CliResult {
    let structural_sample =
        (args.method == FeatureMethodArg::Structural).then_some(args.path_sample);
    let instances = instances_from_manifest(&args.manifest, args.binning.into(), structural_sample)
        .map_err(|e| at_path(&args.manifest, e))?;

    let names: Vec<String> = match args.method {
        FeatureMethodArg::Ddqc => (1..=8).map(|i| format!("q{i}")).collect(),
        FeatureMethodArg::Percentiles => (1..=8).map(|i| format!("p{i}")).collect(),
        FeatureMethodArg::Powerlaw => ["gamma", "xmin", "ks_gof"].map(String::from).to_vec(),
        FeatureMethodArg::Structural => [
            "avg_clustering",
            "avg_path_length",
            "assortativity",
            "modularity",
        ]
        .map(String::from)
        .to_vec(),
    };

    let mut text = format!("id,label,{}\n", names.join(","));
    for inst in &instances {
        let cells: Option<Vec<String>> = match args.method {
            FeatureMethodArg::Ddqc => Some(
                inst.ddqc
                    .values()
                    .iter()
                    .map(|v| format!("{v:.6}"))
                    .collect(),
            ),
            FeatureMethodArg::Percentiles => Some(
                inst.percentiles
                    .values()
                    .iter()
                    .map(|v| format!("{v:.6}"))
                    .collect(),
            ),
            FeatureMethodArg::Powerlaw => inst.powerlaw.as_ref().map(|fit| {
                vec![
                    format!("{:.6}", fit.gamma),
                    fit.xmin.to_string(),
                    format!("{:.6}", fit.ks_gof),
                ]
            }),
            FeatureMethodArg::Structural => inst
                .structural
                .as_ref()
                .map(|sv| sv.values().iter().map(|v| format!("{v:.6}")).collect()),
        };
        match cells {
            Some(cells) => {
                let _ = writeln!(text, "{},{},{}", inst.id, inst.label, cells.join(","));
            }
            None => eprintln!("warning: skipping {}: features unavailable", inst.id),
        }
    }
    emit(args.output.as_deref(), &text)
}

fn cmd_evaluate(args: &EvaluateArgs) -> CliResult {
    let cfg = load_config(&args.config).map_err(|e| at_path(&args.config, e))?;
    let outcome = run_experiment(&cfg)?;
    let report = cfg.output_dir.join("report.csv");
    let text = fs::read_to_string(&report).map_err(|e| at_path(&report, Error::Io(e)))?;
    print!("{text}");
    eprintln!(
        "wrote {} files under {}",
        outcome.written.len(),
        cfg.output_dir.display()
    );
    Ok(())
}
