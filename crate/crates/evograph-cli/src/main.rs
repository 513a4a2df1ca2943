//! Command line for analyzing snapshot series, estimating model
//! parameters, inferring future snapshots, generating reference graphs, and
//! validating the model's closed-form predictions.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use evograph::baselines::{generate_ba, generate_eba, BaConfig, EbaConfig};
use evograph::fixture::synth_fixture;
use evograph::generator::{generate_series, GeneratorConfig};
use evograph::validation::{validate_theorem1, validate_theorem2, validate_theorem3};
use evograph::{estimator, patterns, Aggregation, ModelParams};
use evograph_cli::edgelist::{load_snapshot, save_snapshot};
use evograph_cli::manifest::load_series;
use evograph_cli::report::{
    write_pattern_csvs, write_report, AnalyzeReport, CompareReport, EstimateReport,
    GenerateReport, OutputFile, ValidateReport, REPORT_VERSION,
};
use evograph_cli::CliError;

#[derive(Parser)]
#[command(
    name = "evograph",
    version,
    about = "Temporal graph analysis, parameter estimation, and snapshot inference"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Measure the static and dynamic patterns of a snapshot series.
    Analyze(AnalyzeArgs),
    /// Estimate the four model parameters from a snapshot series.
    Estimate(EstimateArgs),
    /// Infer future snapshots from a series.
    Generate(GenerateArgs),
    /// Generate a reference graph.
    Baseline {
        #[command(subcommand)]
        model: BaselineCommand,
    },
    /// Monte Carlo check of a closed-form model prediction.
    Validate(ValidateArgs),
    /// L1 distances between the static patterns of two snapshots.
    Compare(CompareArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Series manifest (JSON).
    manifest: PathBuf,
    /// Exact distance distribution from every node (the default).
    #[arg(long, conflicts_with = "sample_sources")]
    exact_distances: bool,
    /// Estimate the distance distribution from this many evenly spaced
    /// source nodes instead of all of them.
    #[arg(long, value_name = "K")]
    sample_sources: Option<usize>,
    /// Report path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write per-pattern x,y CSV files into this directory.
    #[arg(long, value_name = "DIR")]
    csv_dir: Option<PathBuf>,
}

#[derive(Args)]
struct EstimateArgs {
    /// Series manifest (JSON).
    manifest: PathBuf,
    /// Transitions averaged for the growth estimate.
    #[arg(long, default_value_t = 3)]
    window: usize,
    /// Aggregate per-transition estimates with the median instead of the
    /// mean.
    #[arg(long)]
    robust: bool,
    /// Report path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    /// Series manifest (JSON).
    manifest: PathBuf,
    /// Number of future snapshots to infer.
    #[arg(long, default_value_t = 1)]
    steps: usize,
    /// Seed for the run; equal seeds give byte-identical outputs.
    #[arg(long)]
    seed: u64,
    /// JSON file holding the model parameters
    /// `{"delta_n":..,"a_n":..,"a_e":..,"p":..}`.
    #[arg(long, value_name = "FILE", conflicts_with = "auto_estimate")]
    params: Option<PathBuf>,
    /// Estimate the parameters from the input series instead.
    #[arg(long)]
    auto_estimate: bool,
    /// Scale the new-edge budget by the fitted growth exponent.
    #[arg(long = "eq7-alpha-factor")]
    eq7_alpha_factor: bool,
    /// Directory for the inferred snapshot files.
    #[arg(long, value_name = "DIR")]
    outdir: PathBuf,
    /// Provenance report path; defaults to generation.json in the output
    /// directory.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum BaselineCommand {
    /// Preferential attachment from a seed clique.
    Ba {
        /// Final node count.
        #[arg(long)]
        n: usize,
        /// Edges per arriving node.
        #[arg(long)]
        m: usize,
        /// Seed clique size; defaults to m.
        #[arg(long)]
        m0: Option<usize>,
        /// Generator seed.
        #[arg(long)]
        seed: u64,
        /// Snapshot file to write.
        #[arg(long)]
        out: PathBuf,
    },
    /// Local-events growth with edge additions and rewiring.
    Eba {
        /// Final node count.
        #[arg(long)]
        n: usize,
        /// Edges per event.
        #[arg(long)]
        m: usize,
        /// Seed clique size; defaults to m.
        #[arg(long)]
        m0: Option<usize>,
        /// Probability of an edge-addition event.
        #[arg(long, default_value_t = 0.0)]
        p_add: f64,
        /// Probability of a rewiring event.
        #[arg(long, default_value_t = 0.0)]
        q_rewire: f64,
        /// Generator seed.
        #[arg(long)]
        seed: u64,
        /// Snapshot file to write.
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct ValidateArgs {
    /// Which prediction to check: theorem1 (node stability), theorem2
    /// (edge stability) or theorem3 (clustering linearity).
    #[arg(value_parser = ["theorem1", "theorem2", "theorem3"])]
    check: String,
    /// Comma-separated parameter grid; defaults to 0.1..0.9.
    #[arg(long)]
    grid: Option<String>,
    /// Monte Carlo replicas per grid point.
    #[arg(long)]
    runs: Option<usize>,
    /// Master seed for the synthetic base series and the replicas.
    #[arg(long)]
    seed: u64,
    /// Report path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    /// First snapshot file.
    snapshot_a: PathBuf,
    /// Second snapshot file.
    snapshot_b: PathBuf,
    /// Report path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {}", e.category(), e);
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Analyze(args) => analyze(args),
        Command::Estimate(args) => estimate(args),
        Command::Generate(args) => generate(args),
        Command::Baseline { model } => baseline(model),
        Command::Validate(args) => validate(args),
        Command::Compare(args) => compare(args),
    }
}

fn analyze(args: AnalyzeArgs) -> Result<(), CliError> {
    let series = load_series(&args.manifest)?;
    let report = patterns::analyze(&series, args.sample_sources)
        .map_err(|e| CliError::Compute(e.to_string()))?;
    if let Some(dir) = &args.csv_dir {
        write_pattern_csvs(&report, dir)?;
    }
    let doc = AnalyzeReport::new(&report, &args.manifest, args.sample_sources);
    write_report(&doc, args.out.as_deref())
}

fn estimate(args: EstimateArgs) -> Result<(), CliError> {
    let series = load_series(&args.manifest)?;
    let agg = if args.robust {
        Aggregation::Median
    } else {
        Aggregation::Mean
    };
    let estimates = estimator::estimate_all_with(&series, args.window, agg)
        .map_err(|e| CliError::Compute(e.to_string()))?;
    let note = estimates.p.is_none().then(|| {
        "clustering factor unavailable: no new old-old edge with a finite prior distance"
            .to_string()
    });
    let doc = EstimateReport {
        kind: "params".into(),
        format_version: REPORT_VERSION,
        manifest: args.manifest.display().to_string(),
        robust: args.robust,
        estimates,
        note,
    };
    write_report(&doc, args.out.as_deref())
}

fn generate(args: GenerateArgs) -> Result<(), CliError> {
    let series = load_series(&args.manifest)?;
    let (params, auto) = match (&args.params, args.auto_estimate) {
        (Some(path), false) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            let params: ModelParams =
                serde_json::from_str(&text).map_err(|e| CliError::Format {
                    path: path.clone(),
                    line: e.line(),
                    message: e.to_string(),
                })?;
            (params, false)
        }
        (None, true) => {
            let estimates = estimator::estimate_all(&series)
                .map_err(|e| CliError::Compute(e.to_string()))?;
            let params = estimates
                .model_params()
                .map_err(|e| CliError::Compute(e.to_string()))?;
            (params, true)
        }
        _ => {
            return Err(CliError::Input(
                "pass exactly one of --params FILE or --auto-estimate".into(),
            ))
        }
    };
    let config = GeneratorConfig {
        params,
        seed: args.seed,
        steps: args.steps,
        alpha_factor: args.eq7_alpha_factor,
    };
    let snaps =
        generate_series(&series, &config).map_err(|e| CliError::Compute(e.to_string()))?;
    fs::create_dir_all(&args.outdir).map_err(|e| CliError::io(&args.outdir, e))?;
    let mut outputs = Vec::with_capacity(snaps.len());
    for snap in &snaps {
        let file = format!("snapshot-{:04}.txt", snap.time_index());
        save_snapshot(snap, &args.outdir.join(&file))?;
        outputs.push(OutputFile {
            time: snap.time_index(),
            file,
            nodes: snap.node_count(),
            edges: snap.edge_count(),
        });
    }
    let doc = GenerateReport {
        kind: "generation".into(),
        format_version: REPORT_VERSION,
        manifest: args.manifest.display().to_string(),
        seed: args.seed,
        params,
        alpha_factor: args.eq7_alpha_factor,
        auto_estimated: auto,
        outputs,
    };
    let report_path = args
        .report
        .clone()
        .unwrap_or_else(|| args.outdir.join("generation.json"));
    write_report(&doc, Some(&report_path))
}

fn baseline(model: BaselineCommand) -> Result<(), CliError> {
    match model {
        BaselineCommand::Ba { n, m, m0, seed, out } => {
            let config = BaConfig {
                n,
                m,
                m0: m0.unwrap_or(m),
                seed,
            };
            let snap = generate_ba(&config).map_err(|e| CliError::Input(e.to_string()))?;
            save_snapshot(&snap, &out)
        }
        BaselineCommand::Eba {
            n,
            m,
            m0,
            p_add,
            q_rewire,
            seed,
            out,
        } => {
            let config = EbaConfig {
                n,
                m,
                m0: m0.unwrap_or(m),
                p_add,
                q_rewire,
                seed,
            };
            let snap = generate_eba(&config).map_err(|e| CliError::Input(e.to_string()))?;
            save_snapshot(&snap, &out)
        }
    }
}

/// Ground truth of the synthetic base series used by `validate`.
fn validation_base_params() -> ModelParams {
    ModelParams {
        delta_n: 40,
        a_n: 0.8,
        a_e: 0.85,
        p: 0.6,
    }
}

fn validate(args: ValidateArgs) -> Result<(), CliError> {
    let grid: Vec<f64> = match &args.grid {
        Some(text) => text
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::Input(format!("bad grid value: {tok:?}")))
            })
            .collect::<Result<_, _>>()?,
        None => (1..=9).map(|i| i as f64 / 10.0).collect(),
    };
    let runs = args.runs.unwrap_or(match args.check.as_str() {
        "theorem3" => 50,
        _ => 100,
    });
    let base_params = validation_base_params();
    // constant growth per step holds exactly on a synthetic base
    let base = synth_fixture(base_params, 300, 10, args.seed)
        .map_err(|e| CliError::Compute(e.to_string()))?;
    let report = match args.check.as_str() {
        "theorem1" => validate_theorem1(&base, &base_params, &grid, runs, args.seed),
        "theorem2" => validate_theorem2(&base, &base_params, &grid, runs, args.seed),
        "theorem3" => validate_theorem3(&base, &base_params, &grid, runs, args.seed),
        other => return Err(CliError::Input(format!("unknown check: {other}"))),
    }
    .map_err(|e| CliError::Compute(e.to_string()))?;
    let doc = ValidateReport {
        kind: "theorem".into(),
        format_version: REPORT_VERSION,
        check: args.check,
        seed: args.seed,
        base_params,
        report,
    };
    write_report(&doc, args.out.as_deref())
}

fn compare(args: CompareArgs) -> Result<(), CliError> {
    let a = load_snapshot(&args.snapshot_a, 1)?;
    let b = load_snapshot(&args.snapshot_b, 2)?;
    let distances = evograph::validation::compare_graphs(&a, &b)
        .map_err(|e| CliError::Compute(e.to_string()))?;
    let doc = CompareReport {
        kind: "comparison".into(),
        format_version: REPORT_VERSION,
        snapshot_a: args.snapshot_a.display().to_string(),
        snapshot_b: args.snapshot_b.display().to_string(),
        distances,
    };
    write_report(&doc, args.out.as_deref())
}
