//! `csg` binary: compute spectral complexity reports for embedded, labeled
//! datasets, plus the surrounding workflow (reduction sweeps, 2-D class
//! maps, classical baselines, synthetic data).
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical error.
//! `CSG_THREADS` caps the worker-thread count; results do not depend on it.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use ndarray::Array2;

use csg::baselines::{self, Measure};
use csg::dataset::{self, EmbeddedDataset};
use csg::density::DensityParams;
use csg::report::ComplexityReport;
use csg::similarity::{bray_curtis_adjacency, monte_carlo_similarity, SimilarityParams};
use csg::{Error, Result};

#[derive(Parser)]
#[command(
    name = "csg",
    version,
    about = "Spectral complexity measure for embedded, labeled datasets",
    after_help = "Exit codes: 1 usage error, 2 data error, 3 numerical error.\n\
                  Set CSG_THREADS to cap worker threads; results are identical at any count."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the complexity report for one dataset.
    Compute(ComputeArgs),
    /// Re-run the pipeline over shrinking per-class subsamples.
    Sweep(SweepArgs),
    /// Project the class graph to 2-D coordinates.
    Mds(MdsArgs),
    /// Classical geometric complexity measures for comparison.
    Baselines(BaselinesArgs),
    /// Generate a synthetic Gaussian-blob dataset.
    Synth(SynthArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Csv,
    Bin,
}

#[derive(Args)]
struct InputArgs {
    /// Dataset path.
    #[arg(long)]
    input: PathBuf,
    /// Dataset format; a `.bin`/`.csge` extension means binary, anything
    /// else CSV.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct PipelineArgs {
    /// Monte-Carlo samples per class.
    #[arg(long, default_value_t = 100)]
    m_samples: usize,
    /// Neighbors defining the density hypercube.
    #[arg(long, default_value_t = 3)]
    k_neighbors: usize,
    /// RNG seed; equal seeds give equal reports.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write `index,eigenvalue` rows for plotting.
    #[arg(long)]
    spectrum_csv: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// Comma-separated, strictly decreasing subsample ratios in (0, 1].
    #[arg(long, value_delimiter = ',', required = true)]
    ratios: Vec<f64>,
    /// Pipeline repeats per ratio, with derived subsample seeds.
    #[arg(long, default_value_t = 1)]
    repeats: usize,
    /// Write the summary CSV here instead of stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Also write the full JSON result, including per-repeat reports.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["report", "input"])))]
struct MdsArgs {
    /// Complexity report JSON whose class graph to project.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Dataset to run the pipeline on before projecting.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Dataset format; a `.bin`/`.csge` extension means binary, anything
    /// else CSV. Only meaningful with --input.
    #[arg(long, value_enum, requires = "input")]
    format: Option<Format>,
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// Write the coordinates CSV here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BaselinesArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Comma-separated subset of f1,n1,n2,n3,t2.
    #[arg(long, value_delimiter = ',', default_value = "f1,n1,n2,n3,t2")]
    measures: Vec<String>,
    /// Acknowledge that measures run on the embedded coordinates. This is
    /// the only representation the tool sees, so behavior is unchanged.
    #[arg(long)]
    on_embedding: bool,
    /// Write the JSON summary here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SynthArgs {
    /// Number of classes.
    #[arg(long, default_value_t = 2)]
    classes: usize,
    /// Points per class.
    #[arg(long, default_value_t = 100)]
    per_class: usize,
    /// Embedding dimension.
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Anchor distance between classes, in units of sigma.
    #[arg(long, default_value_t = 6.0)]
    separation: f64,
    /// Gaussian spread of each class.
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    /// Mix labels uniformly among the first N classes; 0 or 1 leaves the
    /// labels untouched.
    #[arg(long, default_value_t = 0)]
    swap_classes: usize,
    /// Fraction of each mixed class whose labels are redrawn.
    #[arg(long, default_value_t = 0.5)]
    swap_frac: f64,
    /// RNG seed for both generation and mixing.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Where to write the dataset.
    #[arg(long)]
    output: PathBuf,
    /// Output format; a `.bin`/`.csge` extension means binary, anything
    /// else CSV.
    #[arg(long, value_enum)]
    format: Option<Format>,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.kind().exit_code());
    }
}

fn run(cli: Cli) -> Result<()> {
    let dispatch = || match &cli.command {
        Command::Compute(args) => cmd_compute(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Mds(args) => cmd_mds(args),
        Command::Baselines(args) => cmd_baselines(args),
        Command::Synth(args) => cmd_synth(args),
    };
    match thread_override()? {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidParam(format!("cannot build a {n}-thread pool: {e}")))?
            .install(dispatch),
        None => dispatch(),
    }
}

fn thread_override() -> Result<Option<usize>> {
    match std::env::var("CSG_THREADS") {
        Ok(v) => {
            let n: usize = v.trim().parse().map_err(|_| {
                Error::InvalidParam(format!("CSG_THREADS must be a positive integer, got {v:?}"))
            })?;
            if n == 0 {
                return Err(Error::InvalidParam("CSG_THREADS must be at least 1".into()));
            }
            Ok(Some(n))
        }
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(std::env::VarError::NotUnicode(_)) => Err(Error::InvalidParam(
            "CSG_THREADS is not valid unicode".into(),
        )),
    }
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        source,
    }
}

fn resolved_format(path: &Path, explicit: Option<Format>) -> Format {
    explicit.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
        Some("bin") | Some("csge") => Format::Bin,
        _ => Format::Csv,
    })
}

fn load_dataset(path: &Path, format: Option<Format>) -> Result<EmbeddedDataset> {
    match resolved_format(path, format) {
        Format::Csv => dataset::load_csv(path),
        Format::Bin => dataset::load_binary(path),
    }
}

fn similarity_params(p: &PipelineArgs) -> SimilarityParams {
    SimilarityParams {
        m: p.m_samples,
        seed: p.seed,
        density: DensityParams {
            k: p.k_neighbors,
            ..DensityParams::default()
        },
    }
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| io_err(path, e))
}

fn emit(target: Option<&Path>, text: &str) -> Result<()> {
    match target {
        Some(path) => write_text(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_compute(args: &ComputeArgs) -> Result<()> {
    let ds = load_dataset(&args.input.input, args.input.format)?;
    let report = csg::spectral::csg_pipeline(&ds, &similarity_params(&args.pipeline))?;
    if let Some(path) = &args.spectrum_csv {
        write_text(path, &report.spectrum_csv())?;
    }
    emit(args.output.as_deref(), &report.to_json()?)
}

fn cmd_sweep(args: &SweepArgs) -> Result<()> {
    let ds = load_dataset(&args.input.input, args.input.format)?;
    let params = similarity_params(&args.pipeline);
    let result =
        csg::reduction::sweep(&ds, &args.ratios, &params, args.repeats, args.pipeline.seed)?;
    if let Some(path) = &args.output {
        let json = serde_json::to_string_pretty(&result)?;
        write_text(path, &(json + "\n"))?;
    }
    emit(args.csv.as_deref(), &result.to_csv())
}

fn cmd_mds(args: &MdsArgs) -> Result<()> {
    let (w, names) = match (&args.report, &args.input) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
            let report = ComplexityReport::from_json(&text)?;
            let k = report.class_names.len();
            if report.adjacency.len() != k {
                return Err(Error::ShapeMismatch(format!(
                    "adjacency has {} rows for {k} classes",
                    report.adjacency.len()
                )));
            }
            let mut w = Array2::zeros((k, k));
            for (i, row) in report.adjacency.iter().enumerate() {
                if row.len() != k {
                    return Err(Error::ShapeMismatch(format!(
                        "adjacency row {i} has {} entries for {k} classes",
                        row.len()
                    )));
                }
                for (j, &v) in row.iter().enumerate() {
                    w[(i, j)] = v;
                }
            }
            (w, report.class_names)
        }
        (None, Some(input)) => {
            let ds = load_dataset(input, args.format)?;
            let sim = monte_carlo_similarity(&ds, &similarity_params(&args.pipeline))?;
            let adj = bray_curtis_adjacency(&sim.entries)?;
            (adj.entries, ds.class_names().to_vec())
        }
        _ => unreachable!("clap enforces exactly one source"),
    };
    let map = csg::mds::classical_mds(&w, &names)?;
    emit(args.output.as_deref(), &map.to_csv())
}

fn json_real(v: f64) -> serde_json::Value {
    // Plain JSON has no infinity literal; degenerate measures come out as a
    // string so they survive serialization visibly instead of as null.
    if v.is_finite() {
        serde_json::json!(v)
    } else {
        serde_json::Value::String("infinity".into())
    }
}

fn cmd_baselines(args: &BaselinesArgs) -> Result<()> {
    let measures: Vec<Measure> = args
        .measures
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_>>()?;
    let ds = load_dataset(&args.input.input, args.input.format)?;
    let mut obj = serde_json::Map::new();
    obj.insert("n_points".into(), serde_json::json!(ds.n_points()));
    obj.insert("dim".into(), serde_json::json!(ds.dim()));
    obj.insert("classes".into(), serde_json::json!(ds.n_classes()));
    obj.insert("on_embedding".into(), serde_json::json!(true));
    for m in &measures {
        match m {
            Measure::F1 => {
                let avg = baselines::multiclass_f1(&ds)?;
                obj.insert("f1".into(), json_real(avg.mean));
                obj.insert(
                    "f1_sentinel_pairs".into(),
                    serde_json::json!(avg.sentinel_count),
                );
            }
            Measure::N1 => {
                obj.insert("n1".into(), json_real(baselines::n1(&ds)?));
            }
            Measure::N2 => {
                let avg = baselines::multiclass_n2(&ds)?;
                obj.insert("n2".into(), json_real(avg.mean));
                obj.insert(
                    "n2_sentinel_pairs".into(),
                    serde_json::json!(avg.sentinel_count),
                );
            }
            Measure::N3 => {
                obj.insert("n3".into(), json_real(baselines::n3(&ds)?));
            }
            Measure::T2 => {
                obj.insert("t2".into(), json_real(baselines::t2(&ds)?));
            }
        }
    }
    let text = serde_json::to_string_pretty(&serde_json::Value::Object(obj))?;
    emit(args.output.as_deref(), &(text + "\n"))
}

fn cmd_synth(args: &SynthArgs) -> Result<()> {
    let mut ds = dataset::generate_blobs(
        args.classes,
        args.per_class,
        args.dim,
        args.separation,
        args.sigma,
        args.seed,
    )?;
    if args.swap_classes > 1 {
        let selected: Vec<usize> = (0..args.swap_classes).collect();
        // Mixing gets its own stream so it does not replay the draws that
        // shaped the coordinates.
        let swap_seed = csg::derive_seed(args.seed, "label-swap");
        ds = dataset::swap_labels(&ds, &selected, args.swap_frac, swap_seed)?;
    }
    match resolved_format(&args.output, args.format) {
        Format::Csv => dataset::save_csv(&ds, &args.output),
        Format::Bin => dataset::save_binary(&ds, &args.output),
    }
}
