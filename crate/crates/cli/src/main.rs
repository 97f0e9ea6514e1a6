//! `tourist`: dataset generation, walk signatures, classification, metrics and
//! runtime comparison from the command line.

mod commands;
mod files;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "tourist", version, about = "Deterministic tourist walks on networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a labeled synthetic dataset as canonical edge lists.
    Generate(GenerateArgs),
    /// Walk graphs and write signature vectors and joint histograms.
    Walk(WalkArgs),
    /// Write the structural feature vector of each graph.
    Structural(StructuralArgs),
    /// LDA with leave-one-out evaluation over a feature CSV.
    Classify(ClassifyArgs),
    /// Chi, omega and their baselines for one graph, or a Watts–Strogatz sweep.
    Metric(MetricArgs),
    /// Time chi against omega on Watts–Strogatz graphs.
    Bench(BenchArgs),
    /// Size, clustering, path length and cleaning counters of an edge list.
    Summary(SummaryArgs),
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// Manifest JSON; the desk-scale default is used when omitted.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Base seed, overriding the manifest's.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Use the full size x degree grid instead of the desk-scale one.
    #[arg(long, conflicts_with = "manifest")]
    pub paper_scale: bool,
    /// Edge-noise rate applied to every graph (0.1, 0.2, 0.3 ...).
    #[arg(long)]
    pub noise: Option<f64>,
    /// Graphs per class, overriding the manifest.
    #[arg(long)]
    pub count: Option<usize>,
}

#[derive(Args, Debug)]
pub struct WalkArgs {
    /// An edge-list file, or a dataset directory containing labels.csv.
    #[arg(long)]
    pub input: PathBuf,
    /// Memories, comma separated and increasing.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5")]
    pub mu: Vec<usize>,
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Also write every launch's outcome per graph and memory.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Args, Debug)]
pub struct StructuralArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Walk signatures, used as is.
    Dtw,
    /// Structural features, z-scored first.
    Structural,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub features: PathBuf,
    #[arg(long, value_enum, default_value = "dtw")]
    pub method: Method,
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Ridge factor on the pooled covariance, relative to its mean variance.
    #[arg(long, default_value_t = 1e-6)]
    pub lambda: f64,
}

#[derive(Args, Debug)]
pub struct MetricArgs {
    /// Edge list to measure.
    #[arg(long, required_unless_present = "sweep", conflicts_with = "sweep")]
    pub graph: Option<PathBuf>,
    /// Memories; a single value for one graph, any list for a sweep.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub mu: Vec<usize>,
    #[arg(long, default_value_t = tourist_core::metrics::DEFAULT_REALIZATIONS)]
    pub realizations: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sweep Watts–Strogatz rewiring over a log-spaced grid instead.
    #[arg(long)]
    pub sweep: bool,
    #[arg(long, default_value_t = 500)]
    pub n: usize,
    #[arg(long, default_value_t = 8)]
    pub k: usize,
    #[arg(long, default_value_t = 1e-4)]
    pub p_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub p_max: f64,
    #[arg(long, default_value_t = 20)]
    pub points: usize,
    /// Graphs per rewiring value.
    #[arg(long, default_value_t = 5)]
    pub seeds: usize,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_value = "100,1000,10000")]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 0.05)]
    pub p: f64,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    pub mu: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
    #[arg(long, default_value_t = 10)]
    pub k: usize,
    #[arg(long, default_value_t = tourist_core::metrics::DEFAULT_REALIZATIONS)]
    pub realizations: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SummaryArgs {
    #[arg(long)]
    pub graph: PathBuf,
}

fn main() -> anyhow::Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    match Cli::parse().command {
        Command::Generate(a) => commands::generate(&a),
        Command::Walk(a) => commands::walk(&a),
        Command::Structural(a) => commands::structural(&a),
        Command::Classify(a) => commands::classify(&a),
        Command::Metric(a) => commands::metric(&a),
        Command::Bench(a) => commands::bench(&a),
        Command::Summary(a) => commands::summary(&a),
    }
}
