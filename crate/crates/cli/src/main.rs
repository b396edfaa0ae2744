//! `hyperrank`: tensor eigenvector centralities of hypergraphs from the
//! command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 data error, 3 convergence failure.

mod commands;
mod error;
mod input;
mod manifest;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "hyperrank", version, about = "Tensor eigenvector centralities of non-uniform hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute one centrality and write `node,score` rows plus a run manifest.
    Centrality(CentralityArgs),
    /// Run several methods and compare their rankings with Kendall's tau-b.
    Compare(CompareArgs),
    /// Per-order node, edge and largest-component counts.
    Stats(StatsArgs),
    /// Re-run a centrality from its manifest.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Dataset directory `NAME/` holding `NAME-nverts.txt`, `NAME-simplices.txt`
    /// and optionally `NAME-node-labels.txt`.
    #[arg(long, conflicts_with_all = ["nverts", "simplices"])]
    pub input: Option<PathBuf>,
    /// Simplex size file (alternative to --input).
    #[arg(long, requires = "simplices")]
    pub nverts: Option<PathBuf>,
    /// Concatenated node id file (alternative to --input).
    #[arg(long, requires = "nverts")]
    pub simplices: Option<PathBuf>,
    /// Node label file, `id label` per line.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    /// Edge weights: number of repeats of each simplex, or one.
    #[arg(long, value_enum, default_value_t = WeightingArg::Count)]
    pub weighting: WeightingArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightingArg {
    Count,
    Unit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Ec,
    Hec,
    Uhec,
    Uphec,
    Alt,
    ZecUplift,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RootArg {
    /// H-eigenvector: `T c^{m-1} = lambda c^[m-1]`.
    OrderMinusOne,
    /// Fixed point `T c^{m-1} = lambda c^[m]` at unit l1 norm.
    Order,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    Z1,
    Z2,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Relative gap between the eigenvalue bounds at which to stop.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 100_000)]
    pub max_iter: usize,
    /// Diagonal shift added to the iteration map.
    #[arg(long, default_value_t = 1.0)]
    pub shift: f64,
    /// Random positive start vector from this seed (default: uniform start).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Root taken in the power update.
    #[arg(long, value_enum, default_value_t = RootArg::OrderMinusOne)]
    pub root: RootArg,
}

#[derive(Debug, Clone, Args)]
pub struct CentralityArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum)]
    pub method: MethodArg,
    /// Tensor order for hec, uhec and alt.
    #[arg(long)]
    pub order: Option<usize>,
    /// Projection order for uphec.
    #[arg(long)]
    pub p: Option<usize>,
    /// Norm of the zec-uplift eigenvector.
    #[arg(long, value_enum, default_value_t = NormArg::Z1)]
    pub norm: NormArg,
    /// Auxiliary multiplicities used by zec-uplift on pairwise input
    /// (default 1, i.e. an order-3 uplift).
    #[arg(long, value_delimiter = ',')]
    pub multiplicities: Vec<u32>,
    /// Restrict to the largest connected component first.
    #[arg(long)]
    pub lcc: bool,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Output CSV; the manifest goes to `<out>.manifest.json`.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Comma-separated method tags: ec, u<p>, h<m>, a<m>.
    #[arg(long, value_delimiter = ',', required = true)]
    pub methods: Vec<String>,
    /// Top-K sizes for the curves (default: a 1-2-5 grid up to the table size).
    #[arg(long, value_delimiter = ',')]
    pub ks: Vec<usize>,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct StatsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Output CSV (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ReplayArgs {
    /// Manifest written by `centrality`.
    #[arg(long)]
    pub manifest: PathBuf,
    /// Output CSV (default: the one recorded in the manifest).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("HYPERRANK_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("HYPERRANK_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot configure {n} threads: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Centrality(a) => commands::centrality(&a),
        Command::Compare(a) => commands::compare(&a),
        Command::Stats(a) => commands::stats(&a),
        Command::Replay(a) => commands::replay(&a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
