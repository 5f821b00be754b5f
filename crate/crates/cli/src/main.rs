//! Command-line front end: `cluster` runs the pipeline on one dataset,
//! `bench` sweeps generated datasets and writes timing CSV.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use isoclust::parengine::WORKERS_ENV;
use isoclust::pipeline::Sigma;

/// Exit status when `--engine both` produced different results.
pub const EXIT_MISMATCH: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "isoclust", version, about = "Isoperimetric clustering on minimum spanning trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cluster one dataset and write labels plus a JSON summary.
    Cluster(ClusterArgs),
    /// Time the pipeline on generated data and write CSV records.
    Bench(BenchArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineChoice {
    Seq,
    Par,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatChoice {
    Auto,
    Csv,
    Whitespace,
}

#[derive(Args, Debug)]
pub struct ClusterArgs {
    /// Point file, one point per row.
    #[arg(long, conflicts_with = "generate", required_unless_present = "generate")]
    pub input: Option<PathBuf>,
    /// Synthetic data instead of a file: `n=..,d=..,k=..[,seed=..][,spread=..]`.
    #[arg(long)]
    pub generate: Option<String>,
    /// Number of clusters.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub k: u64,
    /// `auto` (mean pairwise distance), `auto*F`, or a positive number.
    #[arg(long, default_value = "auto")]
    pub sigma: Sigma,
    /// Potential scale; 0 disables potentials.
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    /// Root vertex of the spanning tree.
    #[arg(long, default_value_t = 0)]
    pub root: usize,
    #[arg(long, value_enum, default_value_t = EngineChoice::Seq)]
    pub engine: EngineChoice,
    /// Worker threads for the parallel engine.
    #[arg(long, env = WORKERS_ENV)]
    pub workers: Option<usize>,
    /// Seed for `--generate` when it has no `seed=` entry.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub labels_out: Option<PathBuf>,
    /// Defaults to standard output.
    #[arg(long)]
    pub summary_out: Option<PathBuf>,
    /// Z-score every feature column before clustering.
    #[arg(long)]
    pub standardize: bool,
    /// Skip the first row of the input file.
    #[arg(long)]
    pub header: bool,
    #[arg(long, value_enum, default_value_t = FormatChoice::Auto)]
    pub format: FormatChoice,
    /// 0-based column of the input file holding class labels.
    #[arg(long)]
    pub label_column: Option<usize>,
    /// Ground-truth labels file, one identifier per line.
    #[arg(long, conflicts_with = "label_column")]
    pub truth: Option<PathBuf>,
    /// Dump the spanning tree as `id parent depth child_id parent_flow`.
    #[arg(long)]
    pub tree_out: Option<PathBuf>,
    /// Dump the distance matrix as CSV.
    #[arg(long)]
    pub distances_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    pub sizes: Vec<usize>,
    #[arg(long = "dim", value_delimiter = ',', default_value = "40")]
    pub dims: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "10")]
    pub k: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "seq,par")]
    pub engines: Vec<EngineName>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub seeds: Vec<u64>,
    /// Timed repetitions per configuration (after one warm-up run).
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    #[arg(long, default_value_t = 1.0)]
    pub spread: f64,
    #[arg(long, default_value = "auto")]
    pub sigma: Sigma,
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    #[arg(long, env = WORKERS_ENV)]
    pub workers: Option<usize>,
    /// Defaults to standard output.
    #[arg(long)]
    pub csv_out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineName {
    Seq,
    Par,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Cluster(args) => commands::cluster(&args),
        Command::Bench(args) => commands::bench(&args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
