use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use output::Format;

/// Exact computations in the deformed Heisenberg algebra, its Fock space and
/// the plane-partition generating functions.
#[derive(Parser, Debug)]
#[command(name = "fockcat", version, about)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Series are exact through q^N.
    #[arg(long, global = true, value_name = "N", default_value_t = 6)]
    pub max_q: u32,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form of an expression such as "q2*p1 + (1+t)*q1".
    NormalOrder { expr: String },
    /// Vacuum expectation <0|expr|0>.
    Vacuum { expr: String },
    /// MacMahon function and its deformations by several methods.
    Zseries(ZseriesArgs),
    /// Enumerate plane partitions of a given volume.
    PlanePartitions(PlanePartitionArgs),
    /// Apply a transfer operator to a partition state.
    Gamma(GammaArgs),
    /// Character table of S_n (rows lambda, columns mu).
    CharacterTable { n: u32 },
    /// Characteristic map of the irreducible character chi^lambda of S_n.
    Ch { n: u32, lambda: String },
    /// Run invariant suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Product,
    Transfer,
    Commutation,
    Enumeration,
    Pairs,
    All,
}

#[derive(Args, Debug)]
pub struct ZseriesArgs {
    #[arg(long, value_enum, default_value_t = MethodArg::All)]
    pub method: MethodArg,
    /// Z(q,t) instead of Z(q).
    #[arg(long, conflicts_with = "refined")]
    pub deformed: bool,
    /// The t^(1/2)-symmetric refinement.
    #[arg(long)]
    pub refined: bool,
    /// Specialize t to a rational value before printing.
    #[arg(long, value_name = "VALUE", allow_hyphen_values = true)]
    pub at_t: Option<String>,
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("mode").args(["count", "list", "slices"])))]
pub struct PlanePartitionArgs {
    #[arg(long)]
    pub volume: u32,
    /// Print the number of plane partitions (default).
    #[arg(long)]
    pub count: bool,
    /// One plane partition per line.
    #[arg(long)]
    pub list: bool,
    /// Each plane partition with its diagonal slices.
    #[arg(long)]
    pub slices: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Plus,
    Minus,
}

#[derive(Args, Debug)]
pub struct GammaArgs {
    #[arg(long, value_enum)]
    pub side: SideArg,
    /// Spectral parameter as a power of q, e.g. q1/2, q3/2, q2.
    #[arg(long)]
    pub z: String,
    /// Input partition, e.g. "(2,1)" or "()".
    #[arg(long, default_value = "()")]
    pub state: String,
    /// Largest partition weight kept.
    #[arg(long, default_value_t = 4)]
    pub cutoff: u32,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite name or "all".
    #[arg(default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 6)]
    pub max_n: u32,
    #[arg(long, default_value_t = 1000)]
    pub words: usize,
    #[arg(long, default_value_t = 5)]
    pub symmetrizer_rank: u32,
    #[arg(long, default_value_t = 7)]
    pub character_rank: u32,
    #[arg(long, default_value_t = 6)]
    pub ch_rank: u32,
    #[arg(long, default_value_t = 4)]
    pub cutoff: u32,
    #[arg(long, default_value_t = 10)]
    pub max_volume: u32,
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// Bad input; exit status 2.
    Usage(String),
    /// A computed invariant or cross-check failed; exit status 1. Carries the rendered report.
    Verification(String),
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("FOCKCAT_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("FOCKCAT_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    match commands::run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(text)) => {
            print!("{text}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
