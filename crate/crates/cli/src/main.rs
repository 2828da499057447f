//! `cutlab`: graph6 in, JSONL out.
//!
//! Exit codes: 0 success, 1 other failure, 2 size guard exceeded, 3 a proven
//! statement was violated, 64 usage error, 65 malformed input.

mod commands;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand};
use cutlab::solver::{Norm, Objective, SizeSpec};
use cutlab::Rational;

#[derive(Parser, Debug)]
#[command(
    name = "cutlab",
    about = "Balanced and unbalanced partition functionals of clique-free graphs"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print every K_R-free graph on N vertices up to isomorphism, as graph6.
    Gen(GenArgs),
    /// Solve a partition or subset problem exactly for each graph on stdin.
    Solve(SolveArgs),
    /// Run a constructive heuristic on each graph on stdin.
    Heur(HeurArgs),
    /// Flag densities, expected cut costs and inequality residuals.
    Flags(FlagsArgs),
    /// Check theorem and conjecture bounds on enumerated or supplied graphs.
    Check(CheckArgs),
    /// Graphs maximizing an optimal partition cost.
    Extremal(ExtremalArgs),
    /// Clique packings and the independent-set and X/Y/Z bounds.
    Ks(KsArgs),
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    /// Forbidden clique size R (3 for triangle-free).
    #[arg(long, default_value_t = 3)]
    forbid: usize,
    /// Keep only regular graphs.
    #[arg(long)]
    regular: bool,
    /// Raise the enumeration guard.
    #[arg(long)]
    max_n: Option<usize>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long, default_value = "balanced:2")]
    spec: SizeSpec,
    #[arg(long, default_value = "1")]
    norm: Norm,
    /// Solve over subsets of size floor(alpha n) instead.
    #[arg(long)]
    alpha: Option<Rational>,
    #[arg(long, default_value = "two_sided")]
    objective: Objective,
    /// Raise or lower the solver's guard on n.
    #[arg(long)]
    max_n: Option<usize>,
    /// Reject balanced specs whose class count does not divide n.
    #[arg(long)]
    strict: bool,
}

#[derive(clap::ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    IndBisect,
    Nbhd,
    TriInd,
    Biased,
    RandomK,
    ThreeQuarters,
    SparseClass,
}

#[derive(Args, Debug)]
struct HeurArgs {
    #[arg(long, value_enum)]
    method: Method,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 16)]
    trials: usize,
    /// Class count for random-k.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Norm for random-k.
    #[arg(long, default_value = "1")]
    norm: Norm,
    /// Subset proportion for biased.
    #[arg(long)]
    alpha: Option<Rational>,
    /// Anchor vertex for nbhd.
    #[arg(long, default_value_t = 0)]
    vertex: usize,
}

#[derive(Args, Debug)]
#[group(id = "mode", required = true, multiple = false)]
struct FlagModes {
    /// Induced density of this graph6 pattern.
    #[arg(long, value_name = "H.g6", group = "mode")]
    density: Option<String>,
    /// Density of a flag (e.g. `lu:2`) at `--anchor`.
    #[arg(long, value_name = "CODE", group = "mode")]
    labeled: Option<String>,
    /// Both sides of the averaging identity for a flag.
    #[arg(long, value_name = "CODE", group = "mode")]
    average: Option<String>,
    /// Expected class costs: `vertex:V`, `edge:U,V` or `triple:U,V,W`.
    #[arg(long, value_name = "ANCHOR", group = "mode")]
    expected_cut: Option<String>,
    /// Residual of a catalog inequality.
    #[arg(long, value_name = "ID", group = "mode")]
    ineq: Option<String>,
    /// List the catalog and exit.
    #[arg(long, group = "mode")]
    list: bool,
}

#[derive(Args, Debug)]
struct FlagsArgs {
    #[command(flatten)]
    mode: FlagModes,
    /// Host vertices for `--labeled`, comma separated.
    #[arg(long, value_delimiter = ',')]
    anchor: Vec<usize>,
    /// Class sizes for `--expected-cut`, comma separated.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    /// Inequality parameters as NAME=P/Q (alpha, beta, eps).
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    claims: Vec<String>,
    /// Inclusive range `A..B`; without it graphs are read from stdin.
    #[arg(long)]
    n_range: Option<String>,
    /// Forbidden clique size for enumeration; defaults to the weakest
    /// hypothesis among the claims.
    #[arg(long)]
    forbid: Option<usize>,
    #[arg(long)]
    regular: bool,
    /// Append records to FILE, continuing after its last complete graph.
    #[arg(long, value_name = "FILE")]
    resume: Option<std::path::PathBuf>,
    #[arg(long)]
    alpha: Option<Rational>,
    #[arg(long)]
    r: Option<usize>,
    /// Additive slack for T7 (default ceil(n^2/100)).
    #[arg(long)]
    t7_slack: Option<Rational>,
    /// Raise the enumeration guard.
    #[arg(long)]
    max_n: Option<usize>,
}

#[derive(Args, Debug)]
struct ExtremalArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "balanced:2")]
    spec: SizeSpec,
    #[arg(long, default_value = "1")]
    norm: Norm,
    #[arg(long, default_value_t = 3)]
    forbid: usize,
}

#[derive(Args, Debug)]
struct KsArgs {
    #[arg(long)]
    r: usize,
    /// Evaluate the X/Y/Z bound at `x,y,z,e_z` (proportions as P/Q).
    #[arg(long, value_delimiter = ',')]
    xyz: Vec<String>,
}

/// Exit status with a message for stderr.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Data(String),
    Guard(String),
    Other(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Other(_) => 1,
            Failure::Guard(_) => 2,
            Failure::Usage(_) => 64,
            Failure::Data(_) => 65,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Data(m) | Failure::Guard(m) | Failure::Other(m) => m,
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("CUT_THREADS") else {
        return Ok(());
    };
    let threads: usize = v.trim().parse().map_err(|_| {
        Failure::Usage(format!("CUT_THREADS must be a positive integer, got `{v}`"))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Other(e.to_string()))
}

fn main() -> ExitCode {
    let version: &'static str = Box::leak(
        format!(
            "{} catalog-sha256:{}",
            env!("CARGO_PKG_VERSION"),
            cutlab::flags::catalog_hash()
        )
        .into_boxed_str(),
    );
    let matches = match Cli::command().version(version).try_get_matches() {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(64);
        }
    };
    let result = configure_threads().and_then(|()| {
        let stdout = io::stdout();
        let mut out = io::BufWriter::new(stdout.lock());
        let code = commands::run(cli.cmd, &mut out)?;
        out.flush().map_err(commands::io_failure)?;
        Ok(code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Other(m)) if m == commands::BROKEN_PIPE => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("cutlab: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
