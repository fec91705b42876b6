//! Command-line front end: table generation, guessing runs, relation
//! verification, change-of-ordering runs and benchmark reports.

mod commands;
mod output;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "relguess", version, about = "Guess linear recurrence relations of multidimensional tables")]
struct Cli {
    /// Worker threads (0 = library default)
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Guess recurrence relations of a table
    Guess(GuessArgs),
    /// Change of ordering from a multiplication matrix or basis file
    Fglm(FglmArgs),
    /// Test relations against further table terms
    Verify(VerifyArgs),
    /// Materialize a walk table into a table file
    WalkTable(WalkTableArgs),
    /// Compare full-orthant, half-orthant and cone guessing on a walk
    BenchTable1(BenchTable1Args),
}

#[derive(Args, Debug, Clone)]
struct InputArgs {
    /// Explicit table file
    #[arg(long, conflicts_with = "walk")]
    table: Option<String>,
    /// Walk specification file
    #[arg(long)]
    walk: Option<String>,
    /// Coefficient field: a prime below 2^63, or `Q` (tables carry their
    /// own; walks default to a large prime)
    #[arg(long)]
    field: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct GuessArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Monomial ordering
    #[arg(long, default_value = "drl")]
    order: String,
    /// Variable names, most significant first (default x1,x2,...)
    #[arg(long)]
    vars: Option<String>,
    /// Cone file restricting the monomial universe
    #[arg(long)]
    cone: Option<String>,
    /// Lattice file enabling per-coset matrices
    #[arg(long)]
    lattice: Option<String>,
    /// Adaptive staircase discovery instead of a batch run
    #[arg(long)]
    adaptive: bool,
    /// Guess relations with polynomial coefficients (kernel mode)
    #[arg(long)]
    prels: bool,
    /// Total degree cap on the t variables in prels mode
    #[arg(long, default_value_t = 1)]
    tdeg: u32,
    /// Number of matrix rows (default: cols plus a 2-row buffer)
    #[arg(long)]
    rows: Option<usize>,
    /// Number of matrix columns
    #[arg(long)]
    cols: Option<usize>,
    /// Build T from all universe monomials up to this total degree
    #[arg(long)]
    degree: Option<u32>,
    /// Per-variable exponent caps, comma separated (required for LEX streams)
    #[arg(long)]
    caps: Option<String>,
    /// Stop adaptive runs once the staircase reaches this size
    #[arg(long, default_value_t = 1 << 16)]
    max_staircase: usize,
    /// Extra table shifts used to classify relations after guessing
    #[arg(long, default_value_t = 0)]
    verify_shifts: usize,
    /// Seed recorded in the run configuration
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Record and print the per-coset matrices / adaptive trace
    #[arg(long)]
    dump_matrices: bool,
    /// Structured output path (`-` for stdout)
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct FglmArgs {
    /// Multiplication matrix file
    #[arg(long, conflicts_with = "gb")]
    matrix: Option<String>,
    /// Reduced basis file (order line plus one polynomial per line)
    #[arg(long)]
    gb: Option<String>,
    /// Group-degree file enabling the blocked path
    #[arg(long)]
    gdeg: Option<String>,
    /// Coefficient field (matrix files need it; basis files too)
    #[arg(long, default_value = "2305843009213693951")]
    field: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run both the baseline and blocked paths and report timings
    #[arg(long)]
    bench: bool,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Relations file: optional `order ...` first line, one polynomial per
    /// line
    #[arg(long)]
    relations: String,
    /// Number of extra shifts to test
    #[arg(long, default_value_t = 50)]
    shifts: usize,
    /// Variable names, most significant first
    #[arg(long)]
    vars: Option<String>,
    #[arg(long, default_value = "drl")]
    order: String,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct WalkTableArgs {
    /// Walk specification file
    #[arg(long)]
    walk: String,
    /// Bound on every table index (exclusive)
    #[arg(long)]
    bound: u32,
    #[arg(long, default_value = "2305843009213693951")]
    field: String,
    /// Output table file
    #[arg(long)]
    out: String,
}

#[derive(Args, Debug, Clone)]
struct BenchTable1Args {
    /// Walk specification file
    #[arg(long)]
    walk: String,
    /// Cone file for the cone region mode
    #[arg(long)]
    cone: String,
    /// Region modes to run, comma separated
    #[arg(long, default_value = "cone,half,full")]
    modes: String,
    /// Matrix rows
    #[arg(long)]
    rows: usize,
    /// Matrix columns
    #[arg(long)]
    cols: usize,
    /// t-degree cap for the column monomials
    #[arg(long, default_value_t = 2)]
    tdeg: u32,
    /// Extra shifts used to classify guessed relations
    #[arg(long, default_value_t = 200)]
    verify_shifts: usize,
    #[arg(long, default_value = "2305843009213693951")]
    field: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<String>,
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    let body = || -> Result<()> {
        match &cli.cmd {
            Cmd::Guess(args) => commands::guess(args),
            Cmd::Fglm(args) => commands::fglm(args),
            Cmd::Verify(args) => commands::verify(args),
            Cmd::WalkTable(args) => commands::walk_table(args),
            Cmd::BenchTable1(args) => commands::bench_table1(args),
        }
    };
    if cli.jobs > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build()?;
        pool.install(body)
    } else {
        body()
    }
}
