//! `polyesf`: command-line access to colored-partition enumeration, exact
//! moments, the polychromatic ESF, samplers, necklaces and the verification
//! suite. Output is JSON tagged with `"schema": "polyesf/1"`, or a plain
//! table with `--pretty`.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polyesf::Limits;

use crate::output::Report;

#[derive(Parser, Debug)]
#[command(name = "polyesf", version, about = "Exact polychromatic Ewens sampling formula toolkit")]
struct Cli {
    /// Render a human-readable table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    /// Write the output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Maximum number of objects any enumeration may produce.
    #[arg(long, global = true, env = "POLYESF_CAPACITY", value_name = "N")]
    capacity: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the colored partitions of a color budget with their multinomial coefficients.
    Enumerate(EnumerateArgs),
    /// Multivariate Dirichlet (or Gamma) moment of linear forms.
    Moment(MomentArgs),
    /// The polychromatic Ewens sampling formula as an exact distribution.
    Esf(EsfArgs),
    /// Empirical laws of the urn, restaurant and permutation samplers.
    Sample(SampleArgs),
    /// List the necklaces of a given length.
    Necklaces(NecklacesArgs),
    /// Check the necklace form of the multinomial coefficient.
    NecklaceCheck(NecklaceCheckArgs),
    /// Run the identity checks.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    /// Color counts, e.g. `2,1`. With `--q` and a single entry, the total size.
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    pub n: Vec<u32>,
    /// Number of colors.
    #[arg(long)]
    pub q: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MomentMethod {
    Theorem,
    #[value(alias = "matrix-sum")]
    Matrix,
    Recursion,
    /// Monte Carlo only.
    Mc,
    /// Moment of independent Gamma variables instead of a Dirichlet vector.
    Gamma,
    All,
}

#[derive(Args, Debug)]
pub struct MomentArgs {
    /// Matrix `S` with rows separated by `;`, e.g. `1,0;0,1`.
    #[arg(long = "S", alias = "s", allow_hyphen_values = true)]
    pub s: Option<String>,
    /// Dirichlet parameters, e.g. `1,1`.
    #[arg(long)]
    pub alpha: Option<String>,
    /// Exponents, one per column of `S`.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub n: Vec<u32>,
    /// Read `{"alpha", "S", "n"}` from a JSON file instead.
    #[arg(long, alias = "spec", value_name = "PATH", conflicts_with_all = ["s", "alpha", "n"])]
    pub problem: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "all")]
    pub method: MomentMethod,
    /// Also estimate the moment by Monte Carlo with this many samples
    /// (`--method mc` defaults to 1000000).
    #[arg(long, value_name = "SAMPLES")]
    pub monte_carlo: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct EsfArgs {
    /// Total size.
    #[arg(long)]
    pub n: Option<u32>,
    /// Number of colors (defaults to the length of `--p`).
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long)]
    pub theta: String,
    /// Color probabilities, summing to 1.
    #[arg(long)]
    pub p: Option<String>,
    /// Condition on these color counts.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub conditional: Option<Vec<u32>>,
    /// Also check that deleting one element maps size n to size n-1.
    #[arg(long)]
    pub verify_consistency: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SamplerKind {
    Hoppe,
    Crp,
    Perm,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(value_enum)]
    pub sampler: SamplerKind,
    /// Number of steps (balls, customers, or permutation size).
    #[arg(long = "T", alias = "t")]
    pub t: usize,
    #[arg(long, default_value = "1")]
    pub theta: String,
    /// Color probabilities (ignored by `perm`).
    #[arg(long, default_value = "1/2,1/2")]
    pub p: String,
    #[arg(long, default_value_t = 100_000)]
    pub runs: u64,
    /// Seed; generated and reported when absent.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Report the total-variation distance to the exact law.
    #[arg(long)]
    pub compare_exact: bool,
}

#[derive(Args, Debug)]
pub struct NecklacesArgs {
    #[arg(long)]
    pub q: usize,
    #[arg(long)]
    pub ell: usize,
}

#[derive(Args, Debug)]
pub struct NecklaceCheckArgs {
    /// Color counts, e.g. `2,2`.
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    pub n: Vec<u32>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run only these checks (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    /// Size bound applied to every selected check.
    #[arg(long)]
    pub n_max: Option<u32>,
    /// Monte Carlo samples per instance.
    #[arg(long, default_value_t = 1_000_000)]
    pub runs: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    /// List the available checks and exit.
    #[arg(long)]
    pub list: bool,
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = match cli.capacity {
        Some(0) => {
            eprintln!("error: capacity must be positive");
            return ExitCode::from(2);
        }
        Some(c) => Limits::default().with_enumeration(c),
        None => Limits::default(),
    };
    let result = match &cli.command {
        Command::Enumerate(a) => commands::enumerate(a, &limits),
        Command::Moment(a) => commands::moment(a, &limits),
        Command::Esf(a) => commands::esf(a, &limits),
        Command::Sample(a) => commands::sample(a, &limits),
        Command::Necklaces(a) => commands::necklaces(a, &limits),
        Command::NecklaceCheck(a) => commands::necklace_check(a, &limits),
        Command::Verify(a) => commands::verify(a, &limits),
    };
    match result {
        Ok(report) => emit(&report, cli.pretty, cli.output.as_ref()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn emit(report: &Report, pretty: bool, path: Option<&PathBuf>) -> ExitCode {
    let text = if pretty {
        report.pretty.clone()
    } else {
        let mut s = serde_json::to_string_pretty(&report.json).expect("JSON values serialize");
        s.push('\n');
        s
    };
    match path {
        Some(p) => {
            if let Err(e) = std::fs::write(p, text) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(if report.passed { 0 } else { 1 })
}
