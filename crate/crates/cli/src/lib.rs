//! Command-line front end for the `tuvals` library.

mod commands;
mod output;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use tuvals::mechanism::Interpretation;

pub use output::SCHEMA_VERSION;

#[derive(Debug, Parser)]
#[command(
    name = "tuvals",
    version,
    about = "Exact values, axiom batteries and bargaining mechanisms for TU games"
)]
pub struct Cli {
    /// Print machine-readable JSON with exact "p/q" strings only.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Shapley, equal division, k-SED, alpha-SED and solidarity values of a game.
    Values(ValuesArgs),
    /// Run axiom batteries on seeded random games.
    Axioms(AxiomsArgs),
    /// Compare expected mechanism payoffs with alpha-SED.
    Mechanism(MechanismArgs),
    /// Harsanyi dividends and hybrid-basis coordinates of a game.
    Bases(BasesArgs),
    /// Convert ESL coefficients to solidarity weights and detect a k-SED threshold.
    Convert(ConvertArgs),
}

#[derive(Debug, Args)]
pub struct ValuesArgs {
    /// Game file (JSON).
    pub game: PathBuf,
    /// Only this k for k-SED (default: every k).
    #[arg(long)]
    pub k: Option<usize>,
    /// Weights over k = 1..n, comma-separated, for alpha-SED.
    #[arg(long)]
    pub alpha: Option<String>,
    /// Weights over p = 0..n-1, comma-separated, for the solidarity family.
    #[arg(long)]
    pub beta: Option<String>,
    /// Position p for Sol^p.
    #[arg(long)]
    pub p: Option<usize>,
    /// Extra functionals by name (shapley, ed, ksed, sol, phi1..phi4, psi1, psi2, psi5..psi7).
    #[arg(long = "functional")]
    pub functionals: Vec<String>,
}

#[derive(Debug, Args)]
pub struct AxiomsArgs {
    /// Functional under test.
    #[arg(long, default_value = "ksed")]
    pub functional: String,
    /// Threshold k, used by the k-parametrized axioms and functionals.
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Position p, for `--functional sol`.
    #[arg(long)]
    pub p: Option<usize>,
    /// Number of players in the random games.
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// Seeded samples per axiom.
    #[arg(long, default_value_t = 100)]
    pub games: usize,
    /// First seed; sample `s` uses seed `seed + s`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Axiom ids to check instead of the default set (e.g. eff, sym, knnpp).
    #[arg(long = "axiom")]
    pub axioms: Vec<String>,
    /// Run the independence catalogue for k instead of a single functional.
    #[arg(long)]
    pub independence: bool,
}

#[derive(Debug, Args)]
pub struct MechanismArgs {
    /// Game file (JSON).
    pub game: PathBuf,
    /// Weights over k = 1..n, comma-separated.
    #[arg(long, conflicts_with = "k")]
    pub alpha: Option<String>,
    /// Point mass at this k.
    #[arg(long)]
    pub k: Option<usize>,
    /// Stage-3 reading: literal or dual-beal.
    #[arg(long = "interp", default_value = "literal", value_parser = parse_interpretation)]
    pub interpretation: Interpretation,
    /// Bid perturbations tried by the deviation search, comma-separated.
    #[arg(long, default_value = "-1,-1/2,-1/4,1/4,1/2,1")]
    pub grid: String,
    /// Skip the deviation search.
    #[arg(long)]
    pub no_deviations: bool,
}

#[derive(Debug, Args)]
pub struct BasesArgs {
    /// Game file (JSON).
    pub game: PathBuf,
    /// Also print hybrid-basis coordinates for this k.
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    /// ESL coefficients b_0..b_n, comma-separated.
    #[arg(long, conflicts_with = "functional")]
    pub coefficients: Option<String>,
    /// Recover the coefficients of a named functional instead.
    #[arg(long)]
    pub functional: Option<String>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub p: Option<usize>,
    /// Number of players, with `--functional`.
    #[arg(long)]
    pub n: Option<usize>,
}

fn parse_interpretation(s: &str) -> Result<Interpretation, String> {
    s.parse().map_err(|e: tuvals::Error| e.to_string())
}

/// A report was produced but an internal consistency check failed.
#[derive(Debug)]
pub struct InvariantViolation(pub String);

impl fmt::Display for InvariantViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invariant violation: {}", self.0)
    }
}

impl std::error::Error for InvariantViolation {}

/// 2 for invariant violations, 1 for everything else.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    if err.downcast_ref::<InvariantViolation>().is_some() {
        2
    } else {
        1
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<()> {
    match &cli.command {
        Command::Values(args) => commands::values(args, cli.json, out),
        Command::Axioms(args) => commands::axioms(args, cli.json, out),
        Command::Mechanism(args) => commands::mechanism(args, cli.json, out),
        Command::Bases(args) => commands::bases(args, cli.json, out),
        Command::Convert(args) => commands::convert(args, cli.json, out),
    }
}
