use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mdlp_core::instance::Requirement;
use mdlp_core::{Natural, Strategy};

#[derive(Debug, Parser)]
#[command(name = "mdlp", version, about = "Multiple discrete logarithm instances: generate, vet, solve, benchmark")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a random instance and report its hardness conditions.
    Gen(GenArgs),
    /// Re-check an instance file and report its hardness conditions.
    Validate(ValidateArgs),
    /// Recover the exponents of an instance file.
    Solve(SolveArgs),
    /// Print the table of g1^k1 * g2^k2 mod N.
    Table(TableArgs),
    /// Discrete logarithm mod a prime by index calculus.
    Indexcalc(IndexcalcArgs),
    /// Show that per-base logarithm equations of one instance are proportional.
    Rankdemo(RankdemoArgs),
    /// Time the solvers on a named suite and print CSV.
    Bench(BenchArgs),
}

/// Decimal natural number.
pub fn natural(s: &str) -> Result<Natural, String> {
    mdlp_core::arith::dec::parse(s).map_err(|e| e.to_string())
}

/// `a..b` (inclusive) or a single value `a`.
pub fn inclusive_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let parse = |x: &str| x.trim().parse::<u64>().map_err(|e| format!("{x:?}: {e}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (parse(a)?, parse(b)?);
            if a > b {
                return Err(format!("empty range {s}"));
            }
            Ok(a..=b)
        }
        None => parse(s).map(|a| a..=a),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Requirement3 {
    Any,
    Hold,
    Violate,
}

impl From<Requirement3> for Requirement {
    fn from(r: Requirement3) -> Self {
        match r {
            Requirement3::Any => Requirement::Any,
            Requirement3::Hold => Requirement::Hold,
            Requirement3::Violate => Requirement::Violate,
        }
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Bit length of the modulus (3 to 64).
    #[arg(long, default_value_t = 16)]
    pub bits: u32,
    /// Number of generators.
    #[arg(long, default_value_t = 2)]
    pub t: usize,
    /// Pairwise order condition; a bare flag means `hold`.
    #[arg(long, value_enum, num_args = 0..=1, default_value = "any", default_missing_value = "hold")]
    pub require_theorem1: Requirement3,
    /// Per-prime omitted-product condition; a bare flag means `hold`.
    #[arg(long, value_enum, num_args = 0..=1, default_value = "any", default_missing_value = "hold")]
    pub require_theorem2: Requirement3,
    #[arg(long)]
    pub max_order_product: Option<u64>,
    #[arg(long)]
    pub min_order: Option<u64>,
    #[arg(long, default_value_t = 20_000)]
    pub max_attempts: u64,
    /// Write the instance JSON here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LoadArgs {
    /// Instance JSON file.
    pub instance: PathBuf,
    /// Largest subgroup closure built while re-checking independence.
    #[arg(long, default_value_t = 1 << 20)]
    pub cap: usize,
    /// Accept instances whose independence exceeds the closure cap.
    #[arg(long)]
    pub allow_unverified: bool,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub load: LoadArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Auto,
    Exhaustive,
    Mitm,
    Collapse,
    Peel,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Exhaustive => Strategy::Exhaustive,
            StrategyArg::Mitm => Strategy::Mitm,
            StrategyArg::Collapse => Strategy::Collapse,
            StrategyArg::Peel => Strategy::Peel,
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub load: LoadArgs,
    #[arg(long, value_enum, default_value = "auto")]
    pub strategy: StrategyArg,
    /// Threads for exhaustive search; results do not depend on it.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Scan diagonal tuples last during exhaustive search.
    #[arg(long)]
    pub skip_diagonal: bool,
    #[arg(long)]
    pub exhaustive_budget: Option<u64>,
    #[arg(long)]
    pub mitm_memory: Option<u64>,
    #[arg(long)]
    pub peel_budget: Option<u64>,
    #[arg(long)]
    pub bsgs_max_baby: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Markdown,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_parser = natural)]
    pub n: Natural,
    #[arg(long, value_parser = natural)]
    pub g1: Natural,
    #[arg(long, value_parser = natural)]
    pub g2: Natural,
    /// Column exponents, `a..b` inclusive.
    #[arg(long, value_parser = inclusive_range, default_value = "1..4")]
    pub k1_range: RangeInclusive<u64>,
    /// Row exponents, `a..b` inclusive.
    #[arg(long, value_parser = inclusive_range, default_value = "1..4")]
    pub k2_range: RangeInclusive<u64>,
    #[arg(long, value_enum, default_value = "markdown")]
    pub format: TableFormat,
    /// Largest number of cells printed.
    #[arg(long, default_value_t = 1 << 20)]
    pub budget: u64,
}

#[derive(Debug, Args)]
pub struct IndexcalcArgs {
    #[arg(long, value_parser = natural, required_unless_present = "cross_check")]
    pub p: Option<Natural>,
    #[arg(long, value_parser = natural, required_unless_present = "cross_check")]
    pub alpha: Option<Natural>,
    #[arg(long, value_parser = natural, required_unless_present = "cross_check")]
    pub beta: Option<Natural>,
    /// Smoothness bound for the factor base.
    #[arg(long, value_parser = natural, default_value = "30")]
    pub bound: Natural,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Instead of one task, solve this many random tasks over primes below
    /// 10^5 and compare with baby-step giant-step.
    #[arg(long, conflicts_with_all = ["p", "alpha", "beta"])]
    pub cross_check: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RankdemoArgs {
    #[arg(long, value_parser = natural)]
    pub p: Natural,
    /// Comma-separated logarithm bases.
    #[arg(long, value_parser = natural, value_delimiter = ',', required = true)]
    pub alpha: Vec<Natural>,
    /// Comma-separated generators.
    #[arg(long, value_parser = natural, value_delimiter = ',', required = true)]
    pub g: Vec<Natural>,
    /// Comma-separated witness exponents, one per generator.
    #[arg(long, value_parser = natural, value_delimiter = ',', required = true)]
    pub k: Vec<Natural>,
    /// Target; defaults to prod g_i^k_i mod p.
    #[arg(long, value_parser = natural)]
    pub beta: Option<Natural>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Suite name: empty, smoke, t2, mixed or attacks.
    #[arg(long, default_value = "smoke")]
    pub suite: String,
    /// Write CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
