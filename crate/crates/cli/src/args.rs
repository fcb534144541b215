use std::path::PathBuf;

use bec::{Algorithm, BecParams};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "bec",
    version,
    about = "Sample and verify the bivariate exponential conditionals distribution"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Draw pairs and write them as CSV or JSON lines.
    Sample(SampleArgs),
    /// Print theoretical acceptance rates for a grid of delta and c.
    Rates(RatesArgs),
    /// Recompute the reference rate table and diff it against the published values.
    Table1,
    /// Run seeded acceptance-rate, conditional PIT and moment checks.
    Verify(VerifyArgs),
    /// Report throughput and proposals per accepted draw for each algorithm.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmArg {
    A,
    B,
    C,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Rate on the x axis.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub beta: f64,
    /// Rate on the y axis.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub gamma: f64,
    /// Interaction strength.
    #[arg(long, allow_negative_numbers = true)]
    pub delta: f64,
    #[arg(long, value_enum, default_value_t = AlgorithmArg::Auto)]
    pub algorithm: AlgorithmArg,
    /// Envelope split point for algorithm b.
    #[arg(long, default_value_t = bec::DEFAULT_SPLIT, allow_negative_numbers = true)]
    pub c: f64,
    /// Seed; drawn from system entropy and reported on stderr when omitted.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Independent seeded shards. Output order depends on this value.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

impl ModelArgs {
    pub fn params(&self) -> Result<BecParams, CliError> {
        Ok(BecParams::new(self.beta, self.gamma, self.delta)?)
    }

    pub fn algorithm(&self) -> Result<Algorithm, CliError> {
        Ok(match self.algorithm {
            AlgorithmArg::A => Algorithm::A,
            AlgorithmArg::C => Algorithm::C,
            AlgorithmArg::Auto => Algorithm::Auto,
            AlgorithmArg::B => {
                if !(self.c > 0.0 && self.c.is_finite()) {
                    return Err(CliError::usage(format!(
                        "--c must be > 0 for algorithm b, got {}",
                        self.c
                    )));
                }
                if self.delta == 0.0 {
                    return Err(CliError::usage(
                        "algorithm b requires --delta > 0; use --algorithm c at delta = 0",
                    ));
                }
                Algorithm::B { c: self.c }
            }
        })
    }

    pub fn workers(&self) -> Result<usize, CliError> {
        if self.workers == 0 {
            return Err(CliError::usage("--workers must be >= 1"));
        }
        Ok(self.workers)
    }

    /// The explicit seed, or a fresh one announced on stderr.
    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or_else(|| {
            let seed = rand::random();
            eprintln!("seed: {seed}");
            seed
        })
    }
}

#[derive(Debug, Clone, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Number of pairs.
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write records here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct RatesArgs {
    /// Interaction strengths (comma separated or repeated). Defaults to the reference grid.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub delta: Vec<f64>,
    /// Split points; 0 selects the exponential envelope. Defaults to the reference grid.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub c: Vec<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Pairs drawn for the PIT and moment checks.
    #[arg(long, default_value_t = 100_000)]
    pub n: usize,
    /// Proposals for the acceptance-rate check.
    #[arg(long, default_value_t = 1_000_000)]
    pub proposals: u64,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Accepted draws per algorithm.
    #[arg(long, default_value_t = 100_000)]
    pub n: usize,
}
