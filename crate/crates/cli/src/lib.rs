//! Command-line front end: matrix generation and checking, algorithm comparison,
//! size search, timing, restriction study and image reconstruction.

pub mod commands;
pub mod error;
pub mod matrix_csv;
pub mod pgm;
pub mod random;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use racah::analysis::{ParamRule, PsnrLog};
use racah::baselines::AlgorithmId;
use racah::imst::{ImStConfig, NsStrategy, Part3Guard, DEFAULT_THRESHOLD};
use racah::RacahParams;

pub use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "racah",
    version,
    about = "Weighted discrete Racah polynomial matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a matrix and write it as CSV with a JSON report alongside.
    Gen(GenArgs),
    /// Print the orthogonality error of a matrix file; exit 1 above the threshold.
    Check(CheckArgs),
    /// Entrywise differences between two generators or two matrix files.
    Compare(CompareArgs),
    /// Time generators over a list of sizes.
    Bench(BenchArgs),
    /// Largest size with orthogonality error below a bound.
    Maxsize(MaxsizeArgs),
    /// Transform-domain variances of a first-order Markov source.
    Restrict(RestrictArgs),
    /// Moments of an image and its reconstruction from capped orders.
    Reconstruct(ReconstructArgs),
}

/// Generator name: an algorithm, or the general stabilized path forced on the symmetric case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Generator {
    ZhuN,
    ZhuS,
    Daoui,
    Imst,
    ImstGeneral,
    Oracle,
}

impl Generator {
    pub fn algorithm(self) -> AlgorithmId {
        match self {
            Generator::ZhuN => AlgorithmId::ZhuN,
            Generator::ZhuS => AlgorithmId::ZhuS,
            Generator::Daoui => AlgorithmId::Daoui,
            Generator::Imst | Generator::ImstGeneral => AlgorithmId::Imst,
            Generator::Oracle => AlgorithmId::Oracle,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::ImstGeneral => "imst-general",
            other => other.algorithm().name(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleName {
    Column1,
    Column2,
    Column3,
    Column4,
    Timing,
    Fixed,
}

#[derive(Debug, Clone, Args)]
pub struct ParamArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub a: f64,
    /// Upper bound; `b - a` is the size N. Exclusive with --n.
    #[arg(long, conflicts_with = "n")]
    pub b: Option<f64>,
    /// Size N; sets `b = a + N`.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub beta: f64,
}

impl ParamArgs {
    pub fn params(&self) -> CliResult<RacahParams> {
        let b = match (self.b, self.n) {
            (Some(b), _) => b,
            (None, Some(n)) => self.a + n as f64,
            (None, None) => return Err(CliError::input("one of --b or --n is required")),
        };
        Ok(RacahParams::new(self.a, b, self.alpha, self.beta)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NsChoice {
    Auto,
    LogDomainSearch,
    QuarterFallback,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GuardChoice {
    SmallEarlier,
    LargeEarlier,
}

#[derive(Debug, Clone, Args)]
pub struct ImstArgs {
    /// Stabilizing threshold of the stabilized generator.
    #[arg(long, default_value_t = DEFAULT_THRESHOLD)]
    pub theta: f64,
    #[arg(long, value_enum, default_value_t = NsChoice::Auto)]
    pub ns_strategy: NsChoice,
    #[arg(long, value_enum, default_value_t = GuardChoice::SmallEarlier)]
    pub part3_guard: GuardChoice,
}

impl ImstArgs {
    pub fn config(&self, max_order: Option<usize>) -> ImStConfig {
        ImStConfig {
            threshold: self.theta,
            ns_strategy: match self.ns_strategy {
                NsChoice::Auto => NsStrategy::Auto,
                NsChoice::LogDomainSearch => NsStrategy::LogDomainSearch,
                NsChoice::QuarterFallback => NsStrategy::QuarterFallback,
            },
            max_order,
            part3_guard: match self.part3_guard {
                GuardChoice::SmallEarlier => Part3Guard::SmallEarlier,
                GuardChoice::LargeEarlier => Part3Guard::LargeEarlier,
            },
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct RuleArgs {
    #[arg(long, value_enum, default_value_t = RuleName::Column1)]
    pub rule: RuleName,
    /// Parameters for `--rule fixed`.
    #[arg(long, default_value_t = 0.0)]
    pub fixed_a: f64,
    #[arg(long, default_value_t = 0.0)]
    pub fixed_alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    pub fixed_beta: f64,
}

impl RuleArgs {
    pub fn rule(&self) -> ParamRule {
        match self.rule {
            RuleName::Column1 => ParamRule::Column1,
            RuleName::Column2 => ParamRule::Column2,
            RuleName::Column3 => ParamRule::Column3,
            RuleName::Column4 => ParamRule::Column4,
            RuleName::Timing => ParamRule::Timing,
            RuleName::Fixed => ParamRule::Fixed {
                a: self.fixed_a,
                alpha: self.fixed_alpha,
                beta: self.fixed_beta,
            },
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[arg(long, value_enum, default_value_t = Generator::Imst)]
    pub alg: Generator,
    /// Apply Gram-Schmidt refinement after generation.
    #[arg(long)]
    pub gsop: bool,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub imst: ImstArgs,
    /// Highest degree; defaults to N - 1.
    #[arg(long)]
    pub max_order: Option<usize>,
    /// Matrix CSV; the report goes next to it with a `.json` extension.
    #[arg(short, long)]
    pub output: PathBuf,
    /// Report path overriding the default.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    /// Matrix CSV; relative paths that do not exist are looked up in the fixture directory.
    pub input: PathBuf,
    #[arg(long, default_value_t = 1e-3)]
    pub threshold: f64,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    /// Two matrix files instead of two generators.
    #[arg(long, num_args = 2, value_names = ["LEFT", "RIGHT"], conflicts_with_all = ["alg", "against"])]
    pub files: Option<Vec<PathBuf>>,
    #[arg(long, value_enum, default_value_t = Generator::Imst)]
    pub alg: Generator,
    #[arg(long, value_enum, default_value_t = Generator::Oracle)]
    pub against: Generator,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub imst: ImstArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = Generator::Imst)]
    pub alg: Generator,
    #[arg(long)]
    pub gsop: bool,
    /// Comma-separated sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    #[command(flatten)]
    pub rule: RuleArgs,
    #[arg(long, default_value_t = 10)]
    pub repeats: usize,
    /// Seconds per size before the remaining repeats are skipped.
    #[arg(long, default_value_t = 60.0)]
    pub budget: f64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct MaxsizeArgs {
    #[arg(long, value_enum, default_value_t = Generator::Imst)]
    pub alg: Generator,
    #[arg(long)]
    pub gsop: bool,
    #[command(flatten)]
    pub rule: RuleArgs,
    #[arg(long, default_value_t = 1e-3)]
    pub e_max: f64,
    /// Seconds per trial.
    #[arg(long, default_value_t = 60.0)]
    pub budget: f64,
    #[arg(long, default_value_t = 4096)]
    pub ceiling: usize,
    #[arg(long, default_value_t = 2)]
    pub start: usize,
    #[arg(long, default_value_t = 8)]
    pub verify_window: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct RestrictArgs {
    #[arg(long, value_enum, default_value_t = Generator::Imst)]
    pub alg: Generator,
    #[command(flatten)]
    pub params: ParamArgs,
    #[arg(long)]
    pub rho: f64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ReconstructArgs {
    /// Input PGM image.
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    pub input: Option<PathBuf>,
    /// Random image of the given rows and columns.
    #[arg(long, num_args = 2, value_names = ["ROWS", "COLS"])]
    pub random: Option<Vec<usize>>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Generator::Imst)]
    pub alg: Generator,
    /// Lower bound of both lattices; each axis uses `b = a + size`.
    #[arg(long, default_value_t = 0.0)]
    pub a: f64,
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    /// Comma-separated order caps; defaults to the full order.
    #[arg(long, value_delimiter = ',')]
    pub orders: Vec<usize>,
    /// Image reconstructed from the largest requested order.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Metrics JSON path; standard output when absent.
    #[arg(long)]
    pub metrics: Option<PathBuf>,
    /// Natural logarithm in the PSNR instead of decibels.
    #[arg(long)]
    pub psnr_natural_log: bool,
}

impl ReconstructArgs {
    pub fn psnr_log(&self) -> PsnrLog {
        if self.psnr_natural_log {
            PsnrLog::Natural
        } else {
            PsnrLog::Base10
        }
    }
}

/// Runs one command and returns the process exit code.
pub fn run(cli: Cli) -> u8 {
    let result = match cli.command {
        Command::Gen(args) => commands::gen(&args),
        Command::Check(args) => commands::check(&args),
        Command::Compare(args) => commands::compare(&args),
        Command::Bench(args) => commands::bench(&args),
        Command::Maxsize(args) => commands::maxsize(&args),
        Command::Restrict(args) => commands::restrict(&args),
        Command::Reconstruct(args) => commands::reconstruct(&args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
