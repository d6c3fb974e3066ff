//! `wahba`: check, solve, generate, cost and bench two-observation Wahba
//! instances.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 infeasible / not
//! similar, 3 numerical failure.

mod commands;
mod format;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use wahba_core::oracle::InstanceKind;

#[derive(Debug, Parser)]
#[command(name = "wahba", version, about = "Closed-form zero-cost attitudes for two vector observations")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Relative tolerance for every similarity and branch test.
    #[arg(long, global = true, env = "WAHBA_TOL", default_value_t = wahba_core::DEFAULT_TOL, value_parser = parse_tol)]
    pub tol: f64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Canonical,
    Family,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Generic,
    #[value(name = "antipodal_first", alias = "antipodal-first")]
    AntipodalFirst,
    #[value(name = "antipodal_cross", alias = "antipodal-cross")]
    AntipodalCross,
    Collinear,
}

impl From<KindArg> for InstanceKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Generic => InstanceKind::Generic,
            KindArg::AntipodalFirst => InstanceKind::AntipodalFirst,
            KindArg::AntipodalCross => InstanceKind::AntipodalCross,
            KindArg::Collinear => InstanceKind::Collinear,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report pairwise-similarity residuals and verdicts.
    Check {
        /// Instance file (JSON Lines); `-` reads stdin.
        input: PathBuf,
    },
    /// Solve every instance in closed form.
    Solve {
        /// Instance file (JSON Lines); `-` reads stdin.
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Emit::Canonical)]
        emit: Emit,
        /// Project non-similar inputs onto a similar configuration first.
        /// The output is marked as preconditioned.
        #[arg(long)]
        precondition: bool,
    },
    /// Evaluate the cost of a given quaternion on every instance.
    Cost {
        /// Instance file (JSON Lines); `-` reads stdin.
        input: PathBuf,
        /// Quaternion `w,x,y,z` (or `x,y,z` for a pure one).
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Time the closed-form solver against the eigendecomposition oracle.
    Bench {
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write seeded random instances.
    Generate {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = KindArg::Generic)]
        kind: KindArg,
    },
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if t.is_finite() && t > 0.0 {
        Ok(t)
    } else {
        Err("tolerance must be a positive finite number".into())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(commands::EXIT_USAGE),
            };
        }
    };
    let g = &cli.global;
    let code = match cli.command {
        Command::Check { input } => commands::check(&input, g),
        Command::Solve { input, emit, precondition } => commands::solve(&input, g, emit, precondition),
        Command::Cost { input, q } => commands::cost(&input, g, &q),
        Command::Bench { n, seed } => commands::bench(n as usize, seed, g),
        Command::Generate { n, seed, kind } => commands::generate(n, seed, kind.into(), g),
    };
    ExitCode::from(code)
}
