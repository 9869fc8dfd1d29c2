//! `xhermite` — exceptional Hermite families from integer partitions.
//!
//! Exit status: 0 when every reported check passes, 1 when a report
//! contains FAIL lines or the input is structurally inadmissible (odd
//! partition where orthogonality is required, infeasible gap set), 2 for
//! malformed invocations.

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use xhermite_cli::commands::{
    cmd_chain, cmd_family, cmd_gaps, cmd_gram, cmd_verify, CommandOutput,
};
use xhermite_cli::config::{ConfigError, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(
    name = "xhermite",
    version,
    about = "Exceptional Hermite polynomial families indexed by integer partitions: \
             exact construction, operator-identity verification, factorization \
             chains, gap-set inversion, and numerical orthogonality checks."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Partition as comma-separated non-increasing parts, e.g. "2,2" (empty = classical)
    #[arg(long, default_value = "", allow_hyphen_values = false)]
    partition: String,

    /// Largest polynomial degree to include [default: lambda_1 + N + 8]
    #[arg(long)]
    cutoff: Option<usize>,

    /// Starting Gauss-Hermite order for numerical checks (raised automatically until converged)
    #[arg(long, default_value_t = 60)]
    quad_order: usize,

    /// Report format
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    format: OutputFormat,

    /// Seed for the randomized identity probes
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Write the report to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print eta and the exceptional family up to the degree cutoff
    Family(CommonArgs),

    /// Run the exact identity checks and print one PASS/FAIL line per check
    Verify {
        #[command(flatten)]
        common: CommonArgs,

        /// Corrupt one polynomial on purpose to demonstrate failure reporting
        #[arg(long)]
        inject_fault: bool,
    },

    /// Walk the descending factorization chain: levels, spectra, removal rule
    Chain(CommonArgs),

    /// Invert a gap set into a partition, or explain why none exists
    Gaps {
        /// Gap set as comma-separated distinct non-negative integers, e.g. "0,1,4,5"
        #[arg(long)]
        gapset: String,

        /// Report format
        #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
        format: OutputFormat,

        /// Write the report to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Numerically estimate the Gram matrix and compare with the closed-form norms
    Gram(CommonArgs),
}

enum RunError {
    /// Malformed invocation: exit 2.
    Usage(String),
    /// Structurally inadmissible input: exit 1.
    Domain(String),
}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Usage(e.0)
    }
}

impl From<xhermite::Error> for RunError {
    fn from(e: xhermite::Error) -> Self {
        RunError::Domain(e.to_string())
    }
}

fn build_config(common: &CommonArgs) -> Result<RunConfig, ConfigError> {
    RunConfig::new(
        &common.partition,
        common.cutoff,
        common.quad_order,
        common.format,
        common.seed,
    )
}

fn parse_gapset(text: &str) -> Result<Vec<usize>, RunError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| RunError::Usage(format!("--gapset: invalid entry '{}'", t.trim())))
        })
        .collect()
}

fn run(cli: Cli) -> Result<(Option<PathBuf>, CommandOutput), RunError> {
    match cli.command {
        Command::Family(common) => {
            let cfg = build_config(&common)?;
            Ok((common.out, cmd_family(&cfg)?))
        }
        Command::Verify {
            common,
            inject_fault,
        } => {
            let cfg = build_config(&common)?;
            Ok((common.out, cmd_verify(&cfg, inject_fault)?))
        }
        Command::Chain(common) => {
            let cfg = build_config(&common)?;
            Ok((common.out, cmd_chain(&cfg)?))
        }
        Command::Gaps {
            gapset,
            format,
            out,
        } => {
            let set = parse_gapset(&gapset)?;
            Ok((out, cmd_gaps(&set, format)?))
        }
        Command::Gram(common) => {
            let cfg = build_config(&common)?;
            Ok((common.out, cmd_gram(&cfg)?))
        }
    }
}

fn deliver(out: Option<PathBuf>, result: CommandOutput) -> ExitCode {
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, result.stdout.as_bytes()) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", result.stdout),
    }
    if result.failures > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, result)) => deliver(out, result),
        Err(RunError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(RunError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
