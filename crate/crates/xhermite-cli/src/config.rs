//! Run configuration shared by the subcommands: partition, degree cutoff,
//! quadrature order, output format, and the seed for randomized probes.

use clap::ValueEnum;
use xhermite::partitions::Partition;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    Json,
    Csv,
}

/// Validated configuration. `cutoff` always satisfies cutoff ≥ λ₁ + N and
/// `quad_order` ≥ 1; construction rejects anything else.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub partition: Partition,
    pub cutoff: usize,
    pub quad_order: usize,
    pub format: OutputFormat,
    pub seed: u64,
}

/// A configuration problem is a usage error: the caller maps it to the
/// usage exit status, distinct from verification failures.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for ConfigError {}

impl RunConfig {
    pub fn new(
        partition_text: &str,
        cutoff: Option<usize>,
        quad_order: usize,
        format: OutputFormat,
        seed: u64,
    ) -> Result<Self, ConfigError> {
        let partition = Partition::from_text(partition_text)
            .map_err(|e| ConfigError(format!("--partition: {e}")))?;
        let floor = partition.first_part() + partition.n();
        let cutoff = cutoff.unwrap_or(floor + 8);
        if cutoff < floor {
            return Err(ConfigError(format!(
                "--cutoff {cutoff} is below the minimum {floor} (= lambda_1 + N) for partition {partition}"
            )));
        }
        if quad_order < 1 {
            return Err(ConfigError("--quad-order must be at least 1".into()));
        }
        Ok(RunConfig {
            partition,
            cutoff,
            quad_order,
            format,
            seed,
        })
    }
}
