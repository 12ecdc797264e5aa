//! Command-line harness: configuration, subcommands and stamped output files.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use dimension::Source;
use serde_json::Value;

pub use commands::DimensionMethod;
pub use config::{RunConfig, DEFAULT_CFG};
pub use error::CliError;
pub use output::{Header, Output};

#[derive(Debug, Parser)]
#[command(name = "cuspdim", version, about = "Schottky group with a cusp: codes, criterion, rays and dimension probes")]
pub struct Cli {
    /// Key-value config file laid over the built-in defaults.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Overrides the config seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads; 1 is the serial reference mode, 0 uses every core.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the ping-pong configuration and report the geometry constants.
    Validate,
    /// Classify a code and locate its limit point.
    Code {
        #[arg(long)]
        spec: String,
        /// Power blocks to inspect.
        #[arg(long)]
        blocks: Option<usize>,
    },
    /// Criterion tables and the diverging-on-average verdict.
    Criterion {
        #[arg(long)]
        spec: String,
        /// Cut-offs, comma separated.
        #[arg(long = "N", value_delimiter = ',')]
        cutoffs: Option<Vec<u64>>,
        #[arg(long)]
        qmax: Option<usize>,
    },
    /// Follow the geodesic ray from the base point to the limit point of a code.
    Trace {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        horizon: Option<f64>,
        /// Horocycle level k of the cusp.
        #[arg(long)]
        level: Option<f64>,
    },
    /// Cusp excursions of the ray and their horocycle sandwich.
    Excursion {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        horizon: Option<f64>,
        #[arg(long)]
        level: Option<f64>,
    },
    /// Dimension probes.
    Dimension {
        #[arg(long, value_enum, default_value = "series")]
        method: DimensionMethod,
        /// Word source for the series: parabolic, full, gamma-e or trivial.
        #[arg(long, default_value = "parabolic")]
        source: Source,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Code { .. } => "code",
            Command::Criterion { .. } => "criterion",
            Command::Trace { .. } => "trace",
            Command::Excursion { .. } => "excursion",
            Command::Dimension { .. } => "dimension",
        }
    }
}

/// The effective config: file or defaults, then command-line overrides.
pub fn effective_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(threads) = cli.threads {
        config.threads = threads;
    }
    if let Some(out) = &cli.out {
        config.output_dir = out.clone();
    }
    Ok(config)
}

/// Runs one subcommand; the files written are listed in the returned output.
pub fn run(cli: &Cli, command_line: &str) -> Result<(Value, Output), CliError> {
    let config = effective_config(cli)?;
    let mut out = Output::new(&config.output_dir, Header::new(&config, command_line))?;
    let result = match &cli.command {
        Command::Validate => commands::validate(&config, &mut out),
        Command::Code { spec, blocks } => commands::code(&config, spec, *blocks, &mut out),
        Command::Criterion { spec, cutoffs, qmax } => {
            commands::criterion(&config, spec, cutoffs.clone(), *qmax, &mut out)
        }
        Command::Trace { spec, horizon, level } => commands::trace(&config, spec, *horizon, *level, &mut out),
        Command::Excursion { spec, horizon, level } => commands::excursion(&config, spec, *horizon, *level, &mut out),
        Command::Dimension { method, source } => commands::dimension(&config, *method, *source, &mut out),
    }?;
    Ok((result, out))
}
