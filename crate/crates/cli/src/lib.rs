//! Command-line front end for the qudit sorter simulator.
//!
//! Exit codes: 0 on success, 1 on a numerical failure, 2 on a usage or
//! validation error. Reports are written once, after the command succeeds.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod cascade;
pub mod commands;
pub mod config;
pub mod report;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad arguments or configuration; exit code 2.
    Usage(String),
    /// The numerics did not hold up (for instance probabilities not summing to one); exit code 1.
    Numerical(String),
    /// Output could not be written; exit code 1.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 2,
            Self::Numerical(_) | Self::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Usage(m) => write!(f, "error: {m}"),
            Self::Numerical(m) => write!(f, "numerical failure: {m}"),
            Self::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

#[derive(Debug, Parser)]
#[command(name = "qsorter", version, about = "Simulate and compile d-dimensional quantum sorters")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// JSON run configuration.
    #[arg(long)]
    pub config: PathBuf,
    /// Report path; overrides `output` in the config. Without either, the report goes to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report format; overrides `format` in the config.
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
    /// Record wall-clock time in the report (makes reports non-reproducible).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a sorter and report its sorting matrix and efficiency.
    Simulate(RunArgs),
    /// Monte-Carlo sweep over random per-arm phase errors.
    Sweep {
        #[command(flatten)]
        run: RunArgs,
        /// Comma-separated standard deviations in radians; overrides `sweep.sigmas`.
        #[arg(long, value_delimiter = ',')]
        sigmas: Option<Vec<f64>>,
        /// Trials per sigma; overrides `sweep.trials`.
        #[arg(long)]
        trials: Option<usize>,
        /// Generator seed; overrides `sweep.seed`.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Solve waveguide lengths for an arrayed-waveguide grating sorter.
    AwgDesign {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Number of wavelengths; defaults to the length of the wavelength list.
        #[arg(long)]
        d: Option<usize>,
        /// Comma-separated wavelengths.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        wavelengths: Option<Vec<f64>>,
        #[arg(long)]
        search_bound: Option<u32>,
    },
    /// Compile a unitary into a beamsplitter mesh.
    Decompose {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Named gate, e.g. `fourier:8`.
        #[arg(long, conflicts_with = "matrix")]
        gate: Option<String>,
        /// JSON file holding rows of `[re, im]` pairs.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Compare component counts with a cascade of two-way interferometers.
    CompareCascade {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        d: Option<usize>,
    },
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match commands::execute(cli.command) {
        Ok(stdout) => {
            print!("{stdout}");
            0
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
