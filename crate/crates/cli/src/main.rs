//! `faultsvm` — dataset generation, training, evaluation, hyperparameter
//! sweeps and single-record classification for the LS-SVM fault
//! classification toolkit.
//!
//! Exit codes: 0 success; 2 I/O or input format errors; 3 numerical or
//! training errors; 4 classification produced an invalid module code.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;
mod csvio;
mod report;

/// Error with the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn io(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<faultsvm::Error> for CliError {
    fn from(err: faultsvm::Error) -> Self {
        use faultsvm::Error::*;
        let code = match err {
            DimensionMismatch { .. } | Numerical { .. } | DegenerateTargets { .. }
            | GridSearchFailed => 3,
            InvalidInput(_) | ModelFormat(_) | Io(_) => 2,
        };
        CliError {
            code,
            message: err.to_string(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "faultsvm",
    about = "LS-SVM fault classification for series-compensated lines",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a labelled dataset (feature CSV + scenario CSV).
    Generate(GenerateArgs),
    /// Train the five-module classifier on a feature CSV.
    Train(TrainArgs),
    /// Evaluate a trained model against a labelled feature CSV.
    Evaluate(EvaluateArgs),
    /// Cross-validation accuracy over a (gamma, sigma2) grid, as CSV.
    Sweep(SweepArgs),
    /// Classify a single record file.
    Classify(ClassifyArgs),
}

#[derive(Args)]
pub struct GenerateArgs {
    /// Flat key=value configuration file; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Built-in scenario protocol: `train` (208 records) or `test` (916).
    #[arg(long)]
    pub preset: Option<String>,
    /// Feature CSV output path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Scenario CSV output path (default: `<out>.scenarios.csv`).
    #[arg(long)]
    pub scenario_out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Signal-to-noise ratio in dB, or `inf` for noise-free records.
    #[arg(long)]
    pub snr_db: Option<String>,
    /// Post-fault cycles per record.
    #[arg(long)]
    pub duration_cycles: Option<usize>,
    /// Comma-separated fault types (e.g. `R-G,RY,RYB-G`).
    #[arg(long, conflicts_with = "preset")]
    pub fault_types: Option<String>,
    /// Comma-separated fault locations, percent of line length.
    #[arg(long, conflicts_with = "preset")]
    pub locations: Option<String>,
    /// Comma-separated fault resistances, ohms.
    #[arg(long, conflicts_with = "preset")]
    pub resistances: Option<String>,
    /// Comma-separated inception angles, degrees.
    #[arg(long, conflicts_with = "preset")]
    pub inception_angles: Option<String>,
    /// Comma-separated compensation levels, percent.
    #[arg(long, conflicts_with = "preset")]
    pub compensations: Option<String>,
    /// Load angle for fault rows, degrees.
    #[arg(long, conflicts_with = "preset")]
    pub load_angle: Option<f64>,
    /// Load angles for extra no-fault rows.
    #[arg(long, conflicts_with = "preset")]
    pub none_load_angles: Option<String>,
    /// Locations for extra no-fault rows (sets their section label).
    #[arg(long, conflicts_with = "preset")]
    pub none_locations: Option<String>,
}

#[derive(Args)]
pub struct TrainArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Labelled feature CSV to train on.
    #[arg(long)]
    pub dataset: Option<PathBuf>,
    /// Model file output path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Kernel family: rbf (default), linear, poly or mlp.
    #[arg(long)]
    pub kernel: Option<String>,
    /// Fixed regularization weight; together with the kernel parameter this
    /// skips grid search.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Fixed RBF width (required with --gamma for the rbf kernel).
    #[arg(long)]
    pub sigma2: Option<f64>,
    /// Polynomial degree for fixed poly training.
    #[arg(long)]
    pub degree: Option<u32>,
    /// Polynomial offset.
    #[arg(long)]
    pub offset: Option<f64>,
    /// Sigmoid kernel slope.
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Sigmoid kernel offset.
    #[arg(long)]
    pub theta: Option<f64>,
    /// Cross-validation folds for grid search.
    #[arg(long)]
    pub folds: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Grid-search gamma axis, comma separated.
    #[arg(long)]
    pub gammas: Option<String>,
    /// Grid-search sigma2 axis, comma separated.
    #[arg(long)]
    pub sigma2s: Option<String>,
    /// Grid-search polynomial degree axis, comma separated.
    #[arg(long)]
    pub degrees: Option<String>,
}

#[derive(Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub model: Option<PathBuf>,
    #[arg(long)]
    pub dataset: Option<PathBuf>,
    /// Also write the text report to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the machine-readable report CSV to this file.
    #[arg(long)]
    pub csv_out: Option<PathBuf>,
}

#[derive(Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub dataset: Option<PathBuf>,
    /// Sweep CSV output path.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Module to sweep: r, y, b, g, section or all.
    #[arg(long)]
    pub module: Option<String>,
    #[arg(long)]
    pub gammas: Option<String>,
    #[arg(long)]
    pub sigma2s: Option<String>,
    #[arg(long)]
    pub folds: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args)]
pub struct ClassifyArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Single-record CSV: a feature-CSV header plus exactly one data row.
    #[arg(long)]
    pub record: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(args) => commands::cmd_generate(args),
        Command::Train(args) => commands::cmd_train(args),
        Command::Evaluate(args) => commands::cmd_evaluate(args),
        Command::Sweep(args) => commands::cmd_sweep(args),
        Command::Classify(args) => commands::cmd_classify(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}
