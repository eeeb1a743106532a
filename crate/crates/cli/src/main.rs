use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sensorwave_cli::commands;
use sensorwave_cli::{exit_code, Settings, EXIT_USAGE};

#[derive(Parser)]
#[command(name = "sensorwave", version, about = "Wavelet activity models and anomaly detection for smart-home sensors")]
struct Cli {
    /// JSON file with default values for any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load a JSON-lines export or generate the synthetic corpus.
    Ingest(Settings),
    /// Fit wavelet or FreMEn models on the training fold.
    Train(Settings),
    /// Forecast a fold from trained models.
    Forecast(Settings),
    /// Normalized-entropy stream, optionally paired with forecast entropy.
    Entropy(Settings),
    /// Run one anomaly detector over an entropy stream.
    Detect(Settings),
    /// Forecast metrics or entropy similarity.
    Evaluate(Settings),
    /// Agreement matrix and majority-vote ranking of detection runs.
    Compare(Settings),
    /// The full chain, ingest to compare.
    Run(Settings),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE as u8) } else { ExitCode::SUCCESS };
        }
    };
    match dispatch(cli) {
        Ok(out) => {
            println!("{}", out.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}

fn dispatch(cli: Cli) -> anyhow::Result<PathBuf> {
    let base = match &cli.config {
        Some(path) => Settings::load(path)?,
        None => Settings::default(),
    };
    let (f, flags): (fn(&Settings) -> anyhow::Result<PathBuf>, Settings) = match cli.command {
        Command::Ingest(s) => (commands::cmd_ingest, s),
        Command::Train(s) => (commands::cmd_train, s),
        Command::Forecast(s) => (commands::cmd_forecast, s),
        Command::Entropy(s) => (commands::cmd_entropy, s),
        Command::Detect(s) => (commands::cmd_detect, s),
        Command::Evaluate(s) => (commands::cmd_evaluate, s),
        Command::Compare(s) => (commands::cmd_compare, s),
        Command::Run(s) => (commands::cmd_run, s),
    };
    f(&flags.over(base))
}
