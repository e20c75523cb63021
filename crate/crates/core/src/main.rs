use std::path::PathBuf;
use std::process::ExitCode;

use bo_lab::runner::{exit_code, run_experiment, Kind, OUTPUT_ROOT_ENV};
use clap::{Parser, Subcommand};

/// Benjamin-Ono experiments driven by a TOML config file.
#[derive(Parser)]
#[command(version, about, after_help = format!("Relative output directories resolve against ${OUTPUT_ROOT_ENV} when set."))]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the solver and write a checkpoint and conservation ledger.
    Solve { config: PathBuf },
    /// Evaluate norms of a trajectory.
    Norms { config: PathBuf },
    /// Gauge transform residuals, norm equivalence and inverse round trip.
    GaugeCheck { config: PathBuf },
    /// Randomized estimate suites.
    Estimates { config: PathBuf },
    /// Flow-map Hölder exponents and persistence of regularity.
    FlowHolder { config: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let (kind, path) = match cli.command {
        Command::Solve { config } => (Kind::Solve, config),
        Command::Norms { config } => (Kind::Norms, config),
        Command::GaugeCheck { config } => (Kind::GaugeCheck, config),
        Command::Estimates { config } => (Kind::Estimates, config),
        Command::FlowHolder { config } => (Kind::FlowHolder, config),
    };
    match run_experiment(kind, &path, None) {
        Ok(summary) => {
            println!("{}: {} ({})", kind.name(), summary.manifest.status, summary.out_dir.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
