use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sealink::cli::{self, CliError};
use sealink::ArchitectureKind;

/// Link budget and payload power trade-off for UAV-carried base stations and
/// remote radio heads over the sea.
#[derive(Parser)]
#[command(name = "sealink", version, about)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a scenario file and report every problem found.
    Validate { file: PathBuf },
    /// Budget one architecture at one distance from shore.
    Budget {
        file: PathBuf,
        /// fly-bs or fly-rrh
        #[arg(long)]
        arch: ArchitectureKind,
        #[arg(long = "distance-km", allow_negative_numbers = true)]
        distance_km: f64,
    },
    /// Sweep the scenario's distance grid and write a CSV.
    Sweep {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Plot a sweep CSV as SVG.
    Plot {
        csv: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(args: Args) -> Result<(), CliError> {
    match args.command {
        Command::Validate { file } => println!("{}", cli::cmd_validate(&file)?),
        Command::Budget {
            file,
            arch,
            distance_km,
        } => print!("{}", cli::cmd_budget(&file, arch, distance_km)?),
        Command::Sweep { file, out } => print!("{}", cli::cmd_sweep(&file, &out)?),
        Command::Plot { csv, out } => cli::cmd_plot(&csv, &out)?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
