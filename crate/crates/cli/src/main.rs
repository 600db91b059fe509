//! Command-line front end for the svorigami library.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 invalid input, 3 an
//! experiment ran but its verdict failed.

mod commands;
mod input;

use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use svorigami::{AnalysisError, GeometryError, OrigamiError};

use commands::Status;
use input::Invalid;

#[derive(Parser, Debug)]
#[command(name = "svorigami", version, about = "Cylinder counts and Siegel-Veech experiments on square-tiled surfaces")]
struct Cli {
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Record wall-clock seconds in JSON reports
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the stratum and genus of each origami
    Stratum(commands::StratumArgs),
    /// List all origamis of a stratum for a range of square counts
    Generate(commands::GenerateArgs),
    /// SL(2,Z) orbit of an origami under retiling
    Orbit(commands::OrbitArgs),
    /// Cylinders or saddle connections up to a radius, as CSV
    Enumerate(commands::EnumerateArgs),
    /// N(X, R)
    Count(commands::CountArgs),
    /// Quadratic growth constant N(R)/R² with a least-squares companion
    Svc(commands::SvcArgs),
    /// Circle averages of ℓ^-(1+δ) along the geodesic flow and their fit
    Recurrence(commands::RecurrenceArgs),
    /// Doubling inequality and the uniform quadratic bound
    Doubling(commands::DoublingArgs),
    /// Growth constants of H(2) orbits against 10/π
    Converge(commands::ConvergeArgs),
}

fn run(cli: Cli) -> Result<Status> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(input::invalid("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
    }
    match &cli.command {
        Command::Stratum(a) => commands::stratum(a),
        Command::Generate(a) => commands::generate(a),
        Command::Orbit(a) => commands::orbit(a),
        Command::Enumerate(a) => commands::enumerate(a),
        Command::Count(a) => commands::count(a),
        Command::Svc(a) => commands::svc(a, cli.timing),
        Command::Recurrence(a) => commands::recurrence(a, cli.timing),
        Command::Doubling(a) => commands::doubling(a, cli.timing),
        Command::Converge(a) => commands::converge(a, cli.timing),
    }
}

fn geometry_input(e: &GeometryError) -> bool {
    !matches!(e, GeometryError::NonTermination { .. })
}

/// Errors caused by the arguments rather than by the computation.
fn is_validation(err: &anyhow::Error) -> bool {
    err.chain().any(|cause| {
        if cause.is::<Invalid>() || cause.is::<OrigamiError>() {
            return true;
        }
        if let Some(e) = cause.downcast_ref::<GeometryError>() {
            return geometry_input(e);
        }
        match cause.downcast_ref::<AnalysisError>() {
            Some(AnalysisError::InvalidParameter(_)) | Some(AnalysisError::InsufficientRadius { .. }) => true,
            Some(AnalysisError::Geometry(e)) => geometry_input(e),
            _ => false,
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_validation(&e) { 2 } else { 1 })
        }
    }
}
