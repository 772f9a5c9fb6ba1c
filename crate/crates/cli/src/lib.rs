//! Command-line front end for `csdiscord`: state validation, the Hadamard
//! transform, discord of single states and CSV sweeps over model families.

pub mod commands;
pub mod error;
pub mod model;

use std::io::Write;

use clap::{Parser, Subcommand};

pub use error::{CliError, CliResult};

#[derive(Parser, Debug)]
#[command(name = "csdiscord", version, about = "Quantum discord of two-qubit centrosymmetric states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a state file and classify its structure.
    Validate { path: std::path::PathBuf },
    /// Apply the local Hadamard transform to a state file.
    Transform(commands::TransformArgs),
    /// Write the density matrix of a model family.
    Generate(commands::GenerateArgs),
    /// Discord of one state, as a JSON record.
    Discord(commands::DiscordArgs),
    /// Discord along a parameter sweep, as CSV.
    Sweep(commands::SweepArgs),
}

pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Validate { path } => commands::validate(path, stdout),
        Command::Transform(args) => commands::transform(args, stdout),
        Command::Generate(args) => commands::generate(args, stdout),
        Command::Discord(args) => commands::discord(args, stdout),
        Command::Sweep(args) => commands::sweep(args, stdout, stderr),
    }
}
