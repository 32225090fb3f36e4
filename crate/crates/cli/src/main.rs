//! `hamcycle`: compile Hamiltonian-cycle instances to Ising models, inspect
//! their spectra and solve them with QAOA.

mod commands;
mod error;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hamcycle_qaoa::{MixerKind, NoiseModel};
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "hamcycle", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Compile a graph into a Pauli-Z term list.
    Compile,
    /// Exact spectrum of a graph or term list.
    Spectrum,
    /// Run QAOA and report the sampled distribution.
    Solve,
    /// Paired QAOA runs that differ in the mixer or the noise model.
    Compare,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Compile => "compile",
            Command::Spectrum => "spectrum",
            Command::Solve => "solve",
            Command::Compare => "compare",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Mixer,
    Noise,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Graph JSON file: {"n": 3, "edges": [[1, 2], ...]}.
    #[arg(long, global = true, value_name = "FILE", conflicts_with = "terms")]
    pub graph: Option<PathBuf>,
    /// Term-list JSON file, as written by `compile`.
    #[arg(long, global = true, value_name = "FILE")]
    pub terms: Option<PathBuf>,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// CSV table: spectrum levels, the sampled distribution, or the merged
    /// distributions of a comparison.
    #[arg(long, global = true, value_name = "FILE")]
    pub csv: Option<PathBuf>,
    /// CSV of every objective evaluation (`solve` only).
    #[arg(long, global = true, value_name = "FILE")]
    pub trace_csv: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 10_000)]
    pub shots: usize,
    /// Penalty weight A, an integer, fraction (`3/2`) or decimal.
    #[arg(long, global = true, default_value = "1")]
    pub weight: String,
    /// Factor applied to the compiled model. Defaults to 1 for `compile`
    /// and 2 otherwise, which turns the triangle into unit couplings.
    #[arg(long, global = true)]
    pub rescale: Option<String>,
    /// QAOA layers.
    #[arg(long, global = true, default_value_t = 2)]
    pub p: usize,
    #[arg(long, global = true, default_value_t = MixerKind::Rx)]
    pub mixer: MixerKind,
    /// Mixers compared by `compare --axis mixer`.
    #[arg(long, global = true, value_delimiter = ',', default_values_t = [MixerKind::Rx, MixerKind::Ry])]
    pub mixers: Vec<MixerKind>,
    /// Noise model, e.g. `p1=0.001,p2=0.01,ro=0.01`.
    #[arg(long, global = true)]
    pub noise: Option<NoiseModel>,
    /// Drop the identity term (default for spectrum, solve and compare).
    #[arg(long, global = true, conflicts_with = "keep_constant")]
    pub drop_constant: bool,
    /// Keep the identity term (default for compile).
    #[arg(long, global = true)]
    pub keep_constant: bool,
    /// Optimize the sampled mean energy instead of the exact expectation.
    #[arg(long, global = true)]
    pub sampled_objective: bool,
    /// Optimizer starts; the evaluation budget is shared between them.
    #[arg(long, global = true, default_value_t = 4)]
    pub restarts: usize,
    #[arg(long, global = true, default_value_t = 4000)]
    pub max_evals: usize,
    /// What `compare` varies.
    #[arg(long, global = true)]
    pub axis: Option<Axis>,
    /// Number of paired runs for `compare`, using seeds seed, seed+1, ...
    #[arg(long, global = true, default_value_t = 1)]
    pub runs: u64,
    /// For `compare --axis noise`: optimize again under noise instead of
    /// resampling the noiseless optimum.
    #[arg(long, global = true)]
    pub reoptimize: bool,
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let name = cli.command.name();
    match cli.command {
        Command::Compile => commands::compile(name, &cli.opts),
        Command::Spectrum => commands::spectrum(name, &cli.opts),
        Command::Solve => commands::solve(name, &cli.opts),
        Command::Compare => commands::compare(name, &cli.opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
