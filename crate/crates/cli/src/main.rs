//! Experiment runner for the variational-ansatz workbench: each study is
//! a subcommand emitting seeded, reproducible CSV/JSON artifacts, and any
//! artifact can be re-executed from the manifest it embeds.

mod commands;
mod inputs;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use commands::{effdim, ist, noise, reduce, scaling, train};

#[derive(Parser)]
#[command(
    name = "dcqaoa",
    version,
    about = "Variational quantum-optimization workbench",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train ansatz circuits over a (family, depth) grid on one graph.
    Train(train::TrainArgs),
    /// Sweep critical depth across sizes and edge densities, with fits.
    Scaling(scaling::ScalingArgs),
    /// Matched-CNOT noiseless/noisy comparison on spin-glass instances.
    Noise(noise::NoiseArgs),
    /// Effective dimension (information-matrix rank) across depth.
    Effdim(effdim::EffdimArgs),
    /// Instance-sequential training with a resource comparison.
    Ist(ist::IstArgs),
    /// Encode CNF as a cut instance or a graph as CNF, with certification.
    Reduce(reduce::ReduceArgs),
    /// Re-execute a previous run from the manifest in one of its outputs.
    Rerun(RerunArgs),
}

#[derive(Debug, Args)]
struct RerunArgs {
    /// An artifact of the original run: a CSV with the trailing manifest
    /// line, a summary JSON, or a bare manifest JSON.
    #[arg(long, value_name = "FILE")]
    manifest: PathBuf,
    /// Redirect outputs to a different directory (default: the original
    /// run's --out).
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    match dispatch(cli.command, &argv) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(failed) => {
            eprintln!("{failed} cell(s) failed; completed cells were written");
            ExitCode::FAILURE
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

/// Runs one parsed command; returns the number of failed cells.
fn dispatch(command: Command, argv: &[String]) -> Result<usize> {
    match command {
        Command::Train(a) => train::run(&a, argv),
        Command::Scaling(a) => scaling::run(&a, argv),
        Command::Noise(a) => noise::run(&a, argv),
        Command::Effdim(a) => effdim::run(&a, argv),
        Command::Ist(a) => ist::run(&a, argv),
        Command::Reduce(a) => reduce::run(&a, argv),
        Command::Rerun(a) => rerun(&a),
    }
}

/// Reconstructs the stored argument vector and re-executes it. The rerun
/// records the original argv in its own manifests, so outputs match the
/// first run byte-for-byte except the timestamp.
fn rerun(a: &RerunArgs) -> Result<usize> {
    let stored = manifest::read_manifest(&a.manifest)?;
    let mut argv = stored.argv.clone();
    if argv.is_empty() {
        bail!("manifest in {} has an empty argv", a.manifest.display());
    }
    if argv[0] == "rerun" {
        bail!("refusing to rerun a rerun; point --manifest at the original artifact");
    }
    if let Some(dir) = &a.out {
        redirect_out(&mut argv, dir);
    }
    let cli = Cli::try_parse_from(std::iter::once("dcqaoa".to_string()).chain(argv.clone()))
        .with_context(|| format!("stored argv {argv:?} no longer parses"))?;
    dispatch(cli.command, &argv)
}

/// Replaces (or appends) the `--out` value in a stored argv.
fn redirect_out(argv: &mut Vec<String>, dir: &std::path::Path) {
    let dir = dir.to_string_lossy().into_owned();
    if let Some(i) = argv.iter().position(|t| t == "--out") {
        if i + 1 < argv.len() {
            argv[i + 1] = dir;
            return;
        }
        argv.truncate(i);
    }
    argv.push("--out".to_string());
    argv.push(dir);
}
