//! `z2square` command-line front end.
//!
//! Every run prints (or writes to `--out`) one JSON report holding the tool
//! version, the effective configuration, the hypothesis checks and the
//! result. Exit codes: 0 success, 2 unreadable input, 3 inconclusive at the
//! chosen resolution, 4 a hypothesis of the check fails.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "z2square", version, about = "Mod-2 homology, symmetric squares and Borsuk-Ulam solution sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunConfig,
}

#[derive(Subcommand, Debug, Clone, Copy, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Relative mod-2 homology of a simplicial pair.
    Homology,
    /// H-essentiality of a simplicial map of pairs.
    Essential,
    /// Symmetric square of a homology class.
    Symsquare,
    /// Solution set of a sampled family and its spanning check.
    BuSolve,
    /// Chords of a planar region and the spanning check over the region.
    Chords,
    /// Γ constructions on a finite correspondence instance.
    Corr,
}

#[derive(ValueEnum, Debug, Clone, Copy, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Feature {
    /// Two-sphere fibres (cube-surface model) for CSV families.
    N2,
}

#[derive(clap::Args, Debug, Clone, Serialize)]
pub struct RunConfig {
    /// Input file (JSON; `bu-solve` also reads CSV).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Report destination; stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Resolution override: subdivisions before squaring (`symsquare`),
    /// sphere resolution for CSV input (`bu-solve`), directions (`chords`),
    /// strategy lattice (`corr`).
    #[arg(long, global = true)]
    pub res: Option<usize>,
    /// Tolerance override (`bu-solve`, `chords`).
    #[arg(long, global = true)]
    pub eps: Option<f64>,
    /// Seed for the random pair `homology` generates without `--input`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub feature: Option<Feature>,
    /// Also write an SVG figure (`bu-solve`, `chords`).
    #[arg(long, global = true)]
    pub svg: Option<PathBuf>,
    /// Parameter space for CSV families, as JSON (`{"kind":"circle","res":64}`).
    #[arg(long = "w-model", global = true)]
    pub w_model: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match report::run(cli.command, &cli.config) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
