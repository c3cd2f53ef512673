// Copyright 2026 The zeno-toolkit Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

#[derive(Debug, Parser)]
#[command(
    name = "zeno",
    version,
    about = "Survival probabilities of a qubit alternating free evolution and decoherence"
)]
pub struct Cli {
    /// JSON file with parameter values; flags given on the command line win.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Output format [default: csv]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write to this file instead of standard output.
    #[arg(long, short, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact and second-order survival probability of one run, step by step.
    Simulate(SimulateArgs),
    /// Asymptotic regime of a schedule family, analytic and numeric.
    Classify(ClassifyArgs),
    /// Evaluate a grid over one or two parameters.
    Sweep(SweepArgs),
    /// Derived quantities of the physical decoherence models.
    Physical(PhysicalArgs),
    /// Decoherence and revival of a qubit against a pre-entangled environment.
    Recohere,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScheduleKind {
    Constant,
    PowerLaw,
    Exponential,
    Explicit,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ScheduleArgs {
    /// Decoherence schedule family [default: constant]
    #[arg(long, value_enum)]
    pub schedule: Option<ScheduleKind>,
    /// Overlap of a constant schedule [default: 1]
    #[arg(long, allow_negative_numbers = true)]
    pub eta: Option<f64>,
    /// α of the power-law / exponential families
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// β of the power-law / exponential families
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// Rabi frequency ω (V = ω²) [default: 1]
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    /// Total time T [default: 1]
    #[arg(long = "time", short = 'T', allow_negative_numbers = true)]
    pub time: Option<f64>,
    /// Number of steps n [default: 100]
    #[arg(long, short = 'n')]
    pub steps: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub schedule: ScheduleArgs,
    /// Cross-check with the exhaustive branch sum (n ≤ 20).
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub schedule: ScheduleArgs,
    /// Largest n of the numeric probe grid [default: 1048576]
    #[arg(long)]
    pub n_max: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[command(flatten)]
    pub schedule: ScheduleArgs,
    /// Grid axis as NAME=VALUES, NAME in {n, eta, alpha, beta, omega, T};
    /// VALUES is `a,b,c`, `start:step:stop` or `2^lo..2^hi`. At most two.
    #[arg(long = "grid", value_name = "NAME=VALUES")]
    pub grid: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    FreeParticle,
    GaussianPointer,
    Brownian,
}

#[derive(Debug, Clone, Args)]
pub struct PhysicalArgs {
    /// Which physical model to evaluate.
    #[arg(value_enum)]
    pub model: Option<Model>,
    /// Particle mass m in kg (free-particle)
    #[arg(long, allow_negative_numbers = true)]
    pub mass: Option<f64>,
    /// Packet width σ (free-particle: m; gaussian-pointer: same length unit as v·T)
    #[arg(long, allow_negative_numbers = true)]
    pub sigma: Option<f64>,
    /// ħ in J·s (free-particle) [default: CODATA value]
    #[arg(long, allow_negative_numbers = true)]
    pub hbar: Option<f64>,
    /// Coupling velocity v (gaussian-pointer)
    #[arg(long, allow_negative_numbers = true)]
    pub v: Option<f64>,
    /// Interaction-time ratio c (gaussian-pointer) [default: 1]
    #[arg(long, allow_negative_numbers = true)]
    pub c_ratio: Option<f64>,
    /// Diffusion constant D (brownian)
    #[arg(long, allow_negative_numbers = true)]
    pub diffusion: Option<f64>,
    #[command(flatten)]
    pub run: RunArgs,
}
