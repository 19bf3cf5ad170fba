//! `frenet` command-line tool: sample curves, involutes and indicatrices,
//! classify curves and run the verification suites.

pub mod commands;
pub mod config;
pub mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use frenet_core::GeometryError;
use thiserror::Error;

pub use commands::{run, Outcome};
pub use config::{Format, RunConfig, Settings};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Geometry(_) => 3,
            CliError::Io { .. } => 1,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Config(_) => "CONFIG",
            CliError::Geometry(e) => e.code(),
            CliError::Io { .. } => "IO",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "frenet",
    version,
    about = "Involutes and spherical indicatrices of space curves"
)]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Tangent,
    Normal,
    Binormal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Identities,
    Theorems,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Base,
    Involute,
    Tangent,
    Normal,
    Binormal,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frenet frame, curvature, torsion, f and Gamma of the base curve.
    Sample,
    /// The same columns for the involute on its working subdomain.
    Involute,
    /// A spherical indicatrix of the involute.
    Indicatrix {
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Planar / generalized helix / slant helix / circle verdicts.
    Classify {
        #[arg(long, value_enum, default_value = "base")]
        curve: Target,
    },
    /// Closed forms against the numeric oracle and theorem checks.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Key-value configuration file (flags take precedence).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// circle, helix, monterde, kula, derived or fourier.
    #[arg(long, global = true)]
    pub family: Option<String>,
    #[arg(long, global = true)]
    pub mu: Option<f64>,
    #[arg(long = "c-m", global = true)]
    pub c_m: Option<f64>,
    /// Involute constant c.
    #[arg(long = "c-inv", global = true)]
    pub c_inv: Option<f64>,
    /// Constant the `derived` helix is built from.
    #[arg(long = "c-derived", global = true)]
    pub c_derived: Option<f64>,
    #[arg(long, global = true)]
    pub radius: Option<f64>,
    #[arg(long, global = true)]
    pub a: Option<f64>,
    #[arg(long, global = true)]
    pub b: Option<f64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub lo: Option<f64>,
    #[arg(long, global = true)]
    pub hi: Option<f64>,
    /// Number of grid points.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Constancy and sphere tolerance for `classify`.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Output file (default: stdout).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
}

impl Flags {
    pub fn settings(&self) -> Settings {
        Settings {
            family: self.family.clone(),
            mu: self.mu,
            c_m: self.c_m,
            c_inv: self.c_inv,
            c_derived: self.c_derived,
            radius: self.radius,
            a: self.a,
            b: self.b,
            seed: self.seed,
            lo: self.lo,
            hi: self.hi,
            grid_n: self.n,
            tol: self.tol,
            out: self.out.clone(),
            format: self.format,
        }
    }

    /// Flags over the config file (if any).
    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let file = match &self.config {
            Some(path) => {
                let text =
                    std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
                Settings::from_text(&text)?
            }
            None => Settings::default(),
        };
        RunConfig::resolve(self.settings().over(file))
    }
}
