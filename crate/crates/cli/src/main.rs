//! `pinlab`: reproducible experiments over the pinlab library.
//!
//! Exit codes: 0 success, 1 a reported quantity is outside its tolerance,
//! 2 usage or configuration error, 3 numerical precondition failure.

mod commands;
mod config;
mod output;
mod spec;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "pinlab",
    version,
    about = "Spherical means, extension operators and pinned distance measures"
)]
struct Cli {
    /// JSON config; either flat or keyed by subcommand. Flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, env = "PINLAB_OUT", default_value = ".")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Both sides of the spherical-mean/extension L² identity.
    Identity(IdentityFlags),
    /// Mattila integral of a measure or density.
    Mattila(MattilaFlags),
    /// Smoothed pinned distance density.
    Pinned(PinnedFlags),
    /// Power-law decay fit of spherical averages of a measure's transform.
    Decay(DecayFlags),
    /// Dimension thresholds and exceptional-set bounds.
    Thresholds(ThresholdFlags),
    /// Occupied-cell estimate of a chain set's measure.
    Chains(ChainFlags),
    /// Rotation-averaged correlation functional against the Mattila integral.
    Appendix(AppendixFlags),
    /// Empirical Frostman constant.
    Frostman(FrostmanFlags),
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Tolerance(String),
    Numerical(pinlab::Error),
}

impl From<pinlab::Error> for CliError {
    fn from(e: pinlab::Error) -> Self {
        match e {
            pinlab::Error::Domain(m) => CliError::Usage(m),
            pinlab::Error::UnsupportedDimension { d, reason } => {
                CliError::Usage(format!("unsupported dimension d = {d}: {reason}"))
            }
            other => CliError::Numerical(other),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Numerical(e.into())
    }
}

#[derive(Args, Serialize)]
pub struct IdentityFlags {
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    /// gaussian | shifted-gaussian | two-bump
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    /// Evaluation point, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<f64>>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rmax: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radial_nodes: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sphere_res: Option<usize>,
    /// Tolerance on rel_err for non-gaussian inputs.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gaussian_tol: Option<f64>,
    /// Run every d ∈ {2, 3}, every function and x ∈ {0, off-centre}.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<bool>,
    /// Also compare the wave-side energy scaled by the frozen constant.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wave: Option<bool>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wave_tol: Option<f64>,
    /// Pin measure for the weighted norm, e.g. `circle:n=32`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
}

#[derive(Args, Serialize)]
pub struct MattilaFlags {
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measure: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rmax: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radial_nodes: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sphere_res: Option<usize>,
    /// Expected value; with it the exit code checks `|M - expect| ≤ tol`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expect: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

#[derive(Args, Serialize)]
pub struct PinnedFlags {
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measure: Option<String>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<f64>>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bandwidth: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
    /// `a,b`: also report `∫_a^b ν_x²`.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval: Option<Vec<f64>>,
}

#[derive(Args, Serialize)]
pub struct DecayFlags {
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measure: Option<String>,
    /// `r_lo,r_hi`
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<Vec<f64>>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub averaging: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sphere_res: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_residual: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expect: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

#[derive(Args, Serialize)]
pub struct ThresholdFlags {
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    /// Dimension of `E` for the exceptional-set bounds; defaults to `(d+1)/2`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_e: Option<f64>,
}

#[derive(Args, Serialize)]
pub struct ChainFlags {
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measure: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// One or more sample counts, comma separated.
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<usize>>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cell: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Expected volume; with it the exit code checks the relative error.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expect: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

#[derive(Args, Serialize)]
pub struct AppendixFlags {
    /// gaussian | bump | two-bump
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angles: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rmax: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radial_nodes: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sphere_res: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

#[derive(Args, Serialize)]
pub struct FrostmanFlags {
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measure: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub centers: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radii: Option<Vec<f64>>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Upper bound on the constant; with it the exit code checks it.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_constant: Option<f64>,
}

/// Parse `args` and run the command; returns the exit code and the error text.
fn run<I, T>(args: I) -> (u8, Option<String>)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return (0, None);
        }
        Err(e) => return (2, Some(e.render().to_string())),
    };
    let cfg = cli.config.as_deref();
    let out = output::Output::new(cli.out);
    let result = match &cli.command {
        Command::Identity(f) => commands::identity(cfg, f, &out),
        Command::Mattila(f) => commands::mattila(cfg, f, &out),
        Command::Pinned(f) => commands::pinned(cfg, f, &out),
        Command::Decay(f) => commands::decay(cfg, f, &out),
        Command::Thresholds(f) => commands::thresholds(cfg, f, &out),
        Command::Chains(f) => commands::chains(cfg, f, &out),
        Command::Appendix(f) => commands::appendix(cfg, f, &out),
        Command::Frostman(f) => commands::frostman(cfg, f, &out),
    };
    match result {
        Ok(()) => (0, None),
        Err(CliError::Tolerance(m)) => (1, Some(format!("tolerance failure: {m}"))),
        Err(CliError::Usage(m)) => (2, Some(format!("error: {m}"))),
        Err(CliError::Numerical(e)) => (3, Some(format!("error: {e}"))),
    }
}

fn main() -> ExitCode {
    let (code, message) = run(std::env::args_os());
    if let Some(m) = message {
        eprintln!("{}", m.trim_end());
    }
    ExitCode::from(code)
}

#[cfg(test)]
mod tests;
