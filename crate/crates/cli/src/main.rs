//! `mdm`: construct, scan, verify and export certified counterexamples.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 bad input. Errors are
//! also printed to standard error as one JSON record.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mdm_core::freq::Mode;

#[derive(Parser, Debug)]
#[command(
    name = "mdm",
    version,
    about = "Certified Rudin-Shapiro counterexamples for mixed Euler derivatives"
)]
struct Cli {
    /// TOML config file (default: $MDM_CONFIG if set).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

/// Overrides for config-file settings.
#[derive(clap::Args, Debug, Default)]
pub struct CommonArgs {
    /// Grid order N for sup estimates (power of two).
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Fractional bits of the dyadic κ̂.
    #[arg(long, global = true)]
    kappa_bits: Option<u32>,
    /// Scheduler growth λ in the initial base 3^max(2, ⌈λn⌉).
    #[arg(long, global = true)]
    lambda: Option<f64>,
    /// Initial base, decimal or b^e.
    #[arg(long, global = true)]
    base: Option<String>,
    /// Largest base tried before giving up, decimal or b^e.
    #[arg(long, global = true)]
    max_base: Option<String>,
    /// Seed for spot-check points.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build, certify and write a counterexample bundle.
    Construct {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "standard")]
        mode: Mode,
        /// Output directory (default: the config's out_dir).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate bounds and c(n) over a range of n.
    Scan {
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        step: usize,
        /// Scalar quantities only; no polynomial is built.
        #[arg(long)]
        scalar_only: bool,
        /// CSV output path (default: standard output).
        #[arg(long)]
        csv: Option<PathBuf>,
        /// SVG plot of c(n) against the reference curve.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Re-verify a bundle from its files alone.
    Verify {
        /// Bundle file or the directory holding bundle.json.
        #[arg(long)]
        bundle: PathBuf,
    },
    /// Re-serialize a bundle canonically.
    Export {
        #[arg(long)]
        bundle: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    ExitCode::from(commands::run(
        cli.config.as_deref(),
        &cli.common,
        cli.command,
    ))
}
