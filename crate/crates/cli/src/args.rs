use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "loewner", version, about = "Trace, weld and diagnose chordal Loewner hulls")]
pub struct Cli {
    /// TOML settings file; `./loewner.toml` is used when present.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Trace the hull curve and write CSV and/or SVG.
    Trace {
        #[command(flatten)]
        common: Common,
        /// Output file, repeatable; `.svg` renders a plot, anything else CSV.
        #[arg(long)]
        out: Vec<PathBuf>,
    },
    /// Compute the welding map and the weldedness verdict.
    Weld {
        #[command(flatten)]
        common: Common,
        /// Number of welding pairs.
        #[arg(long)]
        pairs: Option<usize>,
        /// Welding map CSV (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Weld check report JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run every diagnostic and print one JSON report.
    Diagnose {
        #[command(flatten)]
        common: Common,
        /// Report file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RefinementArg {
    Uniform,
    DyadicAdaptive,
}

/// Driver and solver options shared by all commands.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Driver: `const:u=0`, `sqrt:c=2`, `backsqrt:c=5`, `theorem14:C=5`,
    /// `example32:C=5`, `file:driver.csv` or a JSON descriptor path.
    pub driver: String,
    /// Horizon T.
    #[arg(long = "T")]
    pub horizon: Option<f64>,
    /// Base time step.
    #[arg(long)]
    pub dt: Option<f64>,
    /// Cap on |ΔU|/√Δt per step.
    #[arg(long)]
    pub kappa: Option<f64>,
    #[arg(long, value_enum)]
    pub refinement: Option<RefinementArg>,
    /// Height above the driver at which trace points are seeded.
    #[arg(long)]
    pub tip_offset: Option<f64>,
    /// Far-field radius for capacity estimates.
    #[arg(long)]
    pub radius: Option<f64>,
    /// Maximum number of traced points.
    #[arg(long)]
    pub points: Option<usize>,
}
