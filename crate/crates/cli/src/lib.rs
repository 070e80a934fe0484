//! Command-line front end: `trace`, `weld` and `diagnose`.

pub mod args;
pub mod commands;
pub mod report;
pub mod settings;
pub mod spec;
pub mod svg;

use std::process::ExitCode;

pub use args::Cli;

/// Exit codes shared by every command.
pub mod exit {
    pub const OK: u8 = 0;
    pub const IO: u8 = 1;
    pub const INVALID: u8 = 2;
    pub const RESOLUTION: u8 = 3;
    pub const NOT_WELDED: u8 = 4;
    pub const INCONCLUSIVE: u8 = 5;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] loewner::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn code(&self) -> u8 {
        use loewner::Error as E;
        match self {
            CliError::Invalid(_) => exit::INVALID,
            CliError::Io { .. } => exit::IO,
            CliError::Core(e) => match e {
                E::Domain { .. } | E::Parameter(_) | E::Construction { .. } | E::Format(_) => exit::INVALID,
                _ => exit::RESOLUTION,
            },
        }
    }
}

/// Run a parsed command line, reporting errors on stderr.
pub fn run(cli: Cli) -> ExitCode {
    match commands::dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
