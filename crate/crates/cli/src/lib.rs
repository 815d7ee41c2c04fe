//! Batch front-end: argument parsing, run configuration, command
//! dispatch and report writing.

pub mod commands;
pub mod config;
pub mod identities;
pub mod output;

use std::process::ExitCode;

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    VerificationFailed,
    ConfigError,
    NumericalError,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::VerificationFailed => 1,
            Status::ConfigError => 2,
            Status::NumericalError => 3,
        }
    }

    /// The worse of two statuses.
    pub fn combine(self, other: Status) -> Status {
        if other.code() > self.code() {
            other
        } else {
            self
        }
    }
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s.code())
    }
}

/// Errors surfaced by a command, classified by exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: std::path::PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Engine(#[from] superharm::Error),
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Engine(e) if e.is_numerical() => Status::NumericalError,
            _ => Status::ConfigError,
        }
    }
}
