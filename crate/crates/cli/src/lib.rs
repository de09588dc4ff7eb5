//! File formats and subcommands behind the `taper` binary.
//!
//! Exit codes: 0 success, 1 verification failed, 2 bad input, 3 I/O error,
//! 4 problem too large for the dense oracle.

use std::path::PathBuf;

use thiserror::Error;

pub mod commands;
pub mod format;
pub mod report;

pub use format::{parse_hamiltonian, write_hamiltonian, FormatError};
pub use report::ReductionReport;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Capability(String),
    /// Verification ran but did not pass; carries the stdout text.
    #[error("verification failed")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Input(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Capability(_) => 4,
        }
    }
}
