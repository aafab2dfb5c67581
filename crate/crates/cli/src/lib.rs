//! Library side of the `tropopt` command: problem files, reports, the
//! oracle check and SVG figures.

pub mod commands;
pub mod number;
pub mod plot;
pub mod problem_file;
pub mod report;

pub use problem_file::{FileError, ProblemFile, ProblemType};

/// Exit status for an optimal solution or an agreeing verification.
pub const EXIT_OK: i32 = 0;
/// Exit status for an infeasible instance or a disagreeing verification.
pub const EXIT_NEGATIVE: i32 = 1;
/// Exit status for unreadable or invalid input.
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    File(#[from] FileError),
    #[error("{0}")]
    Core(#[from] tropopt_core::Error),
    #[error("{0}")]
    Unsupported(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}
