use std::path::PathBuf;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] sumrank::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("CSV output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("invalid arguments: {0}")]
    Usage(String),
    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
}

pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_RADIUS: i32 = 4;
pub const EXIT_VERIFY: i32 = 5;

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a str,
    message: String,
    exit_code: i32,
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> CliError {
        CliError::Io { path: path.into(), source }
    }

    fn kind(&self) -> (&'static str, i32) {
        use sumrank::Error as E;
        match self {
            CliError::Lib(E::BudgetExceeded { .. }) => ("budget_exceeded", EXIT_BUDGET),
            CliError::Lib(E::RadiusExceeded { .. }) => ("radius_exceeded", EXIT_RADIUS),
            CliError::Lib(E::VerificationFailed(_) | E::CrossCheckMismatch { .. }) => ("verification_failed", EXIT_VERIFY),
            CliError::Lib(_) => ("invalid_parameters", EXIT_INVALID),
            CliError::Usage(_) => ("invalid_parameters", EXIT_INVALID),
            CliError::Json(_) => ("invalid_input", EXIT_INVALID),
            CliError::ChecksFailed(_) => ("verification_failed", EXIT_VERIFY),
            CliError::Io { .. } | CliError::Csv(_) => ("io", EXIT_IO),
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.kind().1
    }

    /// One-line JSON for stderr.
    pub fn to_json(&self) -> String {
        let (error, exit_code) = self.kind();
        serde_json::to_string(&ErrorReport { error, message: self.to_string(), exit_code }).expect("serializable")
    }
}

pub type CliResult<T> = Result<T, CliError>;
