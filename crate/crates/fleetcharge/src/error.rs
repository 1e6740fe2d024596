use std::io;
use std::path::PathBuf;

use fleetcharge_core::{ModelError, SolveError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
    #[error("schedule failed validation:\n{0}")]
    Validation(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn format(path: impl Into<PathBuf>, message: impl ToString) -> Self {
        CliError::Format {
            path: path.into(),
            message: message.to_string(),
        }
    }

    /// 0 success, 2 invalid input or schedule, 3 infeasible, 4 size guard, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Solve(SolveError::SizeGuard { .. }) => 4,
            CliError::Solve(
                SolveError::HorizonExceeded { .. } | SolveError::InfeasibleDemand { .. } | SolveError::InfeasibleInstance { .. },
            ) => 3,
            CliError::Solve(SolveError::Model(_)) | CliError::Model(_) | CliError::Format { .. } | CliError::Validation(_) => 2,
            CliError::Solve(_) | CliError::Io { .. } | CliError::Usage(_) => 1,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fleetcharge_core::TruckId;

    #[test]
    fn exit_codes() {
        let guard = SolveError::SizeGuard {
            what: "trucks",
            got: 9,
            limit: 8,
            detail: String::new(),
        };
        assert_eq!(CliError::from(guard).exit_code(), 4);
        let late = SolveError::HorizonExceeded {
            truck: TruckId(1),
            num_slots: 4,
        };
        assert_eq!(CliError::from(late).exit_code(), 3);
        assert_eq!(CliError::Validation(String::new()).exit_code(), 2);
        assert_eq!(CliError::from(ModelError::InvalidTimeline("x")).exit_code(), 2);
        assert_eq!(CliError::io("x", io::ErrorKind::NotFound.into()).exit_code(), 1);
    }
}
