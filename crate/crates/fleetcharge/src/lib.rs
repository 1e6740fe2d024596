//! Instance files, run reports and the `fleetcharge` command line on top of
//! [`fleetcharge_core`].

use std::fs;
use std::path::Path;

pub mod clock;
pub mod commands;
pub mod error;
pub mod instance_file;
pub mod policy;
pub mod report;

pub use error::CliError;
pub use policy::{run_policy, Policy, RunOutcome};
pub use report::RunReport;

/// Writes `bytes` to `path`, creating missing parent directories.
pub fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
    }
    fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}
