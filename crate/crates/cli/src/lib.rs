//! Command-line front end for `seqspace`.
//!
//! A run is: arguments → [`JobSpec`] → [`Report`] → JSON or CSV. The job
//! carries the contents of its input files, so `--save-job` followed by
//! `replay` reproduces a report exactly.

pub mod args;
pub mod codec;
pub mod commands;
pub mod error;
pub mod job;
pub mod report;
pub mod selftest;

use std::path::Path;

pub use args::Cli;
pub use error::CliError;
pub use job::JobSpec;
pub use report::{Report, Status};

/// Exit status of a completed run.
pub fn exit_code(report: &Report, strict: bool) -> u8 {
    match report.status {
        Status::Inconsistent => 4,
        Status::Indeterminate if strict => 3,
        _ => 0,
    }
}

/// Runs a job and writes its report; returns the exit status.
pub fn execute(job: &JobSpec) -> Result<u8, CliError> {
    let report = commands::run(job)?;
    let text = report.render(job.format)?;
    match &job.output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(Path::new(path), e))?,
        None => print!("{text}"),
    }
    let code = exit_code(&report, job.strict);
    if code != 0 {
        eprintln!("{}: status {}", job.command.name(), report.status.name());
    }
    Ok(code)
}
