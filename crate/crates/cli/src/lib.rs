//! Job descriptions, fixture loading and JSON reports for the `rbsd` binary.

pub mod fixtures;
pub mod job;
pub mod report;
pub mod run;

pub use fixtures::{Fixture, FixtureError, FixtureSet, Provenance, FIXTURES_ENV};
pub use job::{load_inputs, CurveRecord, FieldRecord, Inputs, JobKind, JobSpec};
pub use report::{Assumptions, Report, Status, VerdictContext, VerdictRecord, Witness};
pub use run::run_job;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("invalid field: {0}")]
    InvalidFieldSpec(String),
    #[error("{command} needs {what}")]
    MissingInput { command: &'static str, what: &'static str },
    #[error("{context}: {message}")]
    Job { context: String, message: String },
    #[error(transparent)]
    Fixture(#[from] FixtureError),
}

impl CliError {
    pub(crate) fn job(context: impl Into<String>, err: impl std::fmt::Display) -> Self {
        CliError::Job { context: context.into(), message: err.to_string() }
    }
}
