//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum TntcError {
    /// A record in a dataset file failed validation.
    #[error("parse error in sample `{id}`: {reason}")]
    Parse { id: String, reason: String },

    /// Dataset-wide schema problem (inconsistent joint counts, bad magic, ...).
    #[error("schema error: {0}")]
    Schema(String),

    /// A precondition of an operation was violated by the caller.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Invalid configuration value.
    #[error("invalid config: {0}")]
    Config(String),

    /// Stratified splitting is infeasible for the given data.
    #[error("stratification error: {0}")]
    Stratification(String),

    /// Training aborted because the loss became non-finite.
    #[error("numerical abort: {0}")]
    Numerical(String),

    /// Dataset is empty where a non-empty one is required.
    #[error("empty dataset: {0}")]
    EmptyDataset(String),

    /// Checkpoint archive is malformed or does not match the model.
    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, TntcError>;
