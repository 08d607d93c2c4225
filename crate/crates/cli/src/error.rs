use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SurveyError {
    #[error(transparent)]
    Compute(#[from] qrgap::Error),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl SurveyError {
    /// Computation refusals (such as the correlation-measure cap) as opposed
    /// to bad input.
    pub fn is_refusal(&self) -> bool {
        matches!(self, SurveyError::Compute(qrgap::Error::OverCap { .. }))
    }
}

pub type Result<T> = std::result::Result<T, SurveyError>;
