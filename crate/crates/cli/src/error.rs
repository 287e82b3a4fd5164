use thiserror::Error;

/// Failures reported with exit status 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{0}")]
    Model(#[from] pwl_density::Error),
    #[error("density is not normalized: raw mass {mass}, rescale by k = {k} or pass --autonormalize")]
    NotNormalized { mass: String, k: String },
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}
