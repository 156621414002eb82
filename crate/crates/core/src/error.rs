use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid domain spec: {0}")]
    InvalidSpec(String),
    #[error("element leaves the subsystem: {0}")]
    StructureViolation(String),
    #[error("potential evaluated outside its domain (log argument {0:e})")]
    EvaluationOutsideDomain(f64),
    #[error("metric is singular at this point")]
    SingularMetric,
    #[error("tangent vectors do not span a plane")]
    DegeneratePlane,
    #[error("geodesic left the domain at t = {0}")]
    ExitedDomain(f64),
    #[error("embedding expects {expected} coordinates, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("point lies outside the domain")]
    OutsideDomain,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
