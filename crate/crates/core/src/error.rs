use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An attachment weight came out nonpositive. The node id and the weight are kept for diagnosis.
    #[error("degenerate attachment weight {weight} at node {node}")]
    DegenerateWeights { node: usize, weight: f64 },

    /// Closed-form quantities whose logarithm or denominator is out of domain.
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),

    #[error("assortativity undefined: {0}")]
    UndefinedAssortativity(&'static str),

    #[error("eigensolver did not converge after {iterations} iterations (estimate {estimate}, residual {residual})")]
    NoConvergence {
        iterations: usize,
        estimate: f64,
        residual: f64,
    },

    #[error("cannot fit power law: {0}")]
    UnfittableData(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An error tied to an input file.
    #[error("{}: {source}", path.display())]
    Input {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },

    /// Bad command line.
    #[error("{0}")]
    Usage(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {source}", path.display())]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
