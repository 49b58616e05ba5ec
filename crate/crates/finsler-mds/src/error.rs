use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
#[non_exhaustive]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {actual}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("matrix is not symmetric (max |A - A^T| entry {max_asymmetry:.3e})")]
    NotSymmetric { max_asymmetry: f64 },

    #[error("matrix is not positive definite (found eigenvalue {eigenvalue:.3e})")]
    NotPositiveDefinite { eigenvalue: f64 },

    #[error("{what} did not converge after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("non-finite value produced in {0}")]
    NonFinite(&'static str),

    #[error("dissimilarity [{i}][{j}] is infinite but carries nonzero weight")]
    InfiniteDissimilarity { i: usize, j: usize },

    #[error("edge endpoint {index} is out of range for a graph on {n} nodes")]
    NodeOutOfRange { index: usize, n: usize },

    #[error("link-prediction split left the training graph disconnected after {retries} retries")]
    SplitDisconnected { retries: usize },

    #[error("AUC is undefined: scores contain only one class")]
    SingleClass,

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error in {path} line {line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
