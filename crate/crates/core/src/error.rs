//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square: {rows} rows, {cols} columns")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric: max |a_ij - a_ji| = {max_asymmetry:e}")]
    NotSymmetric { max_asymmetry: f64 },

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("matrix is indefinite (eigenvalue {eigenvalue:e} below -tolerance)")]
    IndefiniteInput { eigenvalue: f64 },

    #[error("Jacobi eigendecomposition did not converge within {sweeps} sweeps")]
    EigenNoConvergence { sweeps: usize },

    #[error("eigenvalue sigma_{index} = {value:e} is not positive")]
    NonPositiveSigma { index: usize, value: f64 },

    #[error("growth probe inconclusive for penalty '{name}': {detail}")]
    GrowthProbeInconclusive { name: String, detail: String },

    #[error("invalid penalty specification '{spec}': {reason}")]
    InvalidPenalty { spec: String, reason: String },

    #[error("unsupported penalty for this operation: {0}")]
    UnsupportedPenalty(String),

    #[error("certificate construction requires a non-existence rule, got {0}")]
    NotANonExistenceRule(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: cannot parse '{token}' as a number")]
    ParseNumber {
        path: String,
        line: usize,
        token: String,
    },

    #[error("{path}:{line}: non-finite value {value}")]
    NonFiniteValue {
        path: String,
        line: usize,
        value: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
