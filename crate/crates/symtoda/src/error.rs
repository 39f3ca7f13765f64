//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by construction, factorization and verification routines.
#[derive(Debug, Error)]
pub enum Error {
    /// Input fails a structural precondition (dimension, determinant, shape, range).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A numerical routine broke down (rank ambiguity, factorization failure, drift).
    #[error("numerical error: {0}")]
    Numerical(String),

    /// The point is non-generic (degenerate spectrum or vanishing angle coordinate).
    #[error("degenerate point: {0}")]
    Degenerate(String),

    /// A verified identity exceeded its tolerance.
    #[error("verification failure in `{check}`: residual {residual:.3e} > tol {tol:.3e}")]
    Verification {
        check: String,
        residual: f64,
        tol: f64,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    pub fn degenerate(msg: impl Into<String>) -> Self {
        Error::Degenerate(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
