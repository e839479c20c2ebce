//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// The requested (kappa, mu) pair violates complete positivity.
    #[error("invalid channel: mu = {mu} is below the quantum limit {min_mu} for kappa = {kappa}")]
    InvalidChannel { kappa: f64, mu: f64, min_mu: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An iterative eigenvalue solver failed to converge.
    #[error("eigenvalue solver did not converge")]
    NonConvergence,

    /// The Fock-space truncation cannot represent the requested object
    /// to the required accuracy.
    #[error("Fock cutoff too small: {0}")]
    CutoffTooSmall(String),

    #[error("degenerate state: {0}")]
    DegenerateState(&'static str),

    /// A parameter lies outside the analytic validity range of a formula.
    #[error("domain error: {0}")]
    DomainError(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
