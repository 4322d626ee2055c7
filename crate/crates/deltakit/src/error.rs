//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Polytope data violates an invariant (names the violated invariant).
    #[error("invalid polytope: {0}")]
    InvalidGeometry(String),

    /// Fan data violates an invariant.
    #[error("invalid fan: {0}")]
    InvalidFan(String),

    /// Pair-level invariant violated (klt bounds, fan/polytope compatibility).
    #[error("invalid pair: {0}")]
    InvalidPair(String),

    /// Operation requires a smooth cone and the containing cone is not.
    #[error("requires smooth cone: {0}")]
    NonSmoothCone(String),

    /// A metric profile failed admissibility checks.
    #[error("profile not admissible: {0}")]
    NotAdmissible(String),

    /// Quadrature failed to reach the requested tolerance.
    #[error("quadrature did not converge on {tag}: residual {residual:.3e}")]
    QuadratureFailure { tag: String, residual: f64 },

    /// Hermitian form levels or dimensions do not match.
    #[error("level mismatch: {0}")]
    LevelMismatch(String),

    /// A ray probe could not certify stabilized slopes.
    #[error("inconclusive probe: {0}")]
    Inconclusive(String),

    /// Malformed input document or unknown catalog key.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
