use thiserror::Error;

/// Errors raised by the geometric constructions and numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A bracketed search found no root.
    #[error("no root: {0}")]
    NoRoot(String),

    /// A profile integration ran into the rotation axis.
    #[error("singularity at s = {s}: {reason}")]
    Singularity { s: f64, reason: String },

    /// Adaptive stepping could not reach the requested accuracy.
    #[error("step failure: {0}")]
    StepFailure(String),

    /// Adaptive quadrature could not reach the requested tolerance.
    #[error("quadrature did not converge: estimate {estimate}, error {error}")]
    Quadrature { estimate: f64, error: f64 },

    /// The candidate geometry leaves the domain or self-overlaps.
    #[error("inadmissible candidate: {0}")]
    Inadmissible(String),

    /// A generating curve does not bound a region.
    #[error("open curve: {0}")]
    OpenCurve(String),

    #[error("dimension mismatch: expected n = {expected}, got n = {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The requested family/dimension combination is not supported.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
