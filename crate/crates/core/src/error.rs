//! Crate-wide error type.

use crate::trajectory::TFoT;

/// Errors produced by trajectory construction, metric evaluation and fitting.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A time falls outside a trajectory's domain.
    #[error("time {t} outside trajectory domain [{start}, {end}]")]
    OutOfDomain { t: f64, start: f64, end: f64 },

    /// Two inputs carry different state dimensions.
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    /// A trajectory violates a structural invariant (ordering, contiguity, shape).
    #[error("invalid trajectory: {0}")]
    InvalidTrajectory(String),

    /// A metric or quadrature configuration is unusable.
    #[error("invalid config: {0}")]
    InvalidConfig(String),

    /// A caller-supplied argument is unusable (weights, sizes, flags).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Input text could not be parsed into the expected structure.
    #[error("parse error: {0}")]
    Parse(String),

    /// Adaptive quadrature hit its subdivision limit before reaching tolerance.
    #[error("quadrature did not converge: best estimate {best}, error {err:.3e} > tolerance {tol:.3e}")]
    QuadratureNonConvergence { best: f64, err: f64, tol: f64 },

    /// A time window with zero or negative length where a positive one is required.
    #[error("degenerate window [{start}, {end}]")]
    DegenerateWindow { start: f64, end: f64 },

    /// An exhaustive search was asked for a problem too large to enumerate.
    #[error("problem size {size} exceeds exhaustive-search limit {limit}")]
    SizeGuard { size: usize, limit: usize },

    /// Too few samples to determine the requested fit.
    #[error("underdetermined fit: {points} sample times for {params} parameters")]
    Underdetermined { points: usize, params: usize },

    /// Sensor geometry cannot localize the target.
    #[error("degenerate sensor geometry: {0}")]
    DegenerateGeometry(String),

    /// Iterative fitting stalled; carries the best iterate found.
    #[error("fit did not converge after {iterations} iterations (rms residual {residual:.6e})")]
    FitNonConvergence {
        iterations: usize,
        residual: f64,
        best: Box<TFoT>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
