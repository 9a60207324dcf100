use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("quadrature did not converge: error estimate {estimate:.3e} above target {target:.3e}")]
    Quadrature { estimate: f64, target: f64 },

    #[error("degenerate parameter a = {a} is within {distance:.3e} of lattice point {point}")]
    Degenerate { a: String, point: String, distance: f64 },

    #[error("mixed coefficient modes in one element")]
    MixedModes,

    #[error("solver: {0}")]
    Solver(String),

    #[error("decomposition fit residual {residual:.3e} above tolerance {tolerance:.3e}")]
    Decomposition { residual: f64, tolerance: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
