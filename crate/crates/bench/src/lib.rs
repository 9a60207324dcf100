//! Shared inputs for the benchmarks.

use descff::sampling::Sampler;
use descff::ModelParams;
use num_complex::Complex64;

pub fn params() -> ModelParams {
    ModelParams::new(0.31)
}

/// Reproducible generic points for particle number n.
pub fn points(n: usize) -> Vec<Complex64> {
    Sampler::new(1000 + n as u64).generic_points(n, &params())
}

pub fn a() -> Complex64 {
    Complex64::new(0.13, 0.0)
}
