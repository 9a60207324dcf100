//! Seeded sampling of generic points and parameters.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::params::ModelParams;

/// Minimal distance of every pairwise ratio from the special values ±1, ±ω^{±1}.
pub const RATIO_SEPARATION: f64 = 0.05;

/// Deterministic sampler; the seed fixes every draw.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// Point on the annulus 0.5 ≤ |x| ≤ 2 (log-uniform radius, uniform phase).
    pub fn annulus_point(&mut self) -> Complex64 {
        let r = self.uniform(0.5f64.ln(), 2f64.ln()).exp();
        let phi = self.uniform(-std::f64::consts::PI, std::f64::consts::PI);
        Complex64::from_polar(r, phi)
    }

    /// `n` annulus points whose pairwise ratios avoid ±1 and ±ω^{±1} by `RATIO_SEPARATION`.
    pub fn generic_points(&mut self, n: usize, params: &ModelParams) -> Vec<Complex64> {
        let mut out: Vec<Complex64> = Vec::with_capacity(n);
        let w = params.omega;
        let specials = [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0), w, -w, 1.0 / w, -1.0 / w];
        let mut attempts = 0usize;
        while out.len() < n {
            attempts += 1;
            let x = self.annulus_point();
            let ok = out.iter().all(|y| {
                let r1 = x / y;
                let r2 = y / x;
                specials.iter().all(|s| (r1 - s).norm() >= RATIO_SEPARATION && (r2 - s).norm() >= RATIO_SEPARATION)
            });
            if ok || attempts > 100_000 {
                out.push(x);
            }
        }
        out
    }

    /// Real coupling in [lo, hi].
    pub fn coupling(&mut self, lo: f64, hi: f64) -> f64 {
        self.uniform(lo, hi)
    }

    /// Real a in (−1/2, 1/2) at least `margin` away from the degeneracy lattice and from a = 0, ±1/2.
    pub fn generic_a(&mut self, params: &ModelParams, margin: f64) -> f64 {
        loop {
            let a = self.uniform(-0.5, 0.5);
            let lp = params.nearest_lattice_point(Complex64::new(a, 0.0));
            if lp.distance >= margin && a.abs() >= margin && (0.5 - a.abs()) >= margin {
                return a;
            }
        }
    }

    /// Complex number with modulus in [0.5, 2].
    pub fn coefficient(&mut self) -> Complex64 {
        self.annulus_point()
    }
}
