//! Model parameters: coupling, derived phase, mass scale and numeric settings.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{exp_i_pi, sin_pi};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    #[default]
    Double,
    Extended,
}

/// Coupling p (with ω = e^{iπp}), mass scale and tolerances. The exponent parameter a is passed per call.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub p: Complex64,
    pub omega: Complex64,
    pub m: f64,
    pub tolerance: f64,
    pub precision: Precision,
    /// Minimal distance from the degeneracy lattice accepted by `ensure_generic`.
    pub degeneracy_margin: f64,
}

/// A point of the lattice a ≡ ±p/2, ±(1+p)/2 (mod 1).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatticePoint {
    pub label: &'static str,
    pub value: Complex64,
    pub distance: f64,
}

impl ModelParams {
    pub fn new(p: f64) -> Self {
        Self::with_complex_p(Complex64::new(p, 0.0))
    }

    pub fn with_complex_p(p: Complex64) -> Self {
        ModelParams {
            p,
            omega: exp_i_pi(p),
            m: 1.0,
            tolerance: 1e-10,
            precision: Precision::Double,
            degeneracy_margin: 1e-6,
        }
    }

    pub fn with_mass(mut self, m: f64) -> Self {
        self.m = m;
        self
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self
    }

    pub fn with_precision(mut self, precision: Precision) -> Self {
        self.precision = precision;
        self
    }

    /// Checks ω = e^{iπp}, m > 0 and tolerance > 0.
    pub fn validate(&self) -> Result<()> {
        if (self.omega - exp_i_pi(self.p)).norm() > 1e-12 {
            return Err(Error::Domain(format!("omega {} inconsistent with p {}", self.omega, self.p)));
        }
        if !(self.m > 0.0) {
            return Err(Error::Domain("mass scale must be positive".into()));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::Domain("tolerance must be positive".into()));
        }
        if self.p.norm() == 0.0 {
            return Err(Error::Domain("coupling p must be nonzero".into()));
        }
        Ok(())
    }

    /// Real coupling, or a domain error if p has an imaginary part.
    pub fn real_p(&self) -> Result<f64> {
        if self.p.im.abs() > 1e-15 {
            return Err(Error::Domain(format!("operation needs real p, got {}", self.p)));
        }
        Ok(self.p.re)
    }

    pub fn sin_pi_p(&self) -> Complex64 {
        sin_pi(self.p)
    }

    /// ω − ω⁻¹ = 2i sin πp.
    pub fn delta(&self) -> Complex64 {
        self.omega - 1.0 / self.omega
    }

    /// α0 = 1/√(2p(p+1)).
    pub fn alpha0(&self) -> Complex64 {
        1.0 / (2.0 * self.p * (self.p + 1.0)).sqrt()
    }

    /// α = α0 (2a + 1).
    pub fn alpha(&self, a: Complex64) -> Complex64 {
        self.alpha0() * (2.0 * a + 1.0)
    }

    /// Nearest point of the degeneracy lattice a ≡ ±p/2, ±(1+p)/2 (mod 1).
    pub fn nearest_lattice_point(&self, a: Complex64) -> LatticePoint {
        let p = self.p;
        let cands: [(&'static str, Complex64); 4] =
            [("p/2", p / 2.0), ("-p/2", -p / 2.0), ("(1+p)/2", (1.0 + p) / 2.0), ("-(1+p)/2", -(1.0 + p) / 2.0)];
        let mut best = LatticePoint { label: "", value: Complex64::new(0.0, 0.0), distance: f64::INFINITY };
        for (label, t) in cands {
            let d = a - t;
            let k = d.re.round();
            let dist = Complex64::new(d.re - k, d.im).norm();
            if dist < best.distance {
                best = LatticePoint { label, value: t + k, distance: dist };
            }
        }
        best
    }

    /// Error if a lies within `degeneracy_margin` of the degeneracy lattice.
    pub fn ensure_generic(&self, a: Complex64) -> Result<()> {
        let lp = self.nearest_lattice_point(a);
        if lp.distance < self.degeneracy_margin {
            return Err(Error::Degenerate {
                a: format!("{a}"),
                point: format!("{} = {}", lp.label, lp.value),
                distance: lp.distance,
            });
        }
        Ok(())
    }
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams::new(0.3)
    }
}
