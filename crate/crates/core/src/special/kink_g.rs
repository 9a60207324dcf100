//! The kink pair function G(θ) from its two regularized integral representations.
//!
//! Both exponent integrands are even in t with a double pole A/t² at the origin. The finite
//! part of ∫_0^1 is ½∫ over the arc t(s) = s + i(1−s²)/2, s ∈ [−1, 1], of (f − A/t²), minus A;
//! the arc avoids t = 0 and no other singularity lies between it and the real segment.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::expsum::ExpSum;
use crate::error::Result;
use crate::numeric::quadrature::integrate;
use crate::numeric::{Estimate, QuadratureSpec};
use crate::params::ModelParams;

const SPLIT: f64 = 1.0;
const SERIES_TOL: f64 = 1e-19;

/// Which of the two representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KinkRep {
    /// exp(−∫ sh(πt/2) sh(π(p+1)t/2) ch((π−iθ)t) / (t sh²(πt) sh(πpt/2))).
    First,
    /// 2i sh(θ/2) · exp(∫ sh(πt/2) sh(π(p−1)t/2) ch((π−iθ)t) / (t sh²(πt) sh(πpt/2))).
    Second,
}

fn shift(rep: KinkRep, p: Complex64) -> Complex64 {
    match rep {
        KinkRep::First => p + 1.0,
        KinkRep::Second => p - 1.0,
    }
}

fn integrand(t: Complex64, theta: Complex64, p: Complex64, q: Complex64) -> Complex64 {
    let num = (t * PI / 2.0).sinh() * (t * PI * q / 2.0).sinh() * ((Complex64::new(PI, 0.0) - Complex64::i() * theta) * t).cosh();
    let s = (t * PI).sinh();
    num / (t * s * s * (t * PI * p / 2.0).sinh())
}

/// Finite part of ∫_0^∞ of one exponent integrand.
fn finite_part(rep: KinkRep, theta: Complex64, params: &ModelParams, quad: &QuadratureSpec) -> Result<Estimate> {
    let p = params.p;
    let q = shift(rep, p);
    let dp = q / (2.0 * PI * p);
    let arc = integrate(
        |s| {
            let t = Complex64::new(s, 0.5 * (1.0 - s * s));
            let dt = Complex64::new(1.0, -s);
            (integrand(t, theta, p, q) - dp / (t * t)) * dt
        },
        -1.0,
        1.0,
        quad,
    )?;
    let series = ExpSum::sinh(Complex64::new(PI / 2.0, 0.0))
        .mul(&ExpSum::sinh(PI * q / 2.0), SPLIT)
        .mul(&ExpSum::cosh(Complex64::new(PI, 0.0) - Complex64::i() * theta), SPLIT)
        .mul(&ExpSum::inv_sinh_sq(Complex64::new(PI, 0.0), SPLIT, SERIES_TOL)?, SPLIT)
        .mul(&ExpSum::inv_sinh(PI * p / 2.0, SPLIT, SERIES_TOL)?, SPLIT);
    let tail = series.tail_integral(SPLIT)?;
    Ok(Estimate { value: 0.5 * arc.value - dp + tail, error: 0.5 * arc.error + SERIES_TOL * tail.norm().max(1.0) })
}

/// G(θ) from the chosen representation.
pub fn kink_g_rep(rep: KinkRep, theta: Complex64, params: &ModelParams, quad: &QuadratureSpec) -> Result<Estimate> {
    quad.validate()?;
    let fp = finite_part(rep, theta, params, quad)?;
    let value = match rep {
        KinkRep::First => (-fp.value).exp(),
        KinkRep::Second => 2.0 * Complex64::i() * (theta / 2.0).sinh() * fp.value.exp(),
    };
    Ok(Estimate { value, error: value.norm() * fp.error })
}

/// G(θ), evaluated with the second representation (regular at θ = 0, where G vanishes).
pub fn kink_g(theta: Complex64, params: &ModelParams, quad: &QuadratureSpec) -> Result<Estimate> {
    kink_g_rep(KinkRep::Second, theta, params, quad)
}

/// 1/(G(θ − iπ/2) G(θ + iπ/2)), the combination entering the kink pair measure.
pub fn kink_w(theta: Complex64, params: &ModelParams, quad: &QuadratureSpec) -> Result<Estimate> {
    let h = Complex64::new(0.0, PI / 2.0);
    let g1 = kink_g(theta - h, params, quad)?;
    let g2 = kink_g(theta + h, params, quad)?;
    let value = 1.0 / (g1.value * g2.value);
    Ok(Estimate {
        value,
        error: value.norm() * (g1.error / g1.value.norm().max(f64::MIN_POSITIVE) + g2.error / g2.value.norm().max(f64::MIN_POSITIVE)),
    })
}
