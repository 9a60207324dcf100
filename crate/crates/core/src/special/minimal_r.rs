//! The pair function R(θ) of the vertex operators.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::expsum::ExpSum;
use crate::error::Result;
use crate::numeric::quadrature::{integrate, integrate_semi_infinite};
use crate::numeric::{Estimate, QuadratureSpec};
use crate::params::ModelParams;

/// Split point between the quadrature head and the exponential-series tail.
const SPLIT: f64 = 1.0;
const SERIES_TOL: f64 = 1e-19;

fn sh(z: Complex64) -> Complex64 {
    z.sinh()
}

/// 4 sh(πt/2) sh(πpt/2) sh(π(p+1)t/2) ch((π−iθ)t) / (t sh²(πt)).
fn integrand(t: f64, theta: Complex64, p: Complex64) -> Complex64 {
    if t > 2.0 {
        return integrand_scaled(t, theta, p);
    }
    let tc = Complex64::new(t, 0.0);
    let num = sh(tc * PI / 2.0) * sh(tc * PI * p / 2.0) * sh(tc * PI * (p + 1.0) / 2.0);
    let den = sh(tc * PI) * sh(tc * PI);
    let phase = ((Complex64::new(PI, 0.0) - Complex64::i() * theta) * t).cosh();
    4.0 * num / den * phase / t
}

/// Same integrand with every sh written as e^x (1 − e^{−2x})/2, so large t does not overflow.
fn integrand_scaled(t: f64, theta: Complex64, p: Complex64) -> Complex64 {
    let xs = [Complex64::new(PI * t / 2.0, 0.0), PI * p * t / 2.0, PI * (p + 1.0) * t / 2.0];
    let mut mant = Complex64::new(1.0, 0.0);
    let mut expo = Complex64::new(-2.0 * PI * t, 0.0);
    for x in xs {
        mant *= (1.0 - (-2.0 * x).exp()) / 2.0;
        expo += x;
    }
    let d = (1.0 - (-2.0 * PI * t).exp()) / 2.0;
    mant /= d * d;
    let w = (Complex64::new(PI, 0.0) - Complex64::i() * theta) * t;
    let phase = 0.5 * ((expo + w).exp() + (expo - w).exp());
    4.0 * mant * phase / t
}

/// R(θ). The t ≥ 1 part is summed in closed form from its exponential expansion, which also
/// continues R outside the strip |π + Im θ| < π(1 − p) where the integral converges.
pub fn minimal_r(theta: Complex64, params: &ModelParams, quad: &QuadratureSpec) -> Result<Estimate> {
    quad.validate()?;
    let p = params.p;
    let head = integrate(|t| if t == 0.0 { Complex64::new(0.0, 0.0) } else { integrand(t, theta, p) }, 0.0, SPLIT, quad)?;
    let i = Complex64::i();
    let shs = ExpSum::sinh(Complex64::new(PI / 2.0, 0.0))
        .mul(&ExpSum::sinh(PI * p / 2.0), SPLIT)
        .mul(&ExpSum::sinh(PI * (p + 1.0) / 2.0), SPLIT);
    let tail_sum = shs
        .mul(&ExpSum::inv_sinh_sq(Complex64::new(PI, 0.0), SPLIT, SERIES_TOL)?, SPLIT)
        .mul(&ExpSum::cosh(Complex64::new(PI, 0.0) - i * theta), SPLIT)
        .scale(Complex64::new(4.0, 0.0));
    let tail = tail_sum.tail_integral(SPLIT)?;
    let log_r = head.value + tail;
    let value = log_r.exp();
    Ok(Estimate { value, error: value.norm() * (head.error + SERIES_TOL * tail.norm().max(1.0)) })
}

/// R(θ) by direct quadrature of the defining integral up to `quad.truncation`; valid only inside
/// the convergence strip. Used as an independent cross-check.
pub fn minimal_r_truncated(theta: Complex64, params: &ModelParams, quad: &QuadratureSpec) -> Result<Estimate> {
    quad.validate()?;
    let p = params.p;
    let cut = quad.truncation;
    let head = integrate(|t| if t == 0.0 { Complex64::new(0.0, 0.0) } else { integrand(t, theta, p) }, 0.0, 1.0, quad)?;
    let rest = integrate(|t| integrand(t, theta, p), 1.0, cut, quad)?;
    let value = (head.value + rest.value).exp();
    Ok(Estimate { value, error: value.norm() * (head.error + rest.error) })
}

/// Same integral via the (0,1) map of the semi-infinite range.
pub fn minimal_r_mapped(theta: Complex64, params: &ModelParams, quad: &QuadratureSpec) -> Result<Estimate> {
    let p = params.p;
    let r = integrate_semi_infinite(
        |t| {
            if t == 0.0 || t > 100.0 {
                Complex64::new(0.0, 0.0)
            } else {
                integrand(t, theta, p)
            }
        },
        0.0,
        quad,
    )?;
    let value = r.value.exp();
    Ok(Estimate { value, error: value.norm() * r.error })
}
