//! Normalization constants: λ′, the expectation value G_a and the reflection factor R_a.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::expsum::ExpSum;
use crate::error::{Error, Result};
use crate::numeric::gamma::{e1, gamma};
use crate::numeric::quadrature::{integrate, tanh_sinh};
use crate::numeric::{sin_pi, Estimate, QuadratureSpec};
use crate::params::ModelParams;

const SERIES_TOL: f64 = 1e-19;

fn lambda_prefactor(p: Complex64) -> Complex64 {
    (1.0 / (2.0 * sin_pi(p / 2.0))).sqrt()
}

/// t / sin t along t = sπp, times dt/ds.
fn lambda_integrand(s: f64, p: Complex64) -> Complex64 {
    let t = p * (PI * s);
    let ratio = if s == 0.0 { Complex64::new(1.0, 0.0) } else { t / t.sin() };
    ratio * p * PI
}

/// λ′ = (2 sin(πp/2))^{−1/2} exp(−∫_0^{πp} t/sin t dt/2π).
pub fn lambda_prime(params: &ModelParams, quad: &QuadratureSpec) -> Result<Estimate> {
    let p = params.p;
    if !(p.re > 0.0 && p.re < 1.0) {
        return Err(Error::Domain(format!("lambda_prime needs 0 < Re p < 1, got {p}")));
    }
    let r = integrate(|s| lambda_integrand(s, p), 0.0, 1.0, quad)?;
    let value = lambda_prefactor(p) * (-r.value / (2.0 * PI)).exp();
    Ok(Estimate { value, error: value.norm() * r.error / (2.0 * PI) })
}

/// λ′ with the tanh-sinh rule, for cross-checks.
pub fn lambda_prime_tanh_sinh(params: &ModelParams, quad: &QuadratureSpec) -> Result<Estimate> {
    let p = params.p;
    if !(p.re > 0.0 && p.re < 1.0) {
        return Err(Error::Domain(format!("lambda_prime needs 0 < Re p < 1, got {p}")));
    }
    let r = tanh_sinh(|s| lambda_integrand(s, p), 0.0, 1.0, quad)?;
    let value = lambda_prefactor(p) * (-r.value / (2.0 * PI)).exp();
    Ok(Estimate { value, error: value.norm() * r.error / (2.0 * PI) })
}

fn gamma_base(p: Complex64) -> Result<Complex64> {
    Ok(gamma((1.0 + p) / 2.0)? * gamma((2.0 - p) / 2.0)? / (4.0 * PI.sqrt()))
}

/// G_a = (m Γ((1+p)/2) Γ((2−p)/2) / 4√π)^{α²} · exp ∫ dt/t (sh(t/2) sh²(bt) / (sh t sh(pt/2) sh((p+1)t/2)) − α² e^{−(p+1)t}),
/// b = a + 1/2. Continued in a beyond |2a+1| < 1+p through the closed-form tail.
pub fn vev_g(a: Complex64, params: &ModelParams, quad: &QuadratureSpec) -> Result<Estimate> {
    quad.validate()?;
    let p = params.p;
    let b = a + 0.5;
    let alpha_sq = params.alpha(a) * params.alpha(a);
    if b.norm() == 0.0 {
        return Ok(Estimate { value: Complex64::new(1.0, 0.0), error: 0.0 });
    }
    let split = 2.0f64.max(3.0 / p.re);
    let ratio = |t: f64| -> Complex64 {
        let tc = Complex64::new(t, 0.0);
        let s = (b * t).sinh();
        (tc / 2.0).sinh() * s * s / (tc.sinh() * (p * t / 2.0).sinh() * ((p + 1.0) * t / 2.0).sinh())
    };
    let head = integrate(
        |t| {
            if t == 0.0 {
                // limit of the bracket / t at t → 0 is finite; the point has zero weight in GK anyway
                return Complex64::new(0.0, 0.0);
            }
            (ratio(t) - alpha_sq * (-(p + 1.0) * t).exp()) / t
        },
        0.0,
        split,
        quad,
    )?;
    let series = ExpSum::sinh(Complex64::new(0.5, 0.0))
        .mul(&ExpSum::sinh(b), split)
        .mul(&ExpSum::sinh(b), split)
        .mul(&ExpSum::inv_sinh(Complex64::new(1.0, 0.0), split, SERIES_TOL)?, split)
        .mul(&ExpSum::inv_sinh(p / 2.0, split, SERIES_TOL)?, split)
        .mul(&ExpSum::inv_sinh((p + 1.0) / 2.0, split, SERIES_TOL)?, split);
    let mut tail = series.tail_integral(split)?;
    if alpha_sq.norm() > 0.0 {
        tail -= alpha_sq * e1((p + 1.0) * split)?;
    }
    let base = params.m * gamma_base(p)?;
    let value = (alpha_sq * base.ln() + head.value + tail).exp();
    Ok(Estimate { value, error: value.norm() * (head.error + SERIES_TOL * tail.norm().max(1.0)) })
}

/// R_a from the closed Γ-function formula.
pub fn reflection_const(a: Complex64, params: &ModelParams) -> Result<Complex64> {
    let p = params.p;
    let expo = 8.0 * params.alpha0() * params.alpha0() * a;
    let base = params.m * ((p + 1.0) / p).powc(p + 1.0) * gamma_base(p)?;
    let ratio = gamma(1.0 - 2.0 * a / p)? * gamma(1.0 + 2.0 * a / (p + 1.0))?
        / (gamma(1.0 + 2.0 * a / p)? * gamma(1.0 - 2.0 * a / (p + 1.0))?);
    Ok((expo * base.ln()).exp() * ratio)
}

/// Outcome of the G_a = R_a G_{−a} comparison.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VevReflectionCheck {
    /// Largest relative deviation over the evaluation points.
    pub max_rel_defect: f64,
    /// True when a is a pole and the identity was checked on a small circle around it.
    pub on_pole: bool,
    /// Relative deviation of the residues (pole case only).
    pub residue_defect: Option<f64>,
}

/// Checks G_a = R_a G_{−a}. At a pole of the two sides the identity is checked at `points`
/// points on a circle of radius `radius` around a, together with the residues.
pub fn vev_reflection_check(
    a: Complex64,
    params: &ModelParams,
    quad: &QuadratureSpec,
    radius: f64,
    points: usize,
) -> Result<VevReflectionCheck> {
    let sides = |a: Complex64| -> Result<(Complex64, Complex64)> {
        let g = vev_g(a, params, quad)?.value;
        let rhs = reflection_const(a, params)? * vev_g(-a, params, quad)?.value;
        Ok((g, rhs))
    };
    match sides(a) {
        Ok((l, r)) => Ok(VevReflectionCheck {
            max_rel_defect: (l - r).norm() / l.norm().max(r.norm()),
            on_pole: false,
            residue_defect: None,
        }),
        Err(Error::Domain(_)) | Err(Error::Pole(_)) => {
            let mut worst = 0.0f64;
            let (mut res_l, mut res_r) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            for k in 0..points {
                let u = Complex64::from_polar(radius, 2.0 * PI * (k as f64 + 0.5) / points as f64);
                let (l, r) = sides(a + u)?;
                worst = worst.max((l - r).norm() / l.norm().max(r.norm()));
                res_l += l * u / points as f64;
                res_r += r * u / points as f64;
            }
            Ok(VevReflectionCheck {
                max_rel_defect: worst,
                on_pole: true,
                residue_defect: Some((res_l - res_r).norm() / res_l.norm().max(res_r.norm())),
            })
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lambda_rules_agree() {
        let q = QuadratureSpec::default();
        for p in [0.5, 0.13, 0.87] {
            let mp = ModelParams::new(p);
            let a = lambda_prime(&mp, &q).unwrap().value;
            let b = lambda_prime_tanh_sinh(&mp, &q).unwrap().value;
            assert!((a - b).norm() < 1e-10, "{p}: {a} {b}");
            assert!(a.im.abs() < 1e-15 && a.re > 0.0);
        }
    }

    #[test]
    fn lambda_small_coupling() {
        let q = QuadratureSpec::default();
        let p = 1e-4;
        let v = lambda_prime(&ModelParams::new(p), &q).unwrap().value;
        let lead = (PI * p).powf(-0.5);
        assert!((v.re / lead - 1.0).abs() < 1e-4);
    }

    #[test]
    fn reflection_const_inverse_pairs() {
        let mp = ModelParams::new(0.3).with_mass(1.7);
        assert!((reflection_const(c(0.0, 0.0), &mp).unwrap() - 1.0).norm() < 1e-14);
        for a in [c(0.11, 0.0), c(-0.23, 0.05)] {
            let prod = reflection_const(a, &mp).unwrap() * reflection_const(-a, &mp).unwrap();
            assert!((prod - 1.0).norm() < 1e-12);
        }
    }

    #[test]
    fn vev_identity_and_reflection() {
        let q = QuadratureSpec::default();
        let mp = ModelParams::new(0.3);
        assert_eq!(vev_g(c(-0.5, 0.0), &mp, &q).unwrap().value, c(1.0, 0.0));
        let on_pole = vev_reflection_check(c(0.3, 0.0), &mp, &q, 1e-3, 8).unwrap();
        assert!(on_pole.on_pole && on_pole.max_rel_defect < 1e-8, "{on_pole:?}");
        assert!(on_pole.residue_defect.unwrap() < 1e-8);
        for a in [0.05, 0.17, 0.25] {
            let g = vev_g(c(a, 0.0), &mp, &q).unwrap().value;
            let gm = vev_g(c(-a, 0.0), &mp, &q).unwrap().value;
            let r = reflection_const(c(a, 0.0), &mp).unwrap();
            assert!((g - r * gm).norm() < 1e-8 * g.norm(), "{a}: {g} vs {}", r * gm);
            let g2 = vev_g(c(-1.0 - a, 0.0), &mp, &q).unwrap().value;
            assert!((g - g2).norm() < 1e-8 * g.norm());
        }
    }
}
