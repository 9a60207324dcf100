//! d/da of J-functions.

use num_complex::Complex64;

use crate::algebra::DescendantElement;
use crate::error::Result;
use crate::jfunctions::{j_rho, j_value};
use crate::params::ModelParams;

/// Step of the finite-difference fallback.
pub const FD_STEP: f64 = 1e-4;

/// d/da J^g_{N,a}(X) for a-independent g: termwise iπ·d·ρ^d on the ρ-polynomial, falling back to
/// finite differences if the symbolic expansion is unavailable.
pub fn d_da_j(g: &DescendantElement, xs: &[Complex64], params: &ModelParams, at_a: Complex64) -> Result<Complex64> {
    match j_rho(g, xs, params) {
        Ok(poly) => Ok(poly.d_da().eval_at_a(at_a)),
        Err(_) => d_da_j_numeric(g, xs, params, at_a),
    }
}

/// Fourth-order central difference with step `FD_STEP`, g held fixed.
pub fn d_da_j_numeric(g: &DescendantElement, xs: &[Complex64], params: &ModelParams, at_a: Complex64) -> Result<Complex64> {
    d_da_j_family(|_| Ok(g.clone()), xs, params, at_a)
}

/// Total derivative of a ↦ J^{g(a)}_{N,a}(X) for an a-dependent family, by fourth-order central
/// differences.
pub fn d_da_j_family<F>(family: F, xs: &[Complex64], params: &ModelParams, at_a: Complex64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<DescendantElement>,
{
    let h = FD_STEP;
    let val = |s: f64| -> Result<Complex64> {
        let a = at_a + s * h;
        j_value(&family(a)?, a, xs, params)
    };
    Ok((val(-2.0)? - 8.0 * val(-1.0)? + 8.0 * val(1.0)? - val(2.0)?) / (12.0 * h))
}
