//! The physical form factor G_a (iλ′)^N Π_{i<j} R(θ_i − θ_j) J^g_{N,a}(e^{θ_1}, …, e^{θ_N}).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::direct::j_direct;
use crate::algebra::DescendantElement;
use crate::error::Result;
use crate::numeric::QuadratureSpec;
use crate::params::ModelParams;
use crate::special::{lambda_prime, minimal_r, vev_g};

/// Form factor with its factors, all as (value, error estimate).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormFactor {
    #[serde(with = "crate::numeric::cjson")]
    pub value: Complex64,
    pub err_estimate: f64,
    #[serde(with = "crate::numeric::cjson")]
    pub vev: Complex64,
    #[serde(with = "crate::numeric::cjson")]
    pub lambda_prime: Complex64,
    #[serde(with = "crate::numeric::cjson")]
    pub pair_product: Complex64,
    #[serde(with = "crate::numeric::cjson")]
    pub j: Complex64,
}

pub fn assemble_form_factor(
    g: &DescendantElement,
    a: Complex64,
    thetas: &[Complex64],
    params: &ModelParams,
    quad: &QuadratureSpec,
) -> Result<FormFactor> {
    let n = thetas.len();
    let vev = vev_g(a, params, quad)?;
    let mut rel = vev.error / vev.value.norm().max(f64::MIN_POSITIVE);
    let (lam, lam_err) = if n == 0 {
        (Complex64::new(1.0, 0.0), 0.0)
    } else {
        let l = lambda_prime(params, quad)?;
        (l.value, l.error)
    };
    rel += n as f64 * lam_err / lam.norm().max(f64::MIN_POSITIVE);
    let mut pair = Complex64::new(1.0, 0.0);
    for i in 0..n {
        for j in i + 1..n {
            let r = minimal_r(thetas[i] - thetas[j], params, quad)?;
            rel += r.error / r.value.norm().max(f64::MIN_POSITIVE);
            pair *= r.value;
        }
    }
    let xs: Vec<Complex64> = thetas.iter().map(|t| t.exp()).collect();
    let jr = j_direct(g, a, &xs, params)?;
    let j = jr.value.at_a(a);
    let value = vev.value * (Complex64::i() * lam).powu(n as u32) * pair * j;
    let err = value.norm() * rel + (value / j).norm() * jr.err_estimate;
    Ok(FormFactor { value, err_estimate: if err.is_finite() { err } else { jr.err_estimate }, vev: vev.value, lambda_prime: lam, pair_product: pair, j })
}
