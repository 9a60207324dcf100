//! Direct evaluation of J^g_{N,a}(X) from the subset sum, numerically or as a ρ-polynomial.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::kernel::{buckets, Buckets, CompiledElement};
use crate::algebra::{DescendantElement, RhoLaurent};
use crate::error::Result;
use crate::numeric::{Scalar, XComplex};
use crate::params::{ModelParams, Precision};

/// Value of a J-function: a number at fixed a, or a Laurent polynomial in ρ = e^{iπa}.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JValue {
    Num(#[serde(with = "crate::numeric::cjson")] Complex64),
    Rho {
        rho_poly: RhoLaurent,
    },
}

impl JValue {
    /// Numeric value, evaluating a ρ-polynomial at a if needed.
    pub fn at_a(&self, a: Complex64) -> Complex64 {
        match self {
            JValue::Num(z) => *z,
            JValue::Rho { rho_poly } => rho_poly.eval_at_a(a),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JResult {
    #[serde(rename = "N")]
    pub n: usize,
    pub value: JValue,
    pub element: String,
    /// Largest (level, antilevel) among the terms.
    pub level: (u32, u32),
    /// None in ρ-symbolic mode.
    #[serde(with = "opt_c64")]
    pub a: Option<Complex64>,
    #[serde(with = "crate::numeric::cjson")]
    pub p: Complex64,
    pub err_estimate: f64,
}

mod opt_c64 {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::numeric::cjson::ComplexJson;

    pub fn serialize<S: Serializer>(z: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
        z.map(ComplexJson::from).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Complex64>, D::Error> {
        Ok(Option::<ComplexJson>::deserialize(d)?.map(Complex64::from))
    }
}

/// Bucketed subset sums in the precision selected by `params`, rounded to double.
fn run_buckets(ce: &CompiledElement, xs: &[Complex64], params: &ModelParams) -> Result<(Buckets<Complex64>, f64)> {
    match params.precision {
        Precision::Double => Ok((buckets::<Complex64>(ce, xs, params.omega)?, f64::EPSILON)),
        Precision::Extended => {
            let b = buckets::<XComplex>(ce, xs, params.omega)?;
            let values = b.values.iter().map(|row| row.iter().map(|v| v.to_c64()).collect()).collect();
            Ok((Buckets { values, abs: b.abs }, XComplex::epsilon().max(f64::EPSILON * f64::EPSILON)))
        }
    }
}

/// J^g_{N,a}(X) as a plain number (the workhorse behind every other evaluator).
pub fn j_value(g: &DescendantElement, a: Complex64, xs: &[Complex64], params: &ModelParams) -> Result<Complex64> {
    Ok(j_value_with_error(g, a, xs, params)?.0)
}

fn j_value_with_error(
    g: &DescendantElement,
    a: Complex64,
    xs: &[Complex64],
    params: &ModelParams,
) -> Result<(Complex64, f64)> {
    let n = xs.len();
    let ce = CompiledElement::new(g);
    if ce.terms.is_empty() {
        return Ok((Complex64::new(0.0, 0.0), 0.0));
    }
    let coeffs: Vec<Complex64> = ce.keys.iter().map(|(c, b)| g.coeff(c, b).expect("compiled key").at_a(a)).collect();
    if params.precision == Precision::Extended {
        return j_value_extended(&ce, &coeffs, a, xs, params);
    }
    let (b, eps) = run_buckets(&ce, xs, params)?;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut mag = 0.0;
    for k in 0..=n {
        let ph = crate::numeric::exp_i_pi(a * (2 * k as i32 - n as i32) as f64);
        for (t, c) in coeffs.iter().enumerate() {
            acc += ph * c * b.values[k][t];
            mag += ph.norm() * c.norm() * b.abs[k][t];
        }
    }
    Ok((acc, 4.0 * (n.max(1) as f64) * eps * mag))
}

/// Final ρ-sum carried out in extended precision too, so cancellation between buckets is harmless.
fn j_value_extended(
    ce: &CompiledElement,
    coeffs: &[Complex64],
    a: Complex64,
    xs: &[Complex64],
    params: &ModelParams,
) -> Result<(Complex64, f64)> {
    let n = xs.len();
    let b = buckets::<XComplex>(ce, xs, params.omega)?;
    let mut acc = XComplex::zero();
    let mut mag = 0.0;
    for k in 0..=n {
        let ph = XComplex::exp_i_pi(a * (2 * k as i32 - n as i32) as f64);
        let phn = ph.modulus();
        for (t, c) in coeffs.iter().enumerate() {
            acc = acc + ph.clone() * XComplex::from_c64(*c) * b.values[k][t].clone();
            mag += phn * c.norm() * b.abs[k][t];
        }
    }
    // coefficients and points enter as doubles; the sum itself is exact to ~1e−70
    Ok((acc.to_c64(), f64::EPSILON * f64::EPSILON * 4.0 * n.max(1) as f64 * mag + f64::EPSILON * acc.modulus()))
}

/// J^g_{N,a}(X) = Σ_{X₋ ∪ X₊ = X} e^{iπa(#X₋ − #X₊)} P^g(X₋|X₊) Π_{i∈X₋, j∈X₊} f(x_i/x_j).
pub fn j_direct(g: &DescendantElement, a: Complex64, xs: &[Complex64], params: &ModelParams) -> Result<JResult> {
    let (value, err) = j_value_with_error(g, a, xs, params)?;
    Ok(JResult {
        n: xs.len(),
        value: JValue::Num(value),
        element: g.to_string(),
        level: g.max_levels(),
        a: Some(a),
        p: params.p,
        err_estimate: err,
    })
}

/// J^g_{N,a}(X) with ρ kept symbolic. Coefficients of g may themselves be ρ-polynomials.
pub fn j_rho(g: &DescendantElement, xs: &[Complex64], params: &ModelParams) -> Result<RhoLaurent> {
    let n = xs.len() as i32;
    let ce = CompiledElement::new(g);
    let (b, _) = run_buckets(&ce, xs, params)?;
    let mut acc = RhoLaurent::zero();
    for (t, (c, ac)) in ce.keys.iter().enumerate() {
        let coeff = g.coeff(c, ac).expect("compiled key").to_rho();
        let mut part = RhoLaurent::zero();
        for (k, row) in b.values.iter().enumerate() {
            part.add_term(2 * k as i32 - n, row[t]);
        }
        acc = acc + coeff * part;
    }
    Ok(acc)
}

/// j_rho wrapped as a JResult.
pub fn j_rho_result(g: &DescendantElement, xs: &[Complex64], params: &ModelParams) -> Result<JResult> {
    let poly = j_rho(g, xs, params)?;
    let err = 4.0 * xs.len().max(1) as f64 * f64::EPSILON * poly.max_abs();
    Ok(JResult {
        n: xs.len(),
        value: JValue::Rho { rho_poly: poly },
        element: g.to_string(),
        level: g.max_levels(),
        a: None,
        p: params.p,
        err_estimate: err,
    })
}
