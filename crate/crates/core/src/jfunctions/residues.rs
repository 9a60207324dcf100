//! Kinematic residues and the pole / Laurent decomposition of J in its last argument.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::direct::j_value;
use crate::algebra::DescendantElement;
use crate::error::{Error, Result};
use crate::numeric::linalg::{lstsq, Mat};
use crate::numeric::{Scalar, XComplex};
use crate::params::ModelParams;
use crate::special::kernel::check_argument;
use crate::special::f_value;

fn f(x: Complex64, params: &ModelParams) -> Result<Complex64> {
    check_argument(x)?;
    Ok(f_value(x, params.omega))
}

/// −i sin πp (Π_j f(x/x_j) − Π_j f(x_j/x)), the factor multiplying J_{N−2} in the residue.
pub fn residue_factor(xs: &[Complex64], x: Complex64, params: &ModelParams) -> Result<Complex64> {
    let mut fwd = Complex64::new(1.0, 0.0);
    let mut bwd = Complex64::new(1.0, 0.0);
    for &y in xs {
        fwd *= f(x / y, params)?;
        bwd *= f(y / x, params)?;
    }
    Ok(-Complex64::i() * params.sin_pi_p() * (fwd - bwd))
}

/// R^g(X; x) = x⁻¹ Res_{x′=−x} J^g_{N,a}(X, x, x′), with X holding the other N−2 points.
pub fn residue_kinematic(
    g: &DescendantElement,
    a: Complex64,
    xs: &[Complex64],
    x: Complex64,
    params: &ModelParams,
) -> Result<Complex64> {
    let fac = residue_factor(xs, x, params)?;
    if fac == Complex64::new(0.0, 0.0) {
        return Ok(fac);
    }
    Ok(fac * j_value(g, a, xs, params)?)
}

/// x⁻¹ Res_{x′=−x} J by the trapezoid rule on a circle of radius `radius`·|x| around −x.
/// Independent of the residue formula; error O(radius^points) for a simple pole.
pub fn residue_numeric(
    g: &DescendantElement,
    a: Complex64,
    xs: &[Complex64],
    x: Complex64,
    params: &ModelParams,
    radius: f64,
    points: usize,
) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut args: Vec<Complex64> = xs.to_vec();
    args.push(x);
    args.push(Complex64::new(0.0, 0.0));
    for k in 0..points {
        let u = x * Complex64::from_polar(radius, 2.0 * PI * (k as f64 + 0.5) / points as f64);
        *args.last_mut().expect("nonempty") = -x + u;
        acc += j_value(g, a, &args, params)? * u;
    }
    Ok(acc / (points as f64) / x)
}

/// J(X, x) = Σ_i x_i R_i/(x + x_i) + Σ_s C^∞_s x^s, with C^0_s = C^∞_s + D δ_{s0} and D = Σ R_i.
#[derive(Clone, Debug)]
pub struct PoleDecomposition {
    /// R_i for each point x_i of X.
    pub residues: Vec<Complex64>,
    pub c_inf: BTreeMap<i32, Complex64>,
    pub c_zero: BTreeMap<i32, Complex64>,
    pub d: Complex64,
    /// Relative residual of the Laurent fit on held-out points.
    pub fit_residual: f64,
    /// Relative deviation of C^∞_n from J^{h̄′}_{N−1}·lim x^{−n}J^h_1 (None if g is not a product h h̄′).
    pub top_defect: Option<f64>,
    /// Relative deviation of C^0_{−n̄} from J^h_{N−1}·lim x^{n̄}J^{h̄′}_1.
    pub bottom_defect: Option<f64>,
}

impl PoleDecomposition {
    /// Σ_i x_i R_i/(x + x_i) + Σ_s C^∞_s x^s at x.
    pub fn eval(&self, xs: &[Complex64], x: Complex64) -> Complex64 {
        let poles: Complex64 = xs.iter().zip(&self.residues).map(|(xi, r)| xi * r / (x + xi)).sum();
        let laurent: Complex64 = self.c_inf.iter().map(|(s, c)| c * x.powi(*s)).sum();
        poles + laurent
    }
}

/// Splits J^g_{N,a}(X, x) (X has N−1 points) into pole part and Laurent part in x.
///
/// The Laurent coefficients are fitted at 2(n+n̄)+3 points on a circle after subtracting the pole
/// terms; the solve runs in extended precision. The fit is checked on an offset circle.
pub fn pole_decomposition(
    g: &DescendantElement,
    a: Complex64,
    xs: &[Complex64],
    params: &ModelParams,
) -> Result<PoleDecomposition> {
    let (n, nb) = g.max_levels();
    let residues: Vec<Complex64> = (0..xs.len())
        .map(|i| {
            let rest: Vec<Complex64> = xs.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, y)| *y).collect();
            residue_kinematic(g, a, &rest, xs[i], params)
        })
        .collect::<Result<_>>()?;
    let d: Complex64 = residues.iter().sum();
    let scale = xs.iter().map(|x| x.norm()).fold(1.0, f64::max) * 1.7;
    let smooth = |x: Complex64| -> Result<Complex64> {
        let mut args = xs.to_vec();
        args.push(x);
        let poles: Complex64 = xs.iter().zip(&residues).map(|(xi, r)| xi * r / (x + xi)).sum();
        Ok(j_value(g, a, &args, params)? - poles)
    };
    let degs: Vec<i32> = (-(nb as i32)..=n as i32).collect();
    let m = 2 * (n + nb) as usize + 3;
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for k in 0..m {
        let x = Complex64::from_polar(scale, 2.0 * PI * (k as f64 + 0.31) / m as f64);
        let v = smooth(x)?;
        // columns scaled to unit size on the circle
        rows.push(degs.iter().map(|&s| XComplex::from_c64((x / scale).powi(s))).collect::<Vec<_>>());
        rhs.push(vec![XComplex::from_c64(v)]);
    }
    let sol = lstsq(&Mat::from_rows(&rows), &Mat::from_rows(&rhs), 1e-30)?;
    let mut c_inf = BTreeMap::new();
    for (i, &s) in degs.iter().enumerate() {
        c_inf.insert(s, sol.x.get(i, 0).to_c64() / scale.powi(s));
    }
    let mut c_zero = c_inf.clone();
    *c_zero.entry(0).or_insert(Complex64::new(0.0, 0.0)) += d;

    let mut dec = PoleDecomposition { residues, c_inf, c_zero, d, fit_residual: 0.0, top_defect: None, bottom_defect: None };
    let mut worst = 0.0f64;
    for k in 0..5 {
        let x = Complex64::from_polar(scale * 0.83, 2.0 * PI * (k as f64 + 0.5) / 5.0 + 0.2);
        let mut args = xs.to_vec();
        args.push(x);
        let want = j_value(g, a, &args, params)?;
        worst = worst.max((dec.eval(xs, x) - want).norm() / want.norm().max(1e-300));
    }
    dec.fit_residual = worst;
    let tol = 1e3 * params.tolerance;
    if !(worst <= tol) {
        return Err(Error::Decomposition { residual: worst, tolerance: tol });
    }
    if let Some((h, hb)) = single_product(g) {
        let one_point_top = limit_coefficient(&h, a, n as i32, params)?;
        let top = j_value(&hb, a, xs, params)? * one_point_top;
        let got = dec.c_inf.get(&(n as i32)).copied().unwrap_or_default();
        dec.top_defect = Some((got - top).norm() / top.norm().max(got.norm()).max(1e-300));
        let one_point_bottom = limit_coefficient(&hb, a, -(nb as i32), params)?;
        let bottom = j_value(&h, a, xs, params)? * one_point_bottom;
        let got = dec.c_zero.get(&-(nb as i32)).copied().unwrap_or_default();
        dec.bottom_defect = Some((got - bottom).norm() / bottom.norm().max(got.norm()).max(1e-300));
    }
    Ok(dec)
}

/// (h, h̄′) when g is a single monomial, as separate chiral and antichiral elements.
fn single_product(g: &DescendantElement) -> Option<(DescendantElement, DescendantElement)> {
    if g.len() != 1 {
        return None;
    }
    let ((c, b), coeff) = g.terms().next()?;
    let mut h = DescendantElement::zero();
    h.add_term((c.clone(), crate::algebra::Partition::empty()), coeff.clone()).ok()?;
    Some((h, DescendantElement::antichiral(b.clone())))
}

/// x^{−s} J^h_1(x): J_1 of a homogeneous level-s element is c·x^s, so any x gives the limit.
fn limit_coefficient(h: &DescendantElement, a: Complex64, s: i32, params: &ModelParams) -> Result<Complex64> {
    let x = Complex64::new(1.0, 0.0);
    Ok(j_value(h, a, &[x], params)? * x.powi(-s))
}
