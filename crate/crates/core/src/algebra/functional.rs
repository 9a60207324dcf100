//! Power sums and the symmetric functionals P^g(X₋|X₊).

use num_complex::Complex64;

use super::element::{Coeff, DescendantElement};
use super::partition::{enumerate_partitions, Partition};
use super::rho::RhoLaurent;
use crate::error::{Error, Result};
use crate::numeric::linalg::{numerical_rank, Mat};
use crate::numeric::Scalar;
use crate::params::ModelParams;
use crate::sampling::Sampler;

/// Σ x_i^r; zero for the empty list.
pub fn power_sum<S: Scalar>(r: i32, xs: &[S]) -> Result<S> {
    if r == 0 {
        return Err(Error::Domain("power sum of order 0 is not a generator".into()));
    }
    let mut acc = S::zero();
    for x in xs {
        if r < 0 && x.is_zero() {
            return Err(Error::Domain("negative power sum with a zero coordinate".into()));
        }
        acc = acc + x.powi(r);
    }
    Ok(acc)
}

/// P^{c_{−n}} = S_n(X₋) − (−1)^n S_n(X₊).
pub fn p_chiral<S: Scalar>(n: u32, xm: &[S], xp: &[S]) -> Result<S> {
    let a = power_sum(n as i32, xm)?;
    let b = power_sum(n as i32, xp)?;
    Ok(if n % 2 == 0 { a - b } else { a + b })
}

/// P^{c̄_{−n}} = S_{−n}(X₊) − (−1)^n S_{−n}(X₋).
pub fn p_antichiral<S: Scalar>(n: u32, xm: &[S], xp: &[S]) -> Result<S> {
    let a = power_sum(-(n as i32), xp)?;
    let b = power_sum(-(n as i32), xm)?;
    Ok(if n % 2 == 0 { a - b } else { a + b })
}

/// P of a single monomial (no coefficient).
pub fn p_monomial<S: Scalar>(chiral: &Partition, antichiral: &Partition, xm: &[S], xp: &[S]) -> Result<S> {
    let mut v = S::one();
    for (m, k) in chiral.multiplicities() {
        v = v * p_chiral(m, xm, xp)?.powi(k as i32);
    }
    for (m, k) in antichiral.multiplicities() {
        v = v * p_antichiral(m, xm, xp)?.powi(k as i32);
    }
    Ok(v)
}

/// P^g(X₋|X₊): numeric for numeric elements, a ρ-polynomial for ρ-mode elements.
pub fn eval_p(g: &DescendantElement, xm: &[Complex64], xp: &[Complex64]) -> Result<Coeff> {
    if g.is_rho_mode() {
        let mut acc = RhoLaurent::zero();
        for ((c, a), x) in g.terms() {
            acc = acc + x.to_rho().scale(p_monomial(c, a, xm, xp)?);
        }
        Ok(Coeff::Rho(acc))
    } else {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((c, a), x) in g.terms() {
            acc += x.at_a(Complex64::new(0.0, 0.0)) * p_monomial(c, a, xm, xp)?;
        }
        Ok(Coeff::Num(acc))
    }
}

/// P^g at a numeric a (ρ-coefficients evaluated at a).
pub fn eval_p_at(g: &DescendantElement, a: Complex64, xm: &[Complex64], xp: &[Complex64]) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for ((c, an), x) in g.terms() {
        acc += x.at_a(a) * p_monomial(c, an, xm, xp)?;
    }
    Ok(acc)
}

fn coeff_distance(x: &Coeff, y: &Coeff) -> (f64, f64) {
    match (x, y) {
        (Coeff::Num(a), Coeff::Num(b)) => ((a - b).norm(), a.norm().max(b.norm())),
        _ => {
            let (a, b) = (x.to_rho(), y.to_rho());
            ((a.clone() - b.clone()).max_abs(), a.max_abs().max(b.max_abs()))
        }
    }
}

/// Kinematic chain: P^g(X∪{−x} | {x}∪Y) = P^g(X|Y) to `tol` (relative, floor 1).
pub fn check_kinematic_chain(
    g: &DescendantElement,
    xs: &[Complex64],
    x: Complex64,
    ys: &[Complex64],
    tol: f64,
) -> bool {
    let mut xm = xs.to_vec();
    xm.push(-x);
    let mut xp = vec![x];
    xp.extend_from_slice(ys);
    match (eval_p(g, &xm, &xp), eval_p(g, xs, ys)) {
        (Ok(l), Ok(r)) => {
            let (d, scale) = coeff_distance(&l, &r);
            d <= tol * scale.max(1.0)
        }
        _ => false,
    }
}

/// Numerical rank of [P^{h_j}(X₋^{(i)}|X₊^{(i)})] over the level-n chiral monomial basis.
///
/// Each sample uses `num_vars` points split evenly between X₋ and X₊.
pub fn level_rank(n: u32, params: &ModelParams, num_vars: usize, seed: u64) -> usize {
    let basis = enumerate_partitions(n);
    let rows = basis.len() + 4;
    let mut sampler = Sampler::new(seed);
    let mut m = Mat::<Complex64>::zeros(rows, basis.len());
    for i in 0..rows {
        let pts = sampler.generic_points(num_vars, params);
        let (xm, xp) = pts.split_at(num_vars / 2);
        for (j, h) in basis.iter().enumerate() {
            let v = p_monomial(h, &Partition::empty(), xm, xp).unwrap_or_default();
            m.set(i, j, v);
        }
    }
    normalized_rank(&mut m, params.tolerance)
}

/// Column-normalized numerical rank with relative threshold `tol`.
pub fn normalized_rank(m: &mut Mat<Complex64>, tol: f64) -> usize {
    for j in 0..m.cols {
        let s: f64 = (0..m.rows).map(|i| m.get(i, j).norm_sqr()).sum::<f64>().sqrt();
        if s > 0.0 {
            for i in 0..m.rows {
                let v = *m.get(i, j) / s;
                m.set(i, j, v);
            }
        }
    }
    numerical_rank(m, tol)
}
