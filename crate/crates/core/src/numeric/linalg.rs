//! Dense complex least squares (generic Householder QR) and SVD-based rank helpers.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Clone, Debug)]
pub struct Mat<S> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<S>,
}

impl<S: Scalar> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<S>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut m = Mat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.data[i * c + j] = v.clone();
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_c64(&self) -> Mat<Complex64> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| v.to_c64()).collect() }
    }
}

/// Least-squares solution of `A X = B` with per-column residual norms.
#[derive(Clone, Debug)]
pub struct LstsqSolution<S> {
    pub x: Mat<S>,
    pub residuals: Vec<f64>,
    /// |R_ii| of the column-scaled triangular factor, in pivot order.
    pub r_diag: Vec<f64>,
}

/// Solve min ‖A X − B‖ column by column via Householder QR with column scaling.
/// Fails when the scaled triangular factor has a diagonal entry below `rank_tol`.
pub fn lstsq<S: Scalar>(a: &Mat<S>, b: &Mat<S>, rank_tol: f64) -> Result<LstsqSolution<S>> {
    let (m, n) = (a.rows, a.cols);
    if b.rows != m {
        return Err(Error::Solver(format!("row mismatch: A has {m}, B has {}", b.rows)));
    }
    if m < n {
        return Err(Error::Solver(format!("underdetermined system: {m} equations for {n} unknowns")));
    }
    let k = b.cols;
    let mut r = a.clone();
    let mut q = b.clone();

    let mut scale = vec![1.0f64; n];
    for j in 0..n {
        let s: f64 = (0..m).map(|i| r.get(i, j).modulus().powi(2)).sum::<f64>().sqrt();
        if s > 0.0 {
            scale[j] = s;
            let inv = S::from_f64(1.0 / s);
            for i in 0..m {
                let v = r.get(i, j).clone() * inv.clone();
                r.set(i, j, v);
            }
        }
    }

    for j in 0..n {
        // Householder vector for column j below the diagonal
        let mut norm_sq = S::zero();
        for i in j..m {
            let v = r.get(i, j).clone();
            norm_sq = norm_sq + v.clone() * v.conj();
        }
        let norm = norm_sq.sqrt();
        if norm.modulus() == 0.0 {
            continue;
        }
        let x0 = r.get(j, j).clone();
        let phase = if x0.modulus() == 0.0 { S::one() } else { x0.clone() / (x0.clone() * x0.conj()).sqrt() };
        let alpha = -(phase * norm);
        let mut v: Vec<S> = (j..m).map(|i| r.get(i, j).clone()).collect();
        v[0] = v[0].clone() - alpha.clone();
        let mut vnorm = S::zero();
        for e in &v {
            vnorm = vnorm + e.clone() * e.conj();
        }
        let vn = vnorm.sqrt();
        if vn.modulus() == 0.0 {
            continue;
        }
        for e in v.iter_mut() {
            *e = e.clone() / vn.clone();
        }
        let two = S::from_f64(2.0);
        for c in j..n {
            let mut dot = S::zero();
            for (t, e) in v.iter().enumerate() {
                dot = dot + e.conj() * r.get(j + t, c).clone();
            }
            for (t, e) in v.iter().enumerate() {
                let nv = r.get(j + t, c).clone() - two.clone() * e.clone() * dot.clone();
                r.set(j + t, c, nv);
            }
        }
        for c in 0..k {
            let mut dot = S::zero();
            for (t, e) in v.iter().enumerate() {
                dot = dot + e.conj() * q.get(j + t, c).clone();
            }
            for (t, e) in v.iter().enumerate() {
                let nv = q.get(j + t, c).clone() - two.clone() * e.clone() * dot.clone();
                q.set(j + t, c, nv);
            }
        }
    }

    let r_diag: Vec<f64> = (0..n).map(|j| r.get(j, j).modulus()).collect();
    let rmax = r_diag.iter().cloned().fold(0.0, f64::max);
    if let Some((j, d)) = r_diag.iter().enumerate().find(|(_, d)| **d <= rank_tol * rmax.max(f64::MIN_POSITIVE)) {
        return Err(Error::Solver(format!(
            "rank-deficient system: pivot {j} has |R| = {d:.3e} (max {rmax:.3e}); add samples"
        )));
    }

    let mut x: Mat<S> = Mat::zeros(n, k);
    for c in 0..k {
        for j in (0..n).rev() {
            let mut acc = q.get(j, c).clone();
            for t in j + 1..n {
                acc = acc - r.get(j, t).clone() * x.get(t, c).clone();
            }
            let v = acc / r.get(j, j).clone();
            x.set(j, c, v);
        }
    }
    for j in 0..n {
        let inv = S::from_f64(1.0 / scale[j]);
        for c in 0..k {
            let v = x.get(j, c).clone() * inv.clone();
            x.set(j, c, v);
        }
    }
    let residuals = (0..k)
        .map(|c| (n..m).map(|i| q.get(i, c).modulus().powi(2)).sum::<f64>().sqrt())
        .collect();
    Ok(LstsqSolution { x, residuals, r_diag })
}

/// Singular values (descending) of a complex matrix.
pub fn singular_values(a: &Mat<Complex64>) -> Vec<f64> {
    if a.rows == 0 || a.cols == 0 {
        return Vec::new();
    }
    let m = DMatrix::from_row_slice(a.rows, a.cols, &a.data);
    let mut sv: Vec<f64> = m.singular_values().iter().cloned().collect();
    sv.sort_by(|x, y| y.partial_cmp(x).unwrap());
    sv
}

/// Numerical rank: singular values above `tol · σ_max`.
pub fn numerical_rank(a: &Mat<Complex64>, tol: f64) -> usize {
    let sv = singular_values(a);
    match sv.first() {
        None => 0,
        Some(&smax) if smax == 0.0 => 0,
        Some(&smax) => sv.iter().filter(|&&s| s > tol * smax).count(),
    }
}

/// 2-norm condition number σ_max/σ_min (infinite for singular matrices).
pub fn condition_number(a: &Mat<Complex64>) -> f64 {
    let sv = singular_values(a);
    match (sv.first(), sv.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        _ => f64::INFINITY,
    }
}

/// Dense complex matrix product.
pub fn matmul(a: &Mat<Complex64>, b: &Mat<Complex64>) -> Mat<Complex64> {
    assert_eq!(a.cols, b.rows);
    let mut c = Mat::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for t in 0..a.cols {
            let av = a.data[i * a.cols + t];
            for j in 0..b.cols {
                c.data[i * b.cols + j] += av * b.data[t * b.cols + j];
            }
        }
    }
    c
}

/// Max-entry distance to the identity.
pub fn identity_defect(a: &Mat<Complex64>) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..a.rows {
        for j in 0..a.cols {
            let want = if i == j { 1.0 } else { 0.0 };
            d = d.max((a.data[i * a.cols + j] - want).norm());
        }
    }
    d
}
