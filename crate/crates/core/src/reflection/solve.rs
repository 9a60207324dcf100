//! The reflection matrix on the level-n chiral subspace, fitted from sampled J-functions.

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{enumerate_partitions, DescendantElement, Partition};
use crate::error::{Error, Result};
use crate::jfunctions::j_value;
use crate::numeric::linalg::{condition_number, identity_defect, lstsq, matmul, Mat};
use crate::params::ModelParams;
use crate::sampling::Sampler;

/// Where the constraints came from.
#[derive(Clone, Debug, Serialize)]
pub struct SampleInfo {
    #[serde(rename = "N_values")]
    pub n_values: Vec<usize>,
    pub per_n: usize,
    pub seed: u64,
    pub equations: usize,
}

/// r_a on the level-n chiral subspace: J^{h_i}_{N,a} = Σ_j M_ij J^{h_j}_{N,−a} for all N.
#[derive(Clone, Debug, Serialize)]
pub struct ReflectionSolution {
    pub level: u32,
    /// Chiral monomials labelling rows and columns.
    pub basis: Vec<String>,
    #[serde(with = "matrix_json")]
    pub matrix: Mat<Complex64>,
    /// Largest residual of the least-squares fit relative to the size of the fitted column.
    pub residual: f64,
    /// Larger condition number of the column-normalized J-matrices at a and −a.
    pub condition: f64,
    pub samples: SampleInfo,
    #[serde(with = "crate::numeric::cjson")]
    pub a: Complex64,
    #[serde(skip)]
    pub partitions: Vec<Partition>,
}

mod matrix_json {
    use num_complex::Complex64;
    use serde::{Serialize, Serializer};

    use crate::numeric::cjson::ComplexJson;
    use crate::numeric::linalg::Mat;

    pub fn serialize<S: Serializer>(m: &Mat<Complex64>, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<ComplexJson>> =
            (0..m.rows).map(|i| (0..m.cols).map(|j| ComplexJson::from(*m.get(i, j))).collect()).collect();
        rows.serialize(s)
    }
}

/// Constraint sampling for `solve_reflection`.
#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Largest particle number used (default n + 4).
    pub n_max: Option<usize>,
    /// Random point sets per particle number.
    pub per_n: usize,
    pub seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { n_max: None, per_n: 0, seed: 1 }
    }
}

/// Particle numbers used at level n: N ≡ n (mod 2), 1 ≤ N ≤ n_max (N = 0 when n = 0).
pub fn sample_sizes(n: u32, n_max: usize) -> Vec<usize> {
    (0..=n_max).filter(|&k| (k + n as usize) % 2 == 0 && (k > 0 || n == 0)).collect()
}

/// Rows [J^{h_j}_{N,a}(X)]_j for every sampled (N, X).
fn j_rows(basis: &[Partition], a: Complex64, sets: &[Vec<Complex64>], params: &ModelParams) -> Result<Vec<Vec<Complex64>>> {
    let elems: Vec<DescendantElement> = basis.iter().map(|p| DescendantElement::chiral(p.clone())).collect();
    sets.iter().map(|xs| elems.iter().map(|h| j_value(h, a, xs, params)).collect()).collect()
}

fn normalized_condition(m: &Mat<Complex64>) -> f64 {
    let mut n = m.clone();
    for j in 0..n.cols {
        let s: f64 = (0..n.rows).map(|i| n.get(i, j).norm_sqr()).sum::<f64>().sqrt();
        for i in 0..n.rows {
            let x = *n.get(i, j) / s.max(1e-300);
            n.set(i, j, x);
        }
    }
    condition_number(&n)
}

/// Least-squares fit of M in J^{h_i}_{N,a} = Σ_j M_ij J^{h_j}_{N,−a} over sampled N and X.
pub fn solve_reflection(n: u32, a: Complex64, params: &ModelParams, opts: &SolveOptions) -> Result<ReflectionSolution> {
    params.ensure_generic(a)?;
    let basis = enumerate_partitions(n);
    let dim = basis.len();
    let n_max = opts.n_max.unwrap_or(n as usize + 4);
    let sizes = sample_sizes(n, n_max);
    let per_n = if opts.per_n > 0 { opts.per_n } else { (2 * dim).div_ceil(sizes.len().max(1)).max(2) };
    let mut sampler = Sampler::new(opts.seed);
    let mut sets = Vec::new();
    for &k in &sizes {
        for _ in 0..per_n {
            sets.push(sampler.generic_points(k, params));
        }
    }
    if sets.len() < dim {
        return Err(Error::Solver(format!(
            "{} sampled equations for {dim} unknowns per row; raise the samples per N or N_max",
            sets.len()
        )));
    }
    let lhs = j_rows(&basis, -a, &sets, params)?;
    let rhs = j_rows(&basis, a, &sets, params)?;
    let v = Mat::from_rows(&lhs);
    let w = Mat::from_rows(&rhs);
    let condition = normalized_condition(&v).max(normalized_condition(&w));
    let sol = lstsq(&v, &w, 1e-13).map_err(|e| {
        Error::Solver(format!("reflection constraints are rank deficient at level {n} ({e}); use more samples or larger N_max"))
    })?;
    let mut residual: f64 = 0.0;
    for (i, r) in sol.residuals.iter().enumerate() {
        let col: f64 = (0..w.rows).map(|k| w.get(k, i).norm_sqr()).sum::<f64>().sqrt();
        residual = residual.max(r / col.max(1e-300));
    }
    // lstsq returns Mᵀ (unknowns indexed by j, right-hand sides by i)
    let mut m = Mat::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            m.set(i, j, *sol.x.get(j, i));
        }
    }
    Ok(ReflectionSolution {
        level: n,
        basis: basis.iter().map(|p| p.to_string()).collect(),
        matrix: m,
        residual,
        condition,
        samples: SampleInfo { n_values: sizes, per_n, seed: opts.seed, equations: sets.len() },
        a,
        partitions: basis,
    })
}

impl ReflectionSolution {
    /// r_a(h) as an element: coefficients Mᵀ v for h = Σ v_i h_i.
    pub fn apply(&self, h: &DescendantElement) -> Result<DescendantElement> {
        let mut out = DescendantElement::zero();
        for ((c, b), x) in h.terms() {
            if !b.is_empty() || c.level() != self.level {
                return Err(Error::Domain(format!("{h} is not in the level-{} chiral subspace", self.level)));
            }
            let i = self.partitions.iter().position(|p| p == c).expect("basis covers the level");
            let x = x.at_a(self.a);
            for (j, p) in self.partitions.iter().enumerate() {
                out.add_term((p.clone(), Partition::empty()), crate::algebra::Coeff::Num(x * self.matrix.get(i, j)))?;
            }
        }
        Ok(out)
    }

    /// Largest relative misfit of J^{h_i}_{N,a}(X) − Σ_j M_ij J^{h_j}_{N,−a}(X) on fresh point sets.
    pub fn prediction_defect(&self, sets: &[Vec<Complex64>], params: &ModelParams) -> Result<f64> {
        let lhs = j_rows(&self.partitions, -self.a, sets, params)?;
        let rhs = j_rows(&self.partitions, self.a, sets, params)?;
        let mut worst: f64 = 0.0;
        for (l, r) in lhs.iter().zip(&rhs) {
            let scale = r.iter().chain(l).map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
            for i in 0..r.len() {
                let pred: Complex64 = (0..l.len()).map(|j| self.matrix.get(i, j) * l[j]).sum();
                worst = worst.max((pred - r[i]).norm() / scale);
            }
        }
        Ok(worst)
    }
}

/// max |M(a)M(−a) − 1|.
pub fn involution_defect(m_a: &ReflectionSolution, m_minus: &ReflectionSolution) -> f64 {
    identity_defect(&matmul(&m_a.matrix, &m_minus.matrix))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jfunctions::h2_element;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn low_levels_are_trivial() {
        let mp = ModelParams::new(0.31);
        for n in [0, 1] {
            let s = solve_reflection(n, c(0.13, 0.0), &mp, &SolveOptions::default()).unwrap();
            assert!((s.matrix.get(0, 0) - c(1.0, 0.0)).norm() < 1e-9, "level {n}");
            assert!(s.residual < 1e-10);
        }
    }

    #[test]
    fn level_two_fixes_the_self_dual_family() {
        let mp = ModelParams::new(0.31);
        let a = c(0.13, 0.0);
        let s = solve_reflection(2, a, &mp, &SolveOptions::default()).unwrap();
        assert!(s.residual < 1e-9, "{}", s.residual);
        let image = s.apply(&h2_element(a, &mp).unwrap()).unwrap();
        let want = h2_element(-a, &mp).unwrap();
        assert!(image.distance_at(&want, a) < 1e-8 * want.distance_at(&DescendantElement::zero(), a));
        let back = solve_reflection(2, -a, &mp, &SolveOptions::default()).unwrap();
        assert!(involution_defect(&s, &back) < 1e-8);
        let held_out: Vec<Vec<Complex64>> = (0..3).map(|k| Sampler::new(90 + k).generic_points(8, &mp)).collect();
        assert!(s.prediction_defect(&held_out, &mp).unwrap() < 1e-8);
        let v: serde_json::Value = serde_json::to_value(&s).unwrap();
        assert_eq!(v["matrix"].as_array().unwrap().len(), 2);
        assert_eq!(v["basis"], serde_json::json!(["c-2", "c-1^2"]));
    }

    #[test]
    fn degenerates_near_the_lattice() {
        let mp = ModelParams::new(0.3);
        assert!(matches!(solve_reflection(2, c(0.15, 0.0), &mp, &SolveOptions::default()), Err(Error::Degenerate { .. })));
        let near = solve_reflection(2, c(0.15 + 2e-6, 0.0), &mp, &SolveOptions::default());
        let far = solve_reflection(2, c(0.05, 0.0), &mp, &SolveOptions::default()).unwrap();
        match near {
            Ok(s) => assert!(s.condition > 100.0 * far.condition || s.residual > 1e3 * far.residual),
            Err(_) => {}
        }
    }
}
