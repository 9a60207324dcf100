//! Periodicity in a, cluster factorization and the level-2 self-dual pair.

use num_complex::Complex64;

use crate::algebra::{enumerate_partitions, DescendantElement};
use crate::error::Result;
use crate::jfunctions::{h11_element, h2_element, j_rho, j_value};
use crate::numeric::linalg::Mat;
use crate::params::ModelParams;
use crate::sampling::Sampler;

/// Relative defect of J^g_{N,a+1}(X) = (−1)^N J^g_{N,a}(X).
pub fn periodicity_defect(g: &DescendantElement, a: Complex64, xs: &[Complex64], params: &ModelParams) -> Result<f64> {
    let lhs = j_value(g, a + 1.0, xs, params)?;
    let rhs = j_value(g, a, xs, params)? * if xs.len() % 2 == 0 { 1.0 } else { -1.0 };
    Ok((lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(1e-300))
}

pub fn verify_periodicity(g: &DescendantElement, a: Complex64, xs: &[Complex64], params: &ModelParams) -> Result<bool> {
    Ok(periodicity_defect(g, a, xs, params)? <= params.tolerance)
}

/// The symbolic form of periodicity: every ρ-degree of J^g_N has the parity of N.
pub fn rho_parity_defect(g: &DescendantElement, xs: &[Complex64], params: &ModelParams) -> Result<f64> {
    let poly = j_rho(g, xs, params)?;
    Ok(poly.parity_defect(xs.len() as i32 % 2) / poly.max_abs().max(1e-300))
}

/// |J^{h h̄′}(Xe^Λ, X′) − J^h(Xe^Λ) J^{h̄′}(X′)| / |J^h J^{h̄′}| for chiral h, h′.
pub fn verify_cluster(
    h: &DescendantElement,
    hp: &DescendantElement,
    a: Complex64,
    xs: &[Complex64],
    xps: &[Complex64],
    lambda: f64,
    params: &ModelParams,
) -> Result<f64> {
    let boost = lambda.exp();
    let big: Vec<Complex64> = xs.iter().map(|x| x * boost).collect();
    let hb = hp.swap_chirality();
    let mut all = big.clone();
    all.extend_from_slice(xps);
    let joint = j_value(&h.mul(&hb)?, a, &all, params)?;
    let left = j_value(h, a, &big, params)?;
    let right = j_value(&hb, a, xps, params)?;
    let prod = left * right;
    Ok((joint - prod).norm() / prod.norm().max(1e-300))
}

/// (h^{(1,1)}_a, h^{(2)}_a).
pub fn self_dual_level2(a: Complex64, params: &ModelParams) -> Result<(DescendantElement, DescendantElement)> {
    Ok((h11_element(), h2_element(a, params)?))
}

/// Smallest normalized singular value of the sampled J-matrix [J^{h_j}_{N,a}(X_i)] over the
/// level-n chiral monomials; zero signals a kernel of g ↦ J^g.
pub fn bijection_margin(n: u32, a: Complex64, params: &ModelParams, seed: u64) -> Result<f64> {
    let basis = enumerate_partitions(n);
    let sizes = super::solve::sample_sizes(n, n as usize + 4);
    let mut sampler = Sampler::new(seed);
    let mut rows = Vec::new();
    for &k in &sizes {
        for _ in 0..basis.len().max(2) {
            let xs = sampler.generic_points(k, params);
            let row: Vec<Complex64> = basis
                .iter()
                .map(|p| j_value(&DescendantElement::chiral(p.clone()), a, &xs, params))
                .collect::<Result<_>>()?;
            let s = row.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
            rows.push(row.into_iter().map(|z| z / s).collect::<Vec<_>>());
        }
    }
    let sv = crate::numeric::linalg::singular_values(&Mat::from_rows(&rows));
    Ok(sv.last().copied().unwrap_or(0.0) / sv.first().copied().unwrap_or(1.0).max(1e-300))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_element;
    use crate::numeric::cos_pi;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn periodicity() {
        let mp = ModelParams::new(0.3);
        let a = c(0.12, 0.0);
        let one = DescendantElement::one();
        let v = j_value(&one, a + 1.0, &[c(0.5, 0.1)], &mp).unwrap();
        assert!((v + 2.0 * cos_pi(a)).norm() < 1e-14);
        let g = parse_element("c-2").unwrap();
        for n in 1..=5 {
            let x = Sampler::new(n as u64).generic_points(n, &mp);
            assert!(verify_periodicity(&g, a, &x, &mp).unwrap());
            assert_eq!(rho_parity_defect(&g, &x, &mp).unwrap(), 0.0);
        }
    }

    #[test]
    fn cluster_decays() {
        let mp = ModelParams::new(0.3);
        let a = c(0.17, 0.0);
        let (h, hp) = (parse_element("c-1^2").unwrap(), parse_element("c-2").unwrap());
        let x = Sampler::new(3).generic_points(5, &mp);
        let (xs, xps) = x.split_at(2);
        let d20 = verify_cluster(&h, &hp, a, xs, xps, 20.0, &mp).unwrap();
        let d30 = verify_cluster(&h, &hp, a, xs, xps, 30.0, &mp).unwrap();
        assert!(d30 < 1e-8, "{d30}");
        assert!(d30 < d20 || d30 < 1e-12);
        let one = DescendantElement::one();
        assert!(verify_cluster(&one, &one, a, xs, xps, 25.0, &mp).unwrap() < 1e-9);
    }

    #[test]
    fn self_dual_closed_forms() {
        let mp = ModelParams::new(0.31);
        let a = c(0.13, 0.0);
        let (h11, h2) = self_dual_level2(a, &mp).unwrap();
        let x = [c(0.8, 0.3), c(-0.4, 1.1)];
        let v = j_value(&h11, a, &x, &mp).unwrap();
        assert!((v - 4.0 * cos_pi(a).powi(2) * (x[0] + x[1]).powi(2)).norm() < 1e-13);
        let v = j_value(&h2, a, &x, &mp).unwrap();
        assert!((v - c(0.0, 4.0) * x[0] * x[1]).norm() < 1e-13);
    }

    #[test]
    fn bijection_breaks_on_the_lattice() {
        let mp = ModelParams::new(0.3);
        let generic = bijection_margin(2, c(0.07, 0.0), &mp, 5).unwrap();
        assert!(generic > 1e-6);
        let lattice = bijection_margin(2, c(0.15, 0.0), &mp, 5).unwrap().min(bijection_margin(2, c(-0.15, 0.0), &mp, 5).unwrap());
        assert!(lattice < 1e-10 * generic.max(1.0), "{lattice} vs {generic}");
    }
}
