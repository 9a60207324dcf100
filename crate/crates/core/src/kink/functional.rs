//! Q^h_{N,M}(X|Z) = (A(x_1)…A(x_N) D(z_1)…D(z_M), h) with A(z) = exp Σ C_{−m} z^m and
//! D(z) = exp 2Σ(−1)^{m−1} C_{−2m} z^{2m}.

use num_complex::Complex64;

use super::element::{kink_constant, KinkElement};
use crate::algebra::functional::normalized_rank;
use crate::algebra::{enumerate_partitions, eval_p_at, power_sum, DescendantElement, Partition};
use crate::error::Result;
use crate::identities::IdentityReport;
use crate::numeric::exp_i_pi;
use crate::numeric::linalg::Mat;
use crate::params::ModelParams;
use crate::sampling::Sampler;

fn psum(r: i32, xs: &[Complex64]) -> Result<Complex64> {
    if xs.is_empty() {
        Ok(Complex64::new(0.0, 0.0))
    } else {
        power_sum(r, xs)
    }
}

/// Coefficient of c_{−m} in the exponent of the current product: (S_m(X) + [m = 2r] 2(−1)^{r−1} S_m(Z)) / K_m.
/// Negative m gives the antichiral mirror with S_{−|m|}.
pub fn current_exponent(m: i32, xs: &[Complex64], zs: &[Complex64], params: &ModelParams) -> Result<Complex64> {
    let k = kink_constant(m.unsigned_abs(), params)?;
    let mut t = psum(m, xs)?;
    if m % 2 == 0 {
        let r = m.abs() / 2;
        let sign = if r % 2 == 1 { 2.0 } else { -2.0 };
        t += sign * psum(m, zs)?;
    }
    Ok(t / k)
}

/// Q^h_{N,M}(X|Z) by the explicit product formula.
pub fn q_eval(h: &KinkElement, xs: &[Complex64], zs: &[Complex64], params: &ModelParams) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (c, a, x, _) in h.terms() {
        let mut v = x;
        for (m, k) in c.multiplicities() {
            v *= current_exponent(m as i32, xs, zs, params)?.powi(k as i32);
        }
        for (m, k) in a.multiplicities() {
            v *= current_exponent(-(m as i32), xs, zs, params)?.powi(k as i32);
        }
        acc += v;
    }
    Ok(acc)
}

/// |Q(X, x, −x | Z, ix) − Q(X|Z)| relative to |Q(X|Z)| (floor 1).
pub fn chain_defect(
    h: &KinkElement,
    xs: &[Complex64],
    zs: &[Complex64],
    x: Complex64,
    params: &ModelParams,
) -> Result<f64> {
    let mut xl = xs.to_vec();
    xl.extend([x, -x]);
    let mut zl = zs.to_vec();
    zl.push(Complex64::i() * x);
    let big = q_eval(h, &xl, &zl, params)?;
    let small = q_eval(h, xs, zs, params)?;
    Ok((big - small).norm() / small.norm().max(1.0))
}

/// P^h(X₋|X₊) = Q^h_{2N,N}(−iω^{1/2}X, iω^{−1/2}X | ω^{−1/2}X₋, ω^{1/2}X₊) with X = X₋ ∪ X₊.
pub fn pq_consistency(h: &KinkElement, xm: &[Complex64], xp: &[Complex64], params: &ModelParams) -> Result<IdentityReport> {
    let half = exp_i_pi(params.p / 2.0);
    let i = Complex64::i();
    let all: Vec<Complex64> = xm.iter().chain(xp).copied().collect();
    let mut qx: Vec<Complex64> = all.iter().map(|x| -i * half * x).collect();
    qx.extend(all.iter().map(|x| i / half * x));
    let qz: Vec<Complex64> = xm.iter().map(|x| x / half).chain(xp.iter().map(|x| x * half)).collect();
    let lhs = eval_p_at(&h.element, Complex64::new(0.0, 0.0), xm, xp)?;
    let rhs = q_eval(h, &qx, &qz, params)?;
    let r = IdentityReport::new("pq_consistency", params, Complex64::new(0.0, 0.0), &all, lhs, rhs);
    Ok(r.relative_to(1.0).with_note(format!("N_minus = {}", xm.len())))
}

/// Numerical rank of [Q^{h_j}(X_i|Z_i)] over the level-n chiral monomials, with N x-variables
/// and M z-variables per sample.
pub fn q_rank(n: u32, num_x: usize, num_z: usize, params: &ModelParams, seed: u64) -> Result<usize> {
    let basis = enumerate_partitions(n);
    let elems = basis
        .iter()
        .map(|p| KinkElement::new(DescendantElement::chiral(p.clone()), params))
        .collect::<Result<Vec<_>>>()?;
    let rows = basis.len() + 4;
    let mut sampler = Sampler::new(seed);
    let mut m = Mat::<Complex64>::zeros(rows, basis.len());
    for r in 0..rows {
        let pts = sampler.generic_points(num_x + num_z, params);
        let (xs, zs) = pts.split_at(num_x);
        for (j, h) in elems.iter().enumerate() {
            m.set(r, j, q_eval(h, xs, zs, params)?);
        }
    }
    Ok(normalized_rank(&mut m, params.tolerance))
}

/// Largest relative change of Q under a random permutation of X and a cyclic shift of Z.
pub fn symmetry_defect(h: &KinkElement, xs: &[Complex64], zs: &[Complex64], params: &ModelParams) -> Result<f64> {
    let base = q_eval(h, xs, zs, params)?;
    let mut xr = xs.to_vec();
    xr.reverse();
    let mut zr = zs.to_vec();
    zr.rotate_left(zs.len().min(1));
    let mut worst: f64 = 0.0;
    for (x, z) in [(&xr, zs), (&xs.to_vec(), zr.as_slice())] {
        let v = q_eval(h, x, z, params)?;
        worst = worst.max((v - base).norm() / base.norm().max(1.0));
    }
    Ok(worst)
}

/// |Q(λX, λZ) − λ^n Q(X, Z)| relative, for a chiral level-n element.
pub fn homogeneity_defect(
    h: &KinkElement,
    level: u32,
    xs: &[Complex64],
    zs: &[Complex64],
    lambda: Complex64,
    params: &ModelParams,
) -> Result<f64> {
    let sx: Vec<Complex64> = xs.iter().map(|x| x * lambda).collect();
    let sz: Vec<Complex64> = zs.iter().map(|z| z * lambda).collect();
    let lhs = q_eval(h, &sx, &sz, params)?;
    let rhs = lambda.powi(level as i32) * q_eval(h, xs, zs, params)?;
    Ok((lhs - rhs).norm() / rhs.norm().max(lhs.norm()).max(1e-300))
}

/// Chiral monomials of level n as kink elements.
pub fn level_basis(n: u32, params: &ModelParams) -> Result<Vec<KinkElement>> {
    enumerate_partitions(n)
        .into_iter()
        .map(|p: Partition| KinkElement::new(DescendantElement::chiral(p), params))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_element, partition_count};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn first_level() {
        let mp = ModelParams::new(0.3);
        let h = KinkElement::new(DescendantElement::c(1), &mp).unwrap();
        let xs = [c(0.3, 0.9), c(-1.2, 0.4)];
        let q = q_eval(&h, &xs, &[c(2.0, 0.0)], &mp).unwrap();
        assert!((q - (xs[0] + xs[1]) / kink_constant(1, &mp).unwrap()).norm() < 1e-14);
        let one = KinkElement::new(DescendantElement::one(), &mp).unwrap();
        assert_eq!(q_eval(&one, &xs, &[], &mp).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn currents_cancel_on_the_chain() {
        // A(x)A(−x)D(ix) = 1: every exponent coefficient vanishes
        let mp = ModelParams::new(0.41);
        let x = c(0.8, -0.3);
        for m in 1..=8 {
            for s in [1, -1] {
                let e = current_exponent(s * m, &[x, -x], &[Complex64::i() * x], &mp).unwrap();
                assert!(e.norm() < 1e-13, "m={m}");
            }
        }
    }

    #[test]
    fn chain_and_pq() {
        let mp = ModelParams::new(0.33);
        let mut s = Sampler::new(17);
        for src in ["1", "c-1", "c-2*c-1", "c-2^2 + (0.5-2i)*c-3*c-1 + c-4", "c-1*cbar-2"] {
            let h = KinkElement::new(parse_element(src).unwrap(), &mp).unwrap();
            for (nx, nz) in [(0, 0), (2, 1), (3, 2)] {
                let pts = s.generic_points(nx + nz + 1, &mp);
                let d = chain_defect(&h, &pts[..nx], &pts[nx..nx + nz], pts[nx + nz], &mp).unwrap();
                assert!(d < 1e-12, "{src}: {d}");
            }
            for (a, b) in [(1, 1), (2, 1), (0, 2)] {
                let pts = s.generic_points(a + b, &mp);
                let r = pq_consistency(&h, &pts[..a], &pts[a..], &mp).unwrap();
                assert!(r.deviation < 1e-12, "{src}: {r:?}");
            }
        }
    }

    #[test]
    fn ranks_match_partition_counts() {
        let mp = ModelParams::new(0.3);
        for n in 0..=6 {
            assert_eq!(q_rank(n, n as usize + 1, n as usize / 2 + 1, &mp, 3).unwrap() as u64, partition_count(n), "n={n}");
        }
    }

    #[test]
    fn symmetry_and_homogeneity() {
        let mp = ModelParams::new(0.29);
        let mut s = Sampler::new(6);
        for n in 1..=4 {
            for h in level_basis(n, &mp).unwrap() {
                let pts = s.generic_points(5, &mp);
                let (xs, zs) = pts.split_at(3);
                assert!(symmetry_defect(&h, xs, zs, &mp).unwrap() < 1e-13);
                assert!(homogeneity_defect(&h, n, xs, zs, c(1.3, -0.6), &mp).unwrap() < 1e-13);
            }
        }
    }
}
