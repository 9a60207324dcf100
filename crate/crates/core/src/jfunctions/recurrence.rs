//! Recursion in the particle number for the exponential family and the level-2 family h^{(2)}_a.
//!
//! Both recursions peel off the last point x of X and express J(X′, x) through the residues at
//! x = −x_i (functions of N−2 points) and a Laurent part fixed by the asymptotics. Values on
//! subsets of the input are memoized by bitmask.

use std::collections::HashMap;

use num_complex::Complex64;

use super::residues::residue_factor;
use crate::algebra::RhoLaurent;
use crate::error::{Error, Result};
use crate::numeric::cos_pi;
use crate::params::ModelParams;

/// Below this |cos πa| the 1/cos πa term of the level-2 recursion is formed by exact ρ-division.
pub const COS_SWITCH: f64 = 1e-3;

/// Points of `xs` selected by `mask`, in order.
fn subset(xs: &[Complex64], mask: u64) -> Vec<Complex64> {
    (0..xs.len()).filter(|i| mask >> i & 1 == 1).map(|i| xs[i]).collect()
}

/// Bit positions of `mask`, ascending.
fn members(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

fn check_size(n: usize) -> Result<()> {
    if n > 63 {
        return Err(Error::Domain(format!("recursion supports at most 63 points, got {n}")));
    }
    Ok(())
}

/// Common skeleton: value(mask) = base(mask) + Σ_i pole_i(mask), where pole_i uses value(mask ∖ {i, last}).
struct Memo<'a, T> {
    xs: &'a [Complex64],
    params: &'a ModelParams,
    cache: HashMap<u64, T>,
}

/// Ring of values carried by the exponential recursion.
trait Value: Clone {
    fn from_c(z: Complex64) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn scale(&self, z: Complex64) -> Self;
    fn two_cos(&self, cos2: Complex64) -> Self;
}

impl Value for Complex64 {
    fn from_c(z: Complex64) -> Self {
        z
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn scale(&self, z: Complex64) -> Self {
        self * z
    }
    fn two_cos(&self, cos2: Complex64) -> Self {
        self * cos2
    }
}

impl Value for RhoLaurent {
    fn from_c(z: Complex64) -> Self {
        RhoLaurent::constant(z)
    }
    fn add(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }
    fn scale(&self, z: Complex64) -> Self {
        RhoLaurent::scale(self, z)
    }
    fn two_cos(&self, _: Complex64) -> Self {
        self * &RhoLaurent::two_cos()
    }
}

impl<'a, T: Value> Memo<'a, T> {
    fn exponential(&mut self, mask: u64, cos2: Complex64) -> Result<T> {
        if let Some(v) = self.cache.get(&mask) {
            return Ok(v.clone());
        }
        let idx = members(mask);
        let v = match idx.len() {
            0 => T::from_c(Complex64::new(1.0, 0.0)),
            1 => T::from_c(Complex64::new(1.0, 0.0)).two_cos(cos2),
            _ => {
                let last = *idx.last().expect("nonempty");
                let x = self.xs[last];
                let rest = mask & !(1 << last);
                let mut acc = self.exponential(rest, cos2)?.two_cos(cos2);
                for &i in &idx[..idx.len() - 1] {
                    let inner = rest & !(1 << i);
                    let xi = self.xs[i];
                    let fac = residue_factor(&subset(self.xs, inner), xi, self.params)?;
                    let r = self.exponential(inner, cos2)?;
                    acc = acc.add(&r.scale(fac * xi / (x + xi)));
                }
                acc
            }
        };
        self.cache.insert(mask, v.clone());
        Ok(v)
    }
}

/// J_{N,a}(X) from J(X′, x) = 2cos πa·J(X′) + Σ_i x_i R_i(X′)/(x + x_i), J_0 = 1, J_1 = 2cos πa.
pub fn recur_exponential(a: Complex64, xs: &[Complex64], params: &ModelParams) -> Result<Complex64> {
    check_size(xs.len())?;
    super::kernel::check_points(xs)?;
    let mut memo: Memo<Complex64> = Memo { xs, params, cache: HashMap::new() };
    memo.exponential((1u64 << xs.len()) - 1, 2.0 * cos_pi(a))
}

/// The same recursion with 2cos πa = ρ + ρ⁻¹ kept symbolic.
pub fn recur_exponential_rho(xs: &[Complex64], params: &ModelParams) -> Result<RhoLaurent> {
    check_size(xs.len())?;
    super::kernel::check_points(xs)?;
    let mut memo: Memo<RhoLaurent> = Memo { xs, params, cache: HashMap::new() };
    memo.exponential((1u64 << xs.len()) - 1, Complex64::new(0.0, 0.0))
}

struct Level2<'a> {
    xs: &'a [Complex64],
    params: &'a ModelParams,
    a: Complex64,
    cos2: Complex64,
    exact_division: bool,
    exp_num: Memo<'a, Complex64>,
    exp_rho: Memo<'a, RhoLaurent>,
    cache: HashMap<u64, Complex64>,
}

impl<'a> Level2<'a> {
    /// (2i/cos πa)·J_{M,a}(X) for the subset `mask`.
    fn pole_term(&mut self, mask: u64) -> Result<Complex64> {
        if !self.exact_division {
            let j = self.exp_num.exponential(mask, self.cos2)?;
            return Ok(Complex64::new(0.0, 4.0) * j / self.cos2);
        }
        let j = self.exp_rho.exponential(mask, self.cos2)?;
        let tol = 1e-9 * j.max_abs().max(1.0);
        let q = j.div_two_cos(tol).map_err(|_| {
            Error::Pole(format!(
                "J_{} is not divisible by 2cos πa; the level-2 recursion has a genuine pole at cos πa = 0",
                members(mask).len()
            ))
        })?;
        Ok(Complex64::new(0.0, 4.0) * q.eval_at_a(self.a))
    }

    fn value(&mut self, mask: u64) -> Result<Complex64> {
        if let Some(v) = self.cache.get(&mask) {
            return Ok(*v);
        }
        let idx = members(mask);
        let v = if idx.len() < 2 {
            Complex64::new(0.0, 0.0)
        } else {
            let last = *idx.last().expect("nonempty");
            let x = self.xs[last];
            let rest = mask & !(1 << last);
            let s1: Complex64 = members(rest).iter().map(|&i| self.xs[i]).sum();
            let mut acc = x * s1 * self.pole_term(rest)? + self.cos2 * self.value(rest)?;
            for &i in &idx[..idx.len() - 1] {
                let inner = rest & !(1 << i);
                let xi = self.xs[i];
                let fac = residue_factor(&subset(self.xs, inner), xi, self.params)?;
                let r = fac * self.value(inner)?;
                // −x_i⁻¹ R_i/(x⁻¹ + x_i⁻¹) = −x R_i/(x + x_i)
                acc -= x * r / (x + xi);
            }
            acc
        };
        self.cache.insert(mask, v);
        Ok(v)
    }
}

/// J^{h^{(2)}_a}_{N,a}(X) from J(X′, x) = −Σ_i x R_i(X′)/(x + x_i) + x·(2i/cos πa)·S_1(X′)J_{N−1,a}(X′)
/// + 2cos πa·J^{h^{(2)}_a}_{N−1,a}(X′), with J_0 = J_1 = 0. Near cos πa = 0 the middle term uses
/// the exact quotient J_{N−1}/(ρ + ρ⁻¹).
pub fn recur_level2(a: Complex64, xs: &[Complex64], params: &ModelParams) -> Result<Complex64> {
    check_size(xs.len())?;
    super::kernel::check_points(xs)?;
    let cos2 = 2.0 * cos_pi(a);
    let mut st = Level2 {
        xs,
        params,
        a,
        cos2,
        exact_division: cos2.norm() < 2.0 * COS_SWITCH,
        exp_num: Memo { xs, params, cache: HashMap::new() },
        exp_rho: Memo { xs, params, cache: HashMap::new() },
        cache: HashMap::new(),
    };
    st.value((1u64 << xs.len()) - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DescendantElement;
    use crate::jfunctions::direct::{j_rho, j_value};
    use crate::jfunctions::level2::h2_element;
    use crate::sampling::Sampler;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exponential_matches_direct() {
        let mp = ModelParams::new(0.37);
        let a = c(0.19, 0.0);
        for n in 0..=7 {
            let x = Sampler::new(n as u64 + 40).generic_points(n, &mp);
            let r = recur_exponential(a, &x, &mp).unwrap();
            let d = j_value(&DescendantElement::one(), a, &x, &mp).unwrap();
            assert!((r - d).norm() < 1e-10 * d.norm().max(1.0), "N={n}: {r} vs {d}");
            assert!((recur_exponential(-a, &x, &mp).unwrap() - r).norm() < 1e-10 * r.norm().max(1.0));
            let poly = recur_exponential_rho(&x, &mp).unwrap();
            let direct = j_rho(&DescendantElement::one(), &x, &mp).unwrap();
            assert!((poly.clone() - direct).max_abs() < 1e-9 * poly.max_abs().max(1.0));
        }
    }

    #[test]
    fn level2_matches_direct() {
        let mp = ModelParams::new(0.31);
        let a = c(0.13, 0.0);
        let h = h2_element(a, &mp).unwrap();
        for n in 0..=6 {
            let x = Sampler::new(n as u64 + 7).generic_points(n, &mp);
            let r = recur_level2(a, &x, &mp).unwrap();
            let d = j_value(&h, a, &x, &mp).unwrap();
            assert!((r - d).norm() < 1e-9 * d.norm().max(1.0), "N={n}: {r} vs {d}");
            assert!((recur_level2(-a, &x, &mp).unwrap() - r).norm() < 1e-9 * r.norm().max(1.0));
        }
        let x = [c(0.8, 0.3), c(-0.4, 1.1)];
        let two = recur_level2(a, &x, &mp).unwrap();
        assert!((two - c(0.0, 4.0) * x[0] * x[1]).norm() < 1e-13);
    }

    #[test]
    fn level2_continuous_through_half() {
        let mp = ModelParams::new(0.31);
        for n in [2usize, 3, 4, 5] {
            let x = Sampler::new(n as u64).generic_points(n, &mp);
            let at = recur_level2(c(-0.5, 0.0), &x, &mp).unwrap();
            let near = recur_level2(c(-0.5 + 1e-9, 0.0), &x, &mp).unwrap();
            assert!((at - near).norm() < 1e-5 * at.norm().max(1.0), "N={n}: {at} vs {near}");
        }
    }
}
