//! Laurent polynomials in ρ = e^{iπa} with complex coefficients.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::cjson::ComplexJson;
use crate::numeric::exp_i_pi;

/// Finite Laurent polynomial Σ c_d ρ^d; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RhoLaurent {
    coeffs: BTreeMap<i32, Complex64>,
}

impl RhoLaurent {
    pub fn zero() -> Self {
        RhoLaurent::default()
    }

    pub fn one() -> Self {
        RhoLaurent::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        RhoLaurent::monomial(0, c)
    }

    pub fn monomial(deg: i32, c: Complex64) -> Self {
        let mut r = RhoLaurent::zero();
        r.add_term(deg, c);
        r
    }

    /// ρ + ρ⁻¹ = 2cos πa.
    pub fn two_cos() -> Self {
        let one = Complex64::new(1.0, 0.0);
        RhoLaurent::monomial(1, one) + RhoLaurent::monomial(-1, one)
    }

    pub fn from_map(map: BTreeMap<i32, Complex64>) -> Self {
        let mut r = RhoLaurent::zero();
        for (d, c) in map {
            r.add_term(d, c);
        }
        r
    }

    pub fn add_term(&mut self, deg: i32, c: Complex64) {
        let e = self.coeffs.entry(deg).or_insert(Complex64::new(0.0, 0.0));
        *e += c;
        if *e == Complex64::new(0.0, 0.0) {
            self.coeffs.remove(&deg);
        }
    }

    pub fn coeff(&self, deg: i32) -> Complex64 {
        self.coeffs.get(&deg).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, Complex64)> + '_ {
        self.coeffs.iter().map(|(d, c)| (*d, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        RhoLaurent::from_map(self.coeffs.iter().map(|(d, c)| (*d, c * s)).collect())
    }

    /// Value at a given ρ.
    pub fn eval(&self, rho: Complex64) -> Complex64 {
        self.coeffs.iter().map(|(d, c)| c * rho.powi(*d)).sum()
    }

    /// Value at ρ = e^{iπa}.
    pub fn eval_at_a(&self, a: Complex64) -> Complex64 {
        self.coeffs.iter().map(|(d, c)| c * exp_i_pi(a * *d as f64)).sum()
    }

    /// ρ → ρ⁻¹ (a → −a).
    pub fn reflect(&self) -> Self {
        RhoLaurent { coeffs: self.coeffs.iter().map(|(d, c)| (-d, *c)).collect() }
    }

    /// d/da, using dρ^d/da = iπd ρ^d.
    pub fn d_da(&self) -> Self {
        RhoLaurent::from_map(self.coeffs.iter().map(|(d, c)| (*d, c * Complex64::new(0.0, PI * *d as f64))).collect())
    }

    /// Largest |c| over the support.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// max_d |c_d − c_{−d}|.
    pub fn palindromy_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (d, c) in &self.coeffs {
            worst = worst.max((c - self.coeff(-d)).norm());
        }
        worst
    }

    /// Largest |c_d| over degrees with d ≢ parity (mod 2).
    pub fn parity_defect(&self, parity: i32) -> f64 {
        self.coeffs
            .iter()
            .filter(|(d, _)| (*d - parity).rem_euclid(2) != 0)
            .map(|(_, c)| c.norm())
            .fold(0.0, f64::max)
    }

    /// Exact quotient by ρ + ρ⁻¹. Fails if the remainder exceeds `tol` relative to the largest coefficient.
    pub fn div_two_cos(&self, tol: f64) -> Result<Self> {
        let (lo, hi) = match (self.min_degree(), self.max_degree()) {
            (Some(l), Some(h)) => (l, h),
            _ => return Ok(RhoLaurent::zero()),
        };
        // q has degrees lo+1 ..= hi-1; synthetic division from the top
        let mut rem: BTreeMap<i32, Complex64> = self.coeffs.clone();
        let mut q = RhoLaurent::zero();
        let mut d = hi;
        while d > lo + 1 {
            let c = rem.get(&d).copied().unwrap_or_default();
            if c != Complex64::new(0.0, 0.0) {
                q.add_term(d - 1, c);
                rem.remove(&d);
                *rem.entry(d - 2).or_default() -= c;
            }
            d -= 1;
        }
        let left: f64 = rem.values().map(|c| c.norm()).fold(0.0, f64::max);
        if left > tol * self.max_abs().max(f64::MIN_POSITIVE) {
            return Err(Error::Domain(format!("polynomial not divisible by rho + 1/rho (remainder {left:.3e})")));
        }
        Ok(q)
    }
}

impl Add for RhoLaurent {
    type Output = RhoLaurent;
    fn add(mut self, o: RhoLaurent) -> RhoLaurent {
        for (d, c) in o.coeffs {
            self.add_term(d, c);
        }
        self
    }
}

impl Sub for RhoLaurent {
    type Output = RhoLaurent;
    fn sub(self, o: RhoLaurent) -> RhoLaurent {
        self + (-o)
    }
}

impl Neg for RhoLaurent {
    type Output = RhoLaurent;
    fn neg(self) -> RhoLaurent {
        RhoLaurent { coeffs: self.coeffs.into_iter().map(|(d, c)| (d, -c)).collect() }
    }
}

impl Mul for &RhoLaurent {
    type Output = RhoLaurent;
    fn mul(self, o: &RhoLaurent) -> RhoLaurent {
        let mut r = RhoLaurent::zero();
        for (d1, c1) in &self.coeffs {
            for (d2, c2) in &o.coeffs {
                r.add_term(d1 + d2, c1 * c2);
            }
        }
        r
    }
}

impl Mul for RhoLaurent {
    type Output = RhoLaurent;
    fn mul(self, o: RhoLaurent) -> RhoLaurent {
        &self * &o
    }
}

impl fmt::Display for RhoLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*rho^{d}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RhoJson {
    // string keys so the map survives untagged (buffered) deserialization
    rho_degrees: BTreeMap<String, ComplexJson>,
}

impl Serialize for RhoLaurent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RhoJson { rho_degrees: self.coeffs.iter().map(|(d, c)| (d.to_string(), (*c).into())).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RhoLaurent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = RhoJson::deserialize(d)?;
        let mut map = BTreeMap::new();
        for (k, c) in j.rho_degrees {
            let deg: i32 = k.trim().parse().map_err(|_| serde::de::Error::custom(format!("bad rho degree {k:?}")))?;
            map.insert(deg, Complex64::from(c));
        }
        Ok(RhoLaurent::from_map(map))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_matches_cosine() {
        let t = RhoLaurent::two_cos();
        let a = c(0.23, 0.0);
        assert!((t.eval_at_a(a) - 2.0 * (PI * 0.23).cos()).norm() < 1e-15);
        assert!((t.eval(exp_i_pi(a)) - t.eval_at_a(a)).norm() < 1e-15);
    }

    #[test]
    fn derivative_matches_difference() {
        let p = RhoLaurent::from_map([(-3, c(0.5, 1.0)), (1, c(-2.0, 0.3)), (2, c(0.0, 1.0))].into_iter().collect());
        let a = c(0.17, 0.0);
        let h = 1e-6;
        let fd = (p.eval_at_a(a + h) - p.eval_at_a(a - h)) / (2.0 * h);
        assert!((p.d_da().eval_at_a(a) - fd).norm() < 1e-8);
    }

    #[test]
    fn exact_division() {
        let q = RhoLaurent::from_map([(-2, c(1.0, 2.0)), (0, c(3.0, 0.0)), (3, c(0.0, -1.0))].into_iter().collect());
        let p = &q * &RhoLaurent::two_cos();
        let back = p.div_two_cos(1e-14).unwrap();
        assert!((back - q).max_abs() < 1e-15);
        assert!(RhoLaurent::one().div_two_cos(1e-12).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let p = RhoLaurent::from_map([(-1, c(1.0, 2.0)), (1, c(3.0, 0.0))].into_iter().collect());
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("rho_degrees"));
        let q: RhoLaurent = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn reflection_and_palindromy() {
        let t = &RhoLaurent::two_cos() * &RhoLaurent::two_cos();
        assert_eq!(t.palindromy_defect(), 0.0);
        assert_eq!(t.parity_defect(0), 0.0);
        let m = RhoLaurent::monomial(1, c(1.0, 0.0));
        assert_eq!(m.reflect().coeff(-1), c(1.0, 0.0));
    }
}
