//! Finite sums Σ c_k e^{r_k t} used for the t → ∞ tails of the exponent integrals.
//!
//! On t ≥ T an integrand (1/t)·Σ c_k e^{r_k t} integrates to Σ c_k E1(−r_k T). For Re r_k < 0
//! this is the ordinary integral; otherwise it is the analytic continuation (principal branch).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::gamma::e1;

/// Terms below this size (relative to the largest) are dropped when products are formed.
const DROP: f64 = 1e-22;

#[derive(Clone, Debug, Default)]
pub struct ExpSum {
    terms: Vec<(Complex64, Complex64)>,
}

impl ExpSum {
    pub fn new(terms: Vec<(Complex64, Complex64)>) -> Self {
        ExpSum { terms }
    }

    pub fn constant(c: Complex64) -> Self {
        ExpSum { terms: vec![(c, Complex64::new(0.0, 0.0))] }
    }

    /// sh(k t).
    pub fn sinh(k: Complex64) -> Self {
        ExpSum { terms: vec![(Complex64::new(0.5, 0.0), k), (Complex64::new(-0.5, 0.0), -k)] }
    }

    /// ch(k t).
    pub fn cosh(k: Complex64) -> Self {
        ExpSum { terms: vec![(Complex64::new(0.5, 0.0), k), (Complex64::new(0.5, 0.0), -k)] }
    }

    /// 1/sh(k t) = 2 Σ_j e^{−(2j+1)k t}, truncated so the remainder is below `tol` at t ≥ t0 (Re k > 0).
    pub fn inv_sinh(k: Complex64, t0: f64, tol: f64) -> Result<Self> {
        let kr = k.re * t0;
        if kr <= 0.0 {
            return Err(Error::Domain(format!("1/sh({k} t) has no decaying expansion")));
        }
        let n = ((-tol.ln()) / (2.0 * kr)).ceil() as usize + 1;
        Ok(ExpSum {
            terms: (0..n).map(|j| (Complex64::new(2.0, 0.0), -k * (2 * j + 1) as f64)).collect(),
        })
    }

    /// 1/sh²(k t) = 4 Σ_j (j+1) e^{−2(j+1)k t}.
    pub fn inv_sinh_sq(k: Complex64, t0: f64, tol: f64) -> Result<Self> {
        let kr = k.re * t0;
        if kr <= 0.0 {
            return Err(Error::Domain(format!("1/sh²({k} t) has no decaying expansion")));
        }
        let mut terms = Vec::new();
        let mut j = 0usize;
        loop {
            let w = 4.0 * (j + 1) as f64;
            terms.push((Complex64::new(w, 0.0), -k * (2 * (j + 1)) as f64));
            if w * (-2.0 * (j + 1) as f64 * kr).exp() < tol {
                break;
            }
            j += 1;
        }
        Ok(ExpSum { terms })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(mut self, s: Complex64) -> Self {
        for t in &mut self.terms {
            t.0 *= s;
        }
        self
    }

    pub fn add(mut self, o: &ExpSum) -> Self {
        self.terms.extend_from_slice(&o.terms);
        self
    }

    /// Product, keeping only terms that matter at t ≥ t0 and merging equal rates.
    pub fn mul(&self, o: &ExpSum, t0: f64) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (c1, r1) in &self.terms {
            for (c2, r2) in &o.terms {
                terms.push((c1 * c2, r1 + r2));
            }
        }
        ExpSum { terms }.compress(t0)
    }

    fn compress(mut self, t0: f64) -> Self {
        self.terms.sort_by(|a, b| {
            a.1.re.partial_cmp(&b.1.re).unwrap().then(a.1.im.partial_cmp(&b.1.im).unwrap())
        });
        let mut merged: Vec<(Complex64, Complex64)> = Vec::with_capacity(self.terms.len());
        for (c, r) in self.terms {
            match merged.last_mut() {
                Some((c0, r0)) if (*r0 - r).norm() <= 1e-13 * (1.0 + r.norm()) => *c0 += c,
                _ => merged.push((c, r)),
            }
        }
        let size = |c: &Complex64, r: &Complex64| c.norm() * (r.re * t0).exp();
        let biggest = merged.iter().map(|(c, r)| size(c, r)).fold(0.0, f64::max);
        merged.retain(|(c, r)| size(c, r) > DROP * biggest && *c != Complex64::new(0.0, 0.0));
        ExpSum { terms: merged }
    }

    /// Value at t.
    pub fn eval(&self, t: Complex64) -> Complex64 {
        self.terms.iter().map(|(c, r)| c * (r * t).exp()).sum()
    }

    /// ∫_{t0}^∞ dt/t · Σ c e^{r t} (continued where divergent). A zero rate is a genuine log divergence.
    pub fn tail_integral(&self, t0: f64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, r) in &self.terms {
            if r.norm() * t0 < 1e-12 {
                return Err(Error::Pole("logarithmically divergent tail (zero exponential rate)".into()));
            }
            acc += c * e1(-r * t0)?;
        }
        Ok(acc)
    }
}
