//! The two-boson Heisenberg algebra [d^ε_m, d^{−ε}_{−m}] = m A^ε_m and linear forms in its modes.

use num_complex::Complex64;

use crate::params::ModelParams;

/// Label ± of a boson.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Minus => -1.0,
            Sign::Plus => 1.0,
        }
    }
}

/// Structure constants of the algebra, derived from ω = e^{iπp}.
#[derive(Clone, Debug)]
pub struct HeisenbergSpec {
    omega: Complex64,
}

impl HeisenbergSpec {
    pub fn new(params: &ModelParams) -> Self {
        HeisenbergSpec { omega: params.omega }
    }

    /// A⁺_m for m > 0: (ω^k − ω^{−k})² at m = 2k, ω^m − ω^{−m} at odd m.
    pub fn a_plus(&self, m: u32) -> Complex64 {
        assert!(m > 0, "modes start at 1");
        if m % 2 == 0 {
            let k = (m / 2) as i32;
            let d = self.omega.powi(k) - self.omega.powi(-k);
            d * d
        } else {
            self.omega.powi(m as i32) - self.omega.powi(-(m as i32))
        }
    }

    /// A^ε_m for any m ≠ 0, with A^ε_{−m} = A^{−ε}_m and A⁻_m = (−1)^m A⁺_m.
    pub fn a(&self, sign: Sign, m: i32) -> Complex64 {
        assert!(m != 0, "no zero mode");
        let (sign, m) = if m < 0 { (sign.flip(), -m) } else { (sign, m) };
        let ap = self.a_plus(m as u32);
        match sign {
            Sign::Plus => ap,
            Sign::Minus if m % 2 == 0 => ap,
            Sign::Minus => -ap,
        }
    }

    /// [d^ε_m, d^{ε′}_{m′}].
    pub fn commutator(&self, s: Sign, m: i32, s2: Sign, m2: i32) -> Complex64 {
        if s2 != s.flip() || m + m2 != 0 {
            return Complex64::new(0.0, 0.0);
        }
        m as f64 * self.a(s, m)
    }

    /// [L, L′] for two linear forms.
    pub fn bracket(&self, l: &LinearForm, r: &LinearForm) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(s, m, c) in &l.terms {
            for &(s2, m2, c2) in &r.terms {
                acc += c * c2 * self.commutator(s, m, s2, m2);
            }
        }
        acc
    }

    /// κ with [L, λ_ε(z)] = κ λ_ε(z), where λ_ε(z) = :exp(Σ_{n≠0} d^ε_n z^{−n}/n):.
    pub fn vertex_bracket(&self, l: &LinearForm, sign: Sign, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &(s, m, c) in &l.terms {
            if s == sign.flip() {
                // [d^s_m, d^ε_{−m}] z^{m}/(−m)
                acc -= c * self.a(s, m) * z.powi(m);
            }
        }
        acc
    }

    /// π_R(c_{−n}) = (d⁻_n − d⁺_n)/A⁺_n.
    pub fn pi_r(&self, n: u32) -> LinearForm {
        let inv = 1.0 / self.a_plus(n);
        LinearForm { terms: vec![(Sign::Minus, n as i32, inv), (Sign::Plus, n as i32, -inv)] }
    }

    /// π_L(c_{−n}) = (d⁻_{−n} − d⁺_{−n})/A⁺_n.
    pub fn pi_l(&self, n: u32) -> LinearForm {
        let inv = 1.0 / self.a_plus(n);
        LinearForm { terms: vec![(Sign::Minus, -(n as i32), inv), (Sign::Plus, -(n as i32), -inv)] }
    }

    /// [π_R(c_{−m}), π_L(c_{−n})].
    pub fn cross(&self, m: u32, n: u32) -> Complex64 {
        self.bracket(&self.pi_r(m), &self.pi_l(n))
    }

    /// Taylor coefficients of log⟨λ₊(z′)λ₋(z)⟩ = −Σ_m A⁺_m (z/z′)^m/m, for checking the pair factor.
    pub fn pair_log_series(&self, x: Complex64, terms: u32) -> Complex64 {
        (1..=terms).map(|m| -self.a_plus(m) * x.powi(m as i32) / m as f64).sum()
    }
}

/// Σ c·d^ε_m over a finite set of modes.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm {
    pub terms: Vec<(Sign, i32, Complex64)>,
}
