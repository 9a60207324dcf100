//! The two-particle kernel f(x) = (x+ω)(x−ω⁻¹)/(x²−1).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::Scalar;
use crate::params::ModelParams;

/// Relative distance below which an argument counts as sitting on a pole.
pub const POLE_GUARD: f64 = 1e-13;

/// f(x) = 1 + (ω − ω⁻¹)/(x − x⁻¹); pole error at x ∈ {0, ±1}.
pub fn f_kernel(x: Complex64, params: &ModelParams) -> Result<Complex64> {
    check_argument(x)?;
    Ok(f_value(x, params.omega))
}

pub(crate) fn check_argument(x: Complex64) -> Result<()> {
    if x.norm() == 0.0 || !x.is_finite() {
        return Err(Error::Pole(format!("kernel argument {x} is zero or not finite")));
    }
    if (x - 1.0).norm() < POLE_GUARD || (x + 1.0).norm() < POLE_GUARD {
        return Err(Error::Pole(format!(
            "kernel argument {x} sits on x = ±1; use residue_kinematic for x_i = −x_j, coincident points are regular only as limits"
        )));
    }
    Ok(())
}

/// Unchecked kernel in any scalar field.
pub fn f_value<S: Scalar>(x: S, omega: S) -> S {
    let one = S::one();
    let num = (x.clone() + omega.clone()) * (x.clone() - one.clone() / omega);
    num / (x.clone() * x - one)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limits_and_symmetry() {
        let mp = ModelParams::new(0.37);
        let big = f_kernel(Complex64::new(1e8, 0.0), &mp).unwrap();
        assert!((big - 1.0).norm() < 1e-7);
        let x = Complex64::new(0.6, -0.9);
        let a = f_kernel(-x, &mp).unwrap();
        let b = f_kernel(1.0 / x, &mp).unwrap();
        assert!((a - b).norm() < 1e-14);
        let sum = f_kernel(x, &mp).unwrap() + b;
        assert!((sum - 2.0).norm() < 1e-14);
    }

    #[test]
    fn residue_at_one() {
        let mp = ModelParams::new(0.37);
        let eps = 1e-7;
        let x = Complex64::new(1.0 + eps, 0.0);
        let r = (x - 1.0) * f_kernel(x, &mp).unwrap();
        assert!((r - mp.delta() / 2.0).norm() < 1e-6);
    }

    #[test]
    fn poles_rejected() {
        let mp = ModelParams::new(0.37);
        for x in [0.0, 1.0, -1.0] {
            assert!(matches!(f_kernel(Complex64::new(x, 0.0), &mp), Err(Error::Pole(_))));
        }
    }
}
