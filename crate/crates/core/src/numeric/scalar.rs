use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

/// Complex field used by the generic kernels: `Complex64` or the extended type.
pub trait Scalar:
    Clone
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_c64(z: Complex64) -> Self;
    fn to_c64(&self) -> Complex64;
    /// Modulus, rounded to double.
    fn modulus(&self) -> f64;
    fn conj(&self) -> Self;
    /// Principal square root.
    fn sqrt(&self) -> Self;
    /// e^{iπz}, evaluated at the native precision from the double input.
    fn exp_i_pi(z: Complex64) -> Self;
    /// Unit roundoff of the type.
    fn epsilon() -> f64;

    fn from_f64(x: f64) -> Self {
        Self::from_c64(Complex64::new(x, 0.0))
    }

    fn is_zero(&self) -> bool {
        self.modulus() == 0.0
    }

    fn powi(&self, n: i32) -> Self {
        let mut base = if n < 0 { Self::one() / self.clone() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_c64(z: Complex64) -> Self {
        z
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn modulus(&self) -> f64 {
        self.norm()
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn sqrt(&self) -> Self {
        Complex64::sqrt(*self)
    }
    fn exp_i_pi(z: Complex64) -> Self {
        exp_i_pi(z)
    }
    fn epsilon() -> f64 {
        f64::EPSILON
    }
}

/// e^{iπz} with exact values at integer and half-integer real z.
pub fn exp_i_pi(z: Complex64) -> Complex64 {
    let scale = (-std::f64::consts::PI * z.im).exp();
    let (s, c) = sin_cos_pi(z.re);
    Complex64::new(scale * c, scale * s)
}

/// (sin πx, cos πx) with argument reduction mod 2 so that integer and half-integer points are exact.
pub fn sin_cos_pi(x: f64) -> (f64, f64) {
    let r = x - 2.0 * (x / 2.0).round();
    if r == 0.0 {
        return (0.0, 1.0);
    }
    if r == 0.5 {
        return (1.0, 0.0);
    }
    if r == -0.5 {
        return (-1.0, 0.0);
    }
    if r == 1.0 || r == -1.0 {
        return (0.0, -1.0);
    }
    let t = std::f64::consts::PI * r;
    (t.sin(), t.cos())
}

/// Complex sin(πz).
pub fn sin_pi(z: Complex64) -> Complex64 {
    let (s, c) = sin_cos_pi(z.re);
    let y = std::f64::consts::PI * z.im;
    Complex64::new(s * y.cosh(), c * y.sinh())
}

/// Complex cos(πz).
pub fn cos_pi(z: Complex64) -> Complex64 {
    let (s, c) = sin_cos_pi(z.re);
    let y = std::f64::consts::PI * z.im;
    Complex64::new(c * y.cosh(), -s * y.sinh())
}

/// Relative deviation |x − y| / max(|x|, |y|, floor).
pub fn rel_dev(x: Complex64, y: Complex64, floor: f64) -> f64 {
    let scale = x.norm().max(y.norm()).max(floor);
    (x - y).norm() / scale
}
