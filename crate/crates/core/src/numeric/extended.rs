//! Extended-precision complex numbers over `astro_float::BigFloat` (256-bit mantissa).

use std::cell::RefCell;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_complex::Complex64;

use super::scalar::Scalar;

/// Mantissa bits (about 77 decimal digits).
pub const XPREC: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

fn bf(x: f64) -> BigFloat {
    BigFloat::from_f64(x, XPREC)
}

/// Round a `BigFloat` to the nearest double (truncating beyond 128 mantissa bits).
pub fn bigfloat_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    let (m, _, s, e, _) = x.as_raw_parts().expect("finite value");
    let top = *m.last().unwrap_or(&0) as f64;
    let next = if m.len() >= 2 { m[m.len() - 2] as f64 } else { 0.0 };
    let frac = (top + next / 18446744073709551616.0) / 18446744073709551616.0;
    let mag = frac * 2f64.powi(e);
    if s == Sign::Neg {
        -mag
    } else {
        mag
    }
}

#[derive(Clone)]
pub struct XComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl XComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        XComplex { re, im }
    }

    fn norm_sqr_bf(&self) -> BigFloat {
        let a = self.re.mul(&self.re, XPREC, RM);
        let b = self.im.mul(&self.im, XPREC, RM);
        a.add(&b, XPREC, RM)
    }
}

impl fmt::Debug for XComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{:?}", self.to_c64())
    }
}

impl Add for XComplex {
    type Output = XComplex;
    fn add(self, o: XComplex) -> XComplex {
        XComplex::new(self.re.add(&o.re, XPREC, RM), self.im.add(&o.im, XPREC, RM))
    }
}

impl Sub for XComplex {
    type Output = XComplex;
    fn sub(self, o: XComplex) -> XComplex {
        XComplex::new(self.re.sub(&o.re, XPREC, RM), self.im.sub(&o.im, XPREC, RM))
    }
}

impl Mul for XComplex {
    type Output = XComplex;
    fn mul(self, o: XComplex) -> XComplex {
        let rr = self.re.mul(&o.re, XPREC, RM);
        let ii = self.im.mul(&o.im, XPREC, RM);
        let ri = self.re.mul(&o.im, XPREC, RM);
        let ir = self.im.mul(&o.re, XPREC, RM);
        XComplex::new(rr.sub(&ii, XPREC, RM), ri.add(&ir, XPREC, RM))
    }
}

impl Div for XComplex {
    type Output = XComplex;
    fn div(self, o: XComplex) -> XComplex {
        let d = o.norm_sqr_bf();
        let num = self * o.conj();
        XComplex::new(num.re.div(&d, XPREC, RM), num.im.div(&d, XPREC, RM))
    }
}

impl Neg for XComplex {
    type Output = XComplex;
    fn neg(self) -> XComplex {
        XComplex::new(self.re.neg(), self.im.neg())
    }
}

impl Scalar for XComplex {
    fn zero() -> Self {
        XComplex::new(bf(0.0), bf(0.0))
    }
    fn one() -> Self {
        XComplex::new(bf(1.0), bf(0.0))
    }
    fn from_c64(z: Complex64) -> Self {
        XComplex::new(bf(z.re), bf(z.im))
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(bigfloat_to_f64(&self.re), bigfloat_to_f64(&self.im))
    }
    fn modulus(&self) -> f64 {
        bigfloat_to_f64(&self.norm_sqr_bf().sqrt(XPREC, RM))
    }
    fn conj(&self) -> Self {
        XComplex::new(self.re.clone(), self.im.clone().neg())
    }
    fn sqrt(&self) -> Self {
        if self.re.is_zero() && self.im.is_zero() {
            return Self::zero();
        }
        let r = self.norm_sqr_bf().sqrt(XPREC, RM);
        let two = bf(2.0);
        let u = r.add(&self.re, XPREC, RM).div(&two, XPREC, RM).sqrt(XPREC, RM);
        let v = r.sub(&self.re, XPREC, RM).div(&two, XPREC, RM).sqrt(XPREC, RM);
        if self.im.is_negative() {
            XComplex::new(u, v.neg())
        } else {
            XComplex::new(u, v)
        }
    }
    fn exp_i_pi(z: Complex64) -> Self {
        with_consts(|cc| {
            let pi = cc.pi(XPREC, RM);
            let re = bf(z.re);
            let im = bf(z.im);
            // reduce mod 2 in extended precision so half-integers stay exact
            let two = bf(2.0);
            let q = re.div(&two, XPREC, RM);
            let k = q.add(&bf(0.5), XPREC, RM).floor();
            let red = re.sub(&k.mul(&two, XPREC, RM), XPREC, RM);
            let arg = pi.mul(&red, XPREC, RM);
            let c = arg.cos(XPREC, RM, cc);
            let s = arg.sin(XPREC, RM, cc);
            let scale = pi.mul(&im, XPREC, RM).neg().exp(XPREC, RM, cc);
            XComplex::new(c.mul(&scale, XPREC, RM), s.mul(&scale, XPREC, RM))
        })
    }
    fn epsilon() -> f64 {
        2f64.powi(-(XPREC as i32) + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_double() {
        for &x in &[1.0, -0.3, 1e-200, 3.7e150, -2.5e-7] {
            let z = XComplex::from_c64(Complex64::new(x, -x / 3.0));
            let back = z.to_c64();
            assert_eq!(back.re, x);
            assert!((back.im + x / 3.0).abs() <= 1e-16 * x.abs());
        }
    }

    #[test]
    fn field_operations_beyond_double() {
        let third = XComplex::one() / XComplex::from_f64(3.0);
        let back = third.clone() * XComplex::from_f64(3.0) - XComplex::one();
        assert!(back.modulus() < 1e-70);
        let z = XComplex::from_c64(Complex64::new(0.4, -1.1));
        let s = z.sqrt();
        assert!((s.clone() * s - z).modulus() < 1e-70);
    }

    #[test]
    fn phase_is_unimodular_and_accurate() {
        let z = XComplex::exp_i_pi(Complex64::new(0.3, 0.0));
        let want = crate::numeric::scalar::exp_i_pi(Complex64::new(0.3, 0.0));
        assert!((z.to_c64() - want).norm() < 1e-15);
        let m = z.clone() * z.conj() - XComplex::one();
        assert!(m.modulus() < 1e-70);
        let h = XComplex::exp_i_pi(Complex64::new(-0.5, 0.0));
        assert!((h - XComplex::from_c64(Complex64::new(0.0, -1.0))).modulus() < 1e-70);
    }
}
