//! Complex Γ (Lanczos) and the exponential integral E1 (principal branch).

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn check_pole(z: Complex64) -> Result<()> {
    let n = z.re.round();
    if n <= 0.0 && (z - Complex64::new(n, 0.0)).norm() < 1e-13 {
        return Err(Error::Domain(format!("Gamma pole at z = {n}")));
    }
    Ok(())
}

/// log Γ(z) on some branch (only exp of it is meaningful across the reflection).
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    check_pole(z)?;
    if z.re < 0.5 {
        let s = (z * PI).sin();
        return Ok(Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma(Complex64::new(1.0, 0.0) - z)?);
    }
    let z1 = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        x += *c / (z1 + i as f64);
    }
    let t = z1 + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (z1 + 0.5) * t.ln() - t + x.ln())
}

/// Γ(z) for complex z.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(ln_gamma(z)?.exp())
}

/// Exponential integral E1(z) = ∫_z^∞ e^{−t}/t dt, principal branch (cut on the negative real axis).
pub fn e1(z: Complex64) -> Result<Complex64> {
    let r = z.norm();
    if r == 0.0 {
        return Err(Error::Pole("E1 at z = 0".into()));
    }
    if r <= 2.0 || r - (-z.re).max(0.0) <= 4.0 {
        return Ok(e1_series(z));
    }
    e1_continued_fraction(z)
}

fn e1_series(z: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut k = 1.0f64;
    loop {
        term *= -z / k;
        let add = term / k;
        sum += add;
        if add.norm() <= 1e-17 * sum.norm().max(1e-300) && k > z.norm() {
            break;
        }
        k += 1.0;
        if k > 2000.0 {
            break;
        }
    }
    -EULER_GAMMA - z.ln() - sum
}

fn e1_continued_fraction(z: Complex64) -> Result<Complex64> {
    // modified Lentz on e^{-z} / (z + 1 - 1/(z + 3 - 4/(z + 5 - ...)))
    let tiny = 1e-300;
    let mut b = z + 1.0;
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..10_000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        if c.norm() < tiny {
            c = Complex64::new(tiny, 0.0);
        }
        let del = c * d;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            return Ok(h * (-z).exp());
        }
    }
    Err(Error::Domain(format!("E1 continued fraction did not converge at z = {z}")))
}
