//! The identities at a = −1/2, where h^{(2)}_a has a removable tan πa singularity.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::derivative::d_da_j;
use super::report::IdentityReport;
use crate::algebra::{power_sum, DescendantElement, Partition};
use crate::error::{Error, Result};
use crate::jfunctions::{h2_element, j_value};
use crate::params::ModelParams;

const HALF: Complex64 = Complex64 { re: -0.5, im: 0.0 };

/// Half-width of the symmetric stencil used by `h2_limit_numeric`.
pub const LIMIT_STEP: f64 = 2e-3;

fn times(g: &DescendantElement, extra: &DescendantElement) -> Result<DescendantElement> {
    if g.is_rho_mode() || extra.is_rho_mode() {
        g.to_rho().mul(&extra.to_rho())
    } else {
        g.mul(extra)
    }
}

/// lim_{a→−1/2} J^{h^{(2)}_a g}_{N,a}(X) from the finite rewriting
/// (J^{c_{−2}g}_{N,−1/2} + (i/π) d/da J^{c_{−1}² g}_{N,a}|_{−1/2}) / sin πp.
///
/// Exact whenever J^{c_{−1}² g}_{N,−1/2} = 0, which holds for all N (S₁ = 0 at N = 0 and J_{N,−1/2} = 0 otherwise).
pub fn h2_limit_finite(g: &DescendantElement, xs: &[Complex64], params: &ModelParams) -> Result<Complex64> {
    let c2 = times(&DescendantElement::c(2), g)?;
    let c11 = times(&DescendantElement::chiral(Partition::new(vec![1, 1])), g)?;
    let first = j_value(&c2, HALF, xs, params)?;
    let second = Complex64::i() / PI * d_da_j(&c11, xs, params, HALF)?;
    Ok((first + second) / params.sin_pi_p())
}

/// The same limit taken numerically: symmetric averages at a = −1/2 ± ε and ±ε/2, Richardson-combined.
pub fn h2_limit_numeric(g: &DescendantElement, xs: &[Complex64], params: &ModelParams, eps: f64) -> Result<Complex64> {
    let sym = |e: f64| -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for s in [-1.0, 1.0] {
            let a = HALF + s * e;
            acc += j_value(&times(&h2_element(a, params)?, g)?, a, xs, params)?;
        }
        Ok(acc / 2.0)
    };
    Ok((4.0 * sym(eps / 2.0)? - sym(eps)?) / 3.0)
}

/// S₁(X)S₋₁(X)·J′_N(X) = (π/sin πp)·J_{N,p−1/2}(X) for odd N, with J′_N = d/da J_{N,a} at a = −1/2.
pub fn check_eom(xs: &[Complex64], params: &ModelParams) -> Result<IdentityReport> {
    if xs.len() % 2 == 0 {
        return Err(Error::Domain(format!("the equation of motion is checked for odd N, got {}", xs.len())));
    }
    let one = DescendantElement::one();
    let lhs = power_sum(1, xs)? * power_sum(-1, xs)? * d_da_j(&one, xs, params, HALF)?;
    let rhs = PI / params.sin_pi_p() * j_value(&one, params.p - 0.5, xs, params)?;
    Ok(IdentityReport::new("eom", params, HALF, xs, lhs, rhs))
}

/// lim_{a→−1/2} J^{h^{(2)}_a c̄_{−1}}_{N,a} = (i/2sin²πp)(J^{c_{−1}}_{N,−1/2+p} + J^{c_{−1}}_{N,−1/2−p}) for even N.
pub fn check_em_conservation(xs: &[Complex64], params: &ModelParams) -> Result<IdentityReport> {
    if xs.len() % 2 == 1 {
        return Err(Error::Domain(format!("energy–momentum conservation is checked for even N, got {}", xs.len())));
    }
    let lhs = h2_limit_finite(&DescendantElement::cbar(1), xs, params)?;
    let c1 = DescendantElement::c(1);
    let s = params.sin_pi_p();
    let rhs = Complex64::i() / (2.0 * s * s)
        * (j_value(&c1, HALF + params.p, xs, params)? + j_value(&c1, HALF - params.p, xs, params)?);
    Ok(IdentityReport::new("em_conservation", params, HALF, xs, lhs, rhs))
}

/// lim_{a→−1/2} J^{h^{(2)}_a}_{N,a} = (J^{c_{−2}}_{N,−1/2} + (i/π)S₁²·J′_N)/sin πp. The left side is the
/// numerical limit, the right side the closed finite form.
pub fn check_t_identification(xs: &[Complex64], params: &ModelParams) -> Result<IdentityReport> {
    let one = DescendantElement::one();
    let lhs = h2_limit_numeric(&one, xs, params, LIMIT_STEP)?;
    let s1 = if xs.is_empty() { Complex64::new(0.0, 0.0) } else { power_sum(1, xs)? };
    let first = j_value(&DescendantElement::c(2), HALF, xs, params)?;
    let second = Complex64::i() / PI * s1 * s1 * d_da_j(&one, xs, params, HALF)?;
    let sin = params.sin_pi_p();
    let rhs = (first + second) / sin;
    // both sides vanish for odd N, so the size of the individual terms sets the scale
    let scale = first.norm().max(second.norm()) / sin.norm();
    Ok(IdentityReport::new("T_identification", params, HALF, xs, lhs, rhs).relative_to(scale))
}

/// J^{c_{1−2n}g} = S_{2n−1}(X)·J^g and J^{c̄_{1−2n}g} = S_{1−2n}(X)·J^g; the report carries the worse of the two.
pub fn check_odd_generator(
    g: &DescendantElement,
    n: u32,
    xs: &[Complex64],
    a: Complex64,
    params: &ModelParams,
) -> Result<IdentityReport> {
    if n == 0 {
        return Err(Error::Domain("odd generators are c_{1−2n} with n ≥ 1".into()));
    }
    let k = 2 * n - 1;
    let jg = j_value(g, a, xs, params)?;
    let sum = |r: i32| -> Result<Complex64> {
        if xs.is_empty() {
            Ok(Complex64::new(0.0, 0.0))
        } else {
            power_sum(r, xs)
        }
    };
    let chiral = IdentityReport::new(
        "odd_generator",
        params,
        a,
        xs,
        j_value(&times(&DescendantElement::c(k), g)?, a, xs, params)?,
        sum(k as i32)? * jg,
    );
    let anti = IdentityReport::new(
        "odd_generator_bar",
        params,
        a,
        xs,
        j_value(&times(&DescendantElement::cbar(k), g)?, a, xs, params)?,
        sum(-(k as i32))? * jg,
    );
    Ok(chiral
        .absorb(&anti)
        .with_note(format!("c_{{-{k}}} and cbar_{{-{k}}} act as the integrals of motion I_{{±{k}}} up to -1/J_{k}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_element;
    use crate::sampling::Sampler;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eom_one_particle() {
        let mp = ModelParams::new(0.3);
        let r = check_eom(&[c(0.6, -0.4)], &mp).unwrap();
        assert!((Complex64::from(r.lhs) - 2.0 * PI).norm() < 1e-12);
        assert!(r.pass, "{r:?}");
        assert!(check_eom(&[c(0.6, -0.4), c(1.0, 0.3)], &mp).is_err());
    }

    #[test]
    fn eom_random() {
        let mp = ModelParams::new(0.29).with_tolerance(1e-9);
        let mut s = Sampler::new(8);
        for n in [3, 5] {
            let r = check_eom(&s.generic_points(n, &mp), &mp).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn em_conservation() {
        let mp = ModelParams::new(0.31).with_tolerance(1e-9);
        let r = check_em_conservation(&[], &mp).unwrap();
        assert_eq!(Complex64::from(r.lhs), c(0.0, 0.0));
        assert!(r.pass);
        let mut s = Sampler::new(12);
        for n in [2, 4] {
            let r = check_em_conservation(&s.generic_points(n, &mp), &mp).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn finite_form_is_the_limit() {
        let mp = ModelParams::new(0.31);
        let mut s = Sampler::new(3);
        for g in [DescendantElement::one(), DescendantElement::cbar(1)] {
            for n in 0..=4 {
                let x = s.generic_points(n, &mp);
                let fin = h2_limit_finite(&g, &x, &mp).unwrap();
                let num = h2_limit_numeric(&g, &x, &mp, LIMIT_STEP).unwrap();
                assert!((fin - num).norm() <= 1e-8 * fin.norm().max(1.0), "N={n}: {fin} {num}");
            }
        }
    }

    #[test]
    fn t_identification() {
        let mp = ModelParams::new(0.27).with_tolerance(1e-8);
        let mut s = Sampler::new(21);
        for n in [1, 2, 3, 4] {
            let r = check_t_identification(&s.generic_points(n, &mp), &mp).unwrap();
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn odd_generators() {
        let mp = ModelParams::new(0.3);
        let a = c(0.17, 0.0);
        let mut s = Sampler::new(5);
        for (src, n) in [("1", 1), ("c-2", 2), ("c-1*cbar-2", 1), ("(0.5+1i)*c-2 + cbar-1^2", 3)] {
            let g = parse_element(src).unwrap();
            for k in 0..=4 {
                let r = check_odd_generator(&g, n, &s.generic_points(k, &mp), a, &mp).unwrap();
                assert!(r.pass, "{src} n={n} N={k}: {r:?}");
            }
        }
        let json = serde_json::to_value(check_odd_generator(&DescendantElement::one(), 1, &[c(1.0, 0.0)], a, &mp).unwrap()).unwrap();
        assert_eq!(json["N"], 1);
        assert!(json["note"].is_string());
    }
}
