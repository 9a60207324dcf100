//! Level states ⟨n;Ξ;H| generated by t- and s-currents on the bra vacuum, the reduction
//! conditions selecting the image of π_R (or π_L), and the even projectors P_{2k}.

use num_complex::Complex64;
use serde::Serialize;

use super::heisenberg::{HeisenbergSpec, Sign};
use super::vector::{level_basis, FockVector, Side};
use super::vertex::{letter_contraction, Letter};
use crate::algebra::DescendantElement;
use crate::error::{Error, Result};
use crate::numeric::linalg::{lstsq, numerical_rank, Mat};
use crate::numeric::{cos_pi, exp_i_pi, sin_pi};
use crate::params::ModelParams;
use crate::sampling::Sampler;

/// ⟨1|π_R(h) (bra) or π_L(h)|1⟩ (ket) for a chiral element h at the given a.
pub fn projected_vector(h: &DescendantElement, side: Side, a: Complex64, params: &ModelParams) -> Result<FockVector> {
    let spec = HeisenbergSpec::new(params);
    let mut out = FockVector::zero(side);
    for ((c, b), x) in h.terms() {
        if !b.is_empty() {
            return Err(Error::Domain(format!("expected a chiral element, found {h}")));
        }
        let mut v = FockVector::vacuum(side);
        for &n in c.parts() {
            // (d⁻ − d⁺)/A⁺_n with modes ±n according to the side
            let inv = 1.0 / spec.a_plus(n);
            let lin = FockVector::mode(side, Sign::Minus, n).sub(&FockVector::mode(side, Sign::Plus, n)).scale(inv);
            v = v.mul(&lin);
        }
        out = out.add(&v.scale(x.at_a(a)));
    }
    Ok(out)
}

/// Level components ⟨n;Ξ;H| for n = 0..=max_level of ⟨1|t(ξ_1⁻¹z)…t(ξ_k⁻¹z)s(η_1⁻¹z)…s(η_l⁻¹z)
/// = Σ_n z^{−n}⟨n;Ξ;H|.
///
/// With `normalized` the a-independent prefactor Π f(ξ_i/η_j) Π f(η_j/η_j′)f(η_j′/η_j) is divided
/// out (the starred states).
pub fn level_state_coefficients(
    xi: &[Complex64],
    eta: &[Complex64],
    a: Complex64,
    max_level: u32,
    normalized: bool,
    params: &ModelParams,
) -> Result<Vec<FockVector>> {
    if xi.len() > 20 {
        return Err(Error::Domain("at most 20 t-currents".into()));
    }
    let k = xi.len();
    let mut out = vec![FockVector::zero(Side::Bra); max_level as usize + 1];
    let s_letters: Vec<Letter> = eta.iter().map(|&y| Letter::S(1.0 / y)).collect();
    let mut s_pre = Complex64::new(1.0, 0.0);
    if !normalized {
        for i in 0..s_letters.len() {
            for j in i + 1..s_letters.len() {
                s_pre *= letter_contraction(&s_letters[i], &s_letters[j], params)?;
            }
        }
    }
    for mask in 0..1u64 << k {
        let sign = |i: usize| if mask >> i & 1 == 1 { Sign::Plus } else { Sign::Minus };
        let t_letters: Vec<Letter> = (0..k).map(|i| Letter::Lambda(sign(i), 1.0 / xi[i])).collect();
        let deg: i32 = (0..k).map(|i| if sign(i) == Sign::Minus { 1 } else { -1 }).sum();
        let mut w = exp_i_pi(a * deg as f64) * s_pre;
        for i in 0..k {
            for j in i + 1..k {
                w *= letter_contraction(&t_letters[i], &t_letters[j], params)?;
            }
            if !normalized {
                for s in &s_letters {
                    w *= letter_contraction(&t_letters[i], s, params)?;
                }
            }
        }
        // u_m = Σ_i ξ_i^m d^{ε_i}_m + Σ_j (η_j^m d⁻_m + (−η_j)^m d⁺_m)
        let u: Vec<FockVector> = (1..=max_level)
            .map(|m| {
                let mut lin = FockVector::zero(Side::Bra);
                for i in 0..k {
                    lin = lin.add(&FockVector::mode(Side::Bra, sign(i), m).scale(xi[i].powi(m as i32)));
                }
                for &y in eta {
                    lin = lin.add(&FockVector::mode(Side::Bra, Sign::Minus, m).scale(y.powi(m as i32)));
                    lin = lin.add(&FockVector::mode(Side::Bra, Sign::Plus, m).scale((-y).powi(m as i32)));
                }
                lin
            })
            .collect();
        // coefficients of exp(Σ_m u_m z^{−m}/m): E_n = (1/n) Σ_m u_m E_{n−m}
        let mut e = vec![FockVector::vacuum(Side::Bra)];
        for n in 1..=max_level as usize {
            let mut acc = FockVector::zero(Side::Bra);
            for m in 1..=n {
                acc = acc.add(&u[m - 1].mul(&e[n - m]));
            }
            e.push(acc.scale(Complex64::new(1.0 / n as f64, 0.0)));
        }
        for (n, en) in e.iter().enumerate() {
            out[n] = out[n].add(&en.scale(w));
        }
    }
    Ok(out)
}

/// Largest violation of ⟨v|(d⁻_{−m} + (−1)^m d⁺_{−m}) = 0 (bra) or
/// (d⁻_m + (−1)^m d⁺_m)|v⟩ = 0 (ket) over the modes present, relative to |v|.
pub fn reduction_defect(v: &FockVector, params: &ModelParams) -> f64 {
    let spec = HeisenbergSpec::new(params);
    let top = v.terms().map(|(k, _)| FockVector::monomial_level(k)).max().unwrap_or(0);
    let scale = v.max_abs().max(1e-300);
    let mut worst: f64 = 0.0;
    for m in 1..=top as i32 {
        let k = if v.side == Side::Bra { -m } else { m };
        let sgn = if m % 2 == 0 { 1.0 } else { -1.0 };
        let w = v.apply(&spec, Sign::Minus, k).add(&v.apply(&spec, Sign::Plus, k).scale(Complex64::new(sgn, 0.0)));
        worst = worst.max(w.max_abs() / (m as f64 * spec.a_plus(m as u32).norm()));
    }
    worst / scale
}

/// True iff v lies in the image of π_R (bra) or π_L (ket) within `tol`.
pub fn reduction_check(v: &FockVector, params: &ModelParams, tol: f64) -> bool {
    reduction_defect(v, params) <= tol
}

/// P_{2k} v = Σ_j (−1/2)^j/j! u^j D^j v with u = d⁻_{2k} + d⁺_{2k} and D = ∂/∂d⁻_{2k} + ∂/∂d⁺_{2k}
/// (modes ±2k by side); the normal-ordered exponential of the projector acting on the polynomial.
pub fn even_projector_apply(v: &FockVector, k: u32) -> FockVector {
    let m = 2 * k;
    let side = v.side;
    let u = FockVector::mode(side, Sign::Minus, m).add(&FockVector::mode(side, Sign::Plus, m));
    let mut out = v.clone();
    let mut dj = v.clone();
    let mut uj = FockVector::vacuum(side);
    let mut c = 1.0;
    for j in 1.. {
        dj = dj.derivative(Sign::Minus, m).add(&dj.derivative(Sign::Plus, m));
        if dj.is_empty() {
            break;
        }
        uj = uj.mul(&u);
        c *= -0.5 / j as f64;
        out = out.add(&uj.mul(&dj).scale(Complex64::new(c, 0.0)));
    }
    out
}

/// Relative defect of ⟨*n|(d⁻_{−m} + (−1)^m d⁺_{−m})/A⁺_m = (S_m(Ξ) + (1+(−1)^m)S_m(H))⟨*(n−m)|.
pub fn invaction_defect(
    xi: &[Complex64],
    eta: &[Complex64],
    a: Complex64,
    n: u32,
    m: u32,
    params: &ModelParams,
) -> Result<f64> {
    if m == 0 || m > n {
        return Err(Error::Domain(format!("lowering by {m} from level {n}")));
    }
    let spec = HeisenbergSpec::new(params);
    let states = level_state_coefficients(xi, eta, a, n, true, params)?;
    let v = &states[n as usize];
    let sgn = if m % 2 == 0 { 1.0 } else { -1.0 };
    let k = -(m as i32);
    let lhs = v
        .apply(&spec, Sign::Minus, k)
        .add(&v.apply(&spec, Sign::Plus, k).scale(Complex64::new(sgn, 0.0)))
        .scale(1.0 / spec.a_plus(m));
    let s_xi: Complex64 = xi.iter().map(|x| x.powi(m as i32)).sum();
    let s_eta: Complex64 = eta.iter().map(|y| y.powi(m as i32)).sum();
    let rhs = states[(n - m) as usize].scale(s_xi + (1.0 + sgn) * s_eta);
    Ok(lhs.distance(&rhs) / rhs.max_abs().max(lhs.max_abs()).max(1e-300))
}

/// Coefficient rows of the given level-n vectors in the basis of `level_basis(n)`.
pub fn coefficient_matrix(vs: &[FockVector], n: u32) -> Mat<Complex64> {
    let basis = level_basis(n);
    let rows: Vec<Vec<Complex64>> = vs.iter().map(|v| basis.iter().map(|k| v.coeff(k)).collect()).collect();
    Mat::from_rows(&rows)
}

/// Rank of the level-n states over `samples` random (Ξ, H) with |Ξ| = k, |H| = l.
pub fn spanning_rank(
    n: u32,
    k: usize,
    l: usize,
    samples: usize,
    a: Complex64,
    params: &ModelParams,
    seed: u64,
) -> Result<usize> {
    let mut sampler = Sampler::new(seed);
    let mut vs = Vec::with_capacity(samples);
    for _ in 0..samples {
        let pts = sampler.generic_points(k + l, params);
        let (xi, eta) = pts.split_at(k);
        let mut st = level_state_coefficients(xi, eta, a, n, true, params)?;
        let v = st.swap_remove(n as usize);
        vs.push(v.scale(Complex64::new(1.0 / v.max_abs().max(1e-300), 0.0)));
    }
    Ok(numerical_rank(&coefficient_matrix(&vs, n), 1e-10))
}

/// The level-2 vector ⟨X| = X_1⟨*2;ξ_1,ξ_2;| + X_2⟨*2;ξ;η| solved from the reduction conditions,
/// and its decomposition ⟨X| = α·⟨1|π_R(h^{(2)}_a) + β·⟨1|π_R(c_{−1}²)|.
#[derive(Clone, Debug, Serialize)]
pub struct WorkedExample {
    pub reduction_defect: f64,
    #[serde(with = "crate::numeric::cjson")]
    pub alpha: Complex64,
    #[serde(with = "crate::numeric::cjson")]
    pub beta: Complex64,
    /// Relative residual of the two-term decomposition.
    pub span_residual: f64,
    /// Relative residual of the best fit by ⟨1|π_R(h^{(2)}_a) alone.
    pub proportionality_defect: f64,
    /// Relative residual of (⟨X| − β⟨1|π_R(c_{−1}²)) against α⟨1|π_R(h^{(2)}_a).
    pub remainder_defect: f64,
    #[serde(skip)]
    pub vector: Option<FockVector>,
}

impl WorkedExample {
    pub fn ratio(&self) -> Complex64 {
        self.beta / self.alpha
    }
}

/// Builds ⟨X| at a with the free parameter η.
///
/// The reduction conditions at m = 1, 2 are solved by ξ_1ξ_2 = 1, (ξ_1+ξ_2)² = −Δ²/r⁴,
/// ξ = Δη/r², X_1 = 1, X_2 = rξ_1ξ_2/η², where Δ = ω − ω⁻¹ and r = ρ + ρ⁻¹.
pub fn level2_worked_example(a: Complex64, eta: Complex64, params: &ModelParams) -> Result<WorkedExample> {
    let delta = params.delta();
    let r = 2.0 * cos_pi(a);
    let sum = (-delta * delta / r.powi(4)).sqrt();
    let disc = (sum * sum - 4.0).sqrt();
    let (x1, x2) = ((sum + disc) / 2.0, (sum - disc) / 2.0);
    let xi = delta * eta / (r * r);
    let c1 = Complex64::new(1.0, 0.0);
    let c2 = r * x1 * x2 / (eta * eta);
    let two = level_state_coefficients(&[x1, x2], &[], a, 2, true, params)?;
    let mixed = level_state_coefficients(&[xi], &[eta], a, 2, true, params)?;
    let v = two[2].scale(c1).add(&mixed[2].scale(c2));
    let red = reduction_defect(&v, params);

    let h2 = crate::jfunctions::h2_element(a, params)?;
    let b1 = projected_vector(&h2, Side::Bra, a, params)?;
    let b2 = projected_vector(&crate::jfunctions::h11_element(), Side::Bra, a, params)?;
    let m = coefficient_matrix(&[b1.clone(), b2.clone()], 2);
    let target = coefficient_matrix(&[v.clone()], 2);
    let transpose = |x: &Mat<Complex64>| {
        let mut t = Mat::zeros(x.cols, x.rows);
        for i in 0..x.rows {
            for j in 0..x.cols {
                t.set(j, i, *x.get(i, j));
            }
        }
        t
    };
    let (mt, tt) = (transpose(&m), transpose(&target));
    let vnorm = tt.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1e-300);
    let sol = lstsq(&mt, &tt, 1e-12)?;
    let (alpha, beta) = (*sol.x.get(0, 0), *sol.x.get(1, 0));
    let one_col = Mat::from_rows(&(0..mt.rows).map(|i| vec![*mt.get(i, 0)]).collect::<Vec<_>>());
    let single = lstsq(&one_col, &tt, 1e-12)?;
    let rest = v.sub(&b2.scale(beta));
    let remainder = rest.distance(&b1.scale(alpha)) / rest.max_abs().max(1e-300);
    Ok(WorkedExample {
        reduction_defect: red,
        alpha,
        beta,
        span_residual: sol.residuals[0] / vnorm,
        proportionality_defect: single.residuals[0] / vnorm,
        remainder_defect: remainder,
        vector: Some(v),
    })
}

/// β/α predicted for the worked example: i/(sin²πp − sin²2πa), even in a.
pub fn worked_example_ratio(a: Complex64, params: &ModelParams) -> Complex64 {
    let s = params.sin_pi_p();
    let t = sin_pi(2.0 * a);
    Complex64::i() / (s * s - t * t)
}
