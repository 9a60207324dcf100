//! Matrix elements ⟨1|π_R(h) t(x_1)…t(x_N) π_L(h′)|1⟩ and their rewriting as plain J-functions.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::heisenberg::{HeisenbergSpec, Sign};
use super::vertex::{pair_contraction, t_word, Letter, VertexWord};
use crate::algebra::{DescendantElement, Partition};
use crate::error::{Error, Result};
use crate::jfunctions::{h2_element, j_value};
use crate::numeric::{exp_i_pi, sin_pi};
use crate::params::ModelParams;

/// Chiral monomials (parts, coefficient at a) of an element that must have no antichiral part.
fn chiral_terms(h: &DescendantElement, a: Complex64) -> Result<Vec<(Vec<u32>, Complex64)>> {
    h.terms()
        .map(|((c, b), x)| {
            if !b.is_empty() {
                return Err(Error::Domain(format!("expected a chiral element, found antichiral factor in {h}")));
            }
            Ok((c.parts().to_vec(), x.at_a(a)))
        })
        .collect()
}

/// Σ over partial matchings of R-factors with L-factors: matched pairs give cross[i][j],
/// unmatched R-factors r[i] and unmatched L-factors l[j].
fn matching_sum(i: usize, used: u64, r: &[Complex64], l: &[Complex64], cross: &[Vec<Complex64>]) -> Complex64 {
    if i == r.len() {
        return (0..l.len()).filter(|j| used >> j & 1 == 0).map(|j| l[j]).product();
    }
    let mut acc = r[i] * matching_sum(i + 1, used, r, l, cross);
    for j in 0..l.len() {
        if used >> j & 1 == 0 && cross[i][j] != Complex64::new(0.0, 0.0) {
            acc += cross[i][j] * matching_sum(i + 1, used | 1 << j, r, l, cross);
        }
    }
    acc
}

/// Σ_letters κ with [L, letter] = κ·letter.
fn word_bracket(spec: &HeisenbergSpec, form: &super::heisenberg::LinearForm, word: &VertexWord) -> Complex64 {
    word.letters
        .iter()
        .map(|l| match *l {
            Letter::Lambda(s, z) => spec.vertex_bracket(form, s, z),
            Letter::S(y) => spec.vertex_bracket(form, Sign::Minus, y) + spec.vertex_bracket(form, Sign::Plus, -y),
        })
        .sum()
}

/// ⟨1|π_R(h) t(x_1)…t(x_N) π_L(h′)|1⟩_a with h, h′ chiral elements.
///
/// Each π_R(c_{−n}) is commuted to the right through the vertex word (picking up its bracket with
/// the word) until it annihilates |1⟩ or meets a π_L factor, whose bracket with it is a number;
/// π_L factors left over are commuted to the left.
pub fn matrix_element_tilde(
    h: &DescendantElement,
    hp: &DescendantElement,
    xs: &[Complex64],
    a: Complex64,
    params: &ModelParams,
) -> Result<Complex64> {
    if xs.len() > 30 {
        return Err(Error::Domain("explicit Wick expansion limited to 30 points".into()));
    }
    let spec = HeisenbergSpec::new(params);
    let left = chiral_terms(h, a)?;
    let right = chiral_terms(hp, a)?;
    if left.is_empty() || right.is_empty() {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let max_mode = left.iter().chain(&right).flat_map(|(p, _)| p.iter().copied()).max().unwrap_or(0);
    let pir: Vec<_> = (1..=max_mode).map(|n| spec.pi_r(n)).collect();
    let pil: Vec<_> = (1..=max_mode).map(|n| spec.pi_l(n)).collect();
    let cross: Vec<Vec<Complex64>> =
        (1..=max_mode).map(|m| (1..=max_mode).map(|n| spec.cross(m, n)).collect()).collect();

    let mut acc = Complex64::new(0.0, 0.0);
    for mask in 0..1u64 << xs.len() {
        let (word, deg) = t_word(xs, mask);
        let base = exp_i_pi(a * deg as f64) * pair_contraction(&word, params)?;
        let rb: Vec<Complex64> = pir.iter().map(|f| word_bracket(&spec, f, &word)).collect();
        // ⟨1|Λ π_L = −[π_L, Λ] on the left vacuum
        let lb: Vec<Complex64> = pil.iter().map(|f| -word_bracket(&spec, f, &word)).collect();
        let mut inner = Complex64::new(0.0, 0.0);
        for (lp, lc) in &left {
            let r: Vec<Complex64> = lp.iter().map(|&n| rb[n as usize - 1]).collect();
            for (rp, rc) in &right {
                let l: Vec<Complex64> = rp.iter().map(|&n| lb[n as usize - 1]).collect();
                let cm: Vec<Vec<Complex64>> =
                    lp.iter().map(|&m| rp.iter().map(|&n| cross[m as usize - 1][n as usize - 1]).collect()).collect();
                inner += lc * rc * matching_sum(0, 0, &r, &l, &cm);
            }
        }
        acc += base * inner;
    }
    Ok(acc)
}

/// The element whose plain J-function equals the tilde matrix element of g = Σ h h̄′:
/// every partial matching of chiral with antichiral factors contributes the product of
/// [π_R(c_{−m}), π_L(c_{−n})] times the unmatched factors.
pub fn tilde_to_plain(g: &DescendantElement, params: &ModelParams) -> Result<DescendantElement> {
    let spec = HeisenbergSpec::new(params);
    let mut out = DescendantElement::zero();
    for ((c, b), coeff) in g.terms() {
        let lp = c.parts();
        let rp = b.parts();
        let mut acc: Vec<(Complex64, u64, u64)> = Vec::new();
        fn rec(
            i: usize,
            used_l: u64,
            used_r: u64,
            w: Complex64,
            lp: &[u32],
            rp: &[u32],
            spec: &HeisenbergSpec,
            out: &mut Vec<(Complex64, u64, u64)>,
        ) {
            if i == lp.len() {
                out.push((w, used_l, used_r));
                return;
            }
            rec(i + 1, used_l, used_r, w, lp, rp, spec, out);
            for j in 0..rp.len() {
                if used_r >> j & 1 == 0 {
                    let x = spec.cross(lp[i], rp[j]);
                    if x != Complex64::new(0.0, 0.0) {
                        rec(i + 1, used_l | 1 << i, used_r | 1 << j, w * x, lp, rp, spec, out);
                    }
                }
            }
        }
        rec(0, 0, 0, Complex64::new(1.0, 0.0), lp, rp, &spec, &mut acc);
        for (w, ul, ur) in acc {
            let keep = |ps: &[u32], used: u64| {
                Partition::new(ps.iter().enumerate().filter(|(i, _)| used >> i & 1 == 0).map(|(_, &m)| m).collect())
            };
            out.add_term((keep(lp, ul), keep(rp, ur)), coeff.scale(w))?;
        }
    }
    Ok(out)
}

/// h h̄′ from two chiral elements.
pub fn pair_element(h: &DescendantElement, hp: &DescendantElement) -> Result<DescendantElement> {
    h.mul(&hp.swap_chirality())
}

/// Residue of the level-(2,2) tilde function at a = −(1+p)/2 against the exponential J at
/// a = (3p−1)/2.
#[derive(Clone, Debug, Serialize)]
pub struct WResidueCheck {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(with = "crate::numeric::cjson")]
    pub lhs: Complex64,
    #[serde(with = "crate::numeric::cjson")]
    pub rhs: Complex64,
    pub rel_error: f64,
    /// Relative change of the residue when the contour radius is halved.
    pub richardson: f64,
    pub radius: f64,
    pub points: usize,
}

/// 2π sin²πp sin 2πp · Res_{a=−(1+p)/2} J̃^{h^{(2)}_a h̄^{(2)}_{−a}}_{N,a}(X) versus J_{N,(3p−1)/2}(X).
///
/// The residue is taken with the trapezoid rule on a circle in the a-plane; α = α0(2a+1) maps
/// α = −β/2 to a = −(1+p)/2 and 3β/2 to (3p−1)/2, and dα = 2α0 da turns π/α0 into 2π.
pub fn w_residue_check(xs: &[Complex64], params: &ModelParams, radius: f64, points: usize) -> Result<WResidueCheck> {
    let a0 = -(1.0 + params.p) / 2.0;
    let residue = |r: f64| -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..points {
            let u = Complex64::from_polar(r, 2.0 * PI * (k as f64 + 0.5) / points as f64);
            let a = a0 + u;
            let h = h2_element(a, params)?;
            let hm = h2_element(-a, params)?;
            acc += matrix_element_tilde(&h, &hm, xs, a, params)? * u;
        }
        Ok(acc / points as f64)
    };
    let s = sin_pi(params.p);
    let scale = 2.0 * PI * s * s * sin_pi(2.0 * params.p);
    let r1 = residue(radius)?;
    let r2 = residue(radius / 2.0)?;
    let lhs = scale * r1;
    let rhs = j_value(&DescendantElement::one(), (3.0 * params.p - 1.0) / 2.0, xs, params)?;
    let den = rhs.norm().max(lhs.norm()).max(1e-300);
    Ok(WResidueCheck {
        n: xs.len(),
        lhs,
        rhs,
        rel_error: (lhs - rhs).norm() / den,
        richardson: (scale * (r1 - r2)).norm() / den,
        radius,
        points,
    })
}

/// Plain-J oracle for the tilde matrix element: j_value of tilde_to_plain(h h̄′).
pub fn tilde_via_plain(
    h: &DescendantElement,
    hp: &DescendantElement,
    xs: &[Complex64],
    a: Complex64,
    params: &ModelParams,
) -> Result<Complex64> {
    let g = tilde_to_plain(&pair_element(&h.at_a(a), &hp.at_a(a))?, params)?;
    j_value(&g, a, xs, params)
}
