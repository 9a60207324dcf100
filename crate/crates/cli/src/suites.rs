//! Identity suites behind `descff verify`.

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use descff::algebra::parse_element;
use descff::fock::{t_vacuum_expectation, w_residue_check};
use descff::identities::{check_em_conservation, check_eom, check_t_identification, IdentityReport};
use descff::jfunctions::{h2_element, j_rho, j_value, pole_decomposition, residue_kinematic, residue_numeric};
use descff::kink::{chain_defect, pq_consistency, q_rank, KinkElement};
use descff::algebra::partition_count;
use descff::reflection::{involution_defect, solve_reflection, SolveOptions};
use descff::sampling::Sampler;
use descff::{DescendantElement, ModelParams, Result};

use crate::args::Suite;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub deviation: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub detail: Value,
}

impl Check {
    fn new(suite: &'static str, name: impl Into<String>, deviation: f64, tolerance: f64, detail: Value) -> Self {
        Check { suite, name: name.into(), deviation, tolerance, pass: deviation <= tolerance, detail }
    }

    fn from_report(suite: &'static str, r: IdentityReport) -> Self {
        let name = format!("{} N={}", r.identity, r.n);
        let (dev, tol) = (r.deviation, r.tolerance);
        Check::new(suite, name, dev, tol, serde_json::to_value(r).expect("report serializes"))
    }
}

fn rel(x: Complex64, y: Complex64) -> f64 {
    (x - y).norm() / x.norm().max(y.norm()).max(1e-300)
}

/// Contour settings for numerical residues.
const RADIUS: f64 = 1e-3;
const POINTS: usize = 64;
/// Accuracy target of the W-residue contour extraction.
const W_TOL: f64 = 1e-5;

pub fn run(suite: Suite, mp: &ModelParams, n: Option<usize>, a: Option<Complex64>, seed: u64) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Oracle {
        out.extend(oracle(mp, n.unwrap_or(6), a, seed)?);
    }
    if all || suite == Suite::Residues {
        out.extend(residues(mp, n.unwrap_or(5), seed)?);
    }
    if all || suite == Suite::Reflection {
        out.extend(reflection(mp, n.unwrap_or(3) as u32, a, seed)?);
    }
    if all || suite == Suite::Eom {
        out.extend(eom(mp, seed)?);
    }
    if all || suite == Suite::Em {
        out.extend(em(mp, seed)?);
    }
    if all || suite == Suite::Kink {
        out.extend(kink(mp, n.unwrap_or(5) as u32, seed)?);
    }
    Ok(out)
}

fn pick_a(mp: &ModelParams, a: Option<Complex64>, s: &mut Sampler) -> Complex64 {
    a.unwrap_or_else(|| Complex64::new(s.generic_a(mp, 0.02), 0.0))
}

/// Free-field vacuum expectation against the subset sum.
fn oracle(mp: &ModelParams, n_max: usize, a: Option<Complex64>, seed: u64) -> Result<Vec<Check>> {
    let mut s = Sampler::new(seed);
    let one = DescendantElement::one();
    let mut out = Vec::new();
    for n in 0..=n_max {
        let a = pick_a(mp, a, &mut s);
        let x = s.generic_points(n, mp);
        let t = t_vacuum_expectation(&x, a, mp)?;
        let j = j_value(&one, a, &x, mp)?;
        out.push(Check::new("oracle", format!("free field N={n}"), rel(t, j), mp.tolerance, json!({ "a": a.re })));
    }
    Ok(out)
}

/// Kinematic residues against contour integrals, the vanishing residue sum, and the W-residue identity.
fn residues(mp: &ModelParams, n_max: usize, seed: u64) -> Result<Vec<Check>> {
    let mut s = Sampler::new(seed);
    let mut out = Vec::new();
    let a = Complex64::new(s.generic_a(mp, 0.02), 0.0);
    for src in ["1", "c-1", "c-2*cbar-1"] {
        let g = parse_element(src)?;
        for n in 0..n_max {
            let pts = s.generic_points(n + 1, mp);
            let (xs, x) = (&pts[..n], pts[n]);
            let k = residue_kinematic(&g, a, xs, x, mp)?;
            let q = residue_numeric(&g, a, xs, x, mp, RADIUS, POINTS)?;
            // the contour sum cannot resolve residues below the size of J on the contour times its radius
            let mut probe = pts.clone();
            probe.push(-x * (1.0 - RADIUS));
            let scale = (j_value(&g, a, &probe, mp)?.norm() * RADIUS).max(k.norm()).max(1e-300);
            let dev = (k - q).norm() / scale;
            out.push(Check::new("residues", format!("kinematic {src} N={}", n + 2), dev, mp.tolerance.max(1e-6), json!({})));
        }
    }
    for n in [4, 6] {
        let x = s.generic_points(n, mp);
        let d = pole_decomposition(&DescendantElement::one(), a, &x, mp)?;
        let big = d.residues.iter().map(|r| r.norm()).fold(0.0, f64::max).max(1e-300);
        out.push(Check::new("residues", format!("residue sum N={n}"), d.d.norm() / big, mp.tolerance, json!({})));
    }
    for n in 0..=2 {
        let x = s.generic_points(n, mp);
        let w = w_residue_check(&x, mp, RADIUS, POINTS)?;
        let dev = w.rel_error.max(w.richardson);
        out.push(Check::new("residues", format!("W-residue N={n}"), dev, W_TOL, serde_json::to_value(&w).expect("serializes")));
    }
    Ok(out)
}

/// Palindromy, the fitted reflection matrices and the level-2 self-dual family.
fn reflection(mp: &ModelParams, max_level: u32, a: Option<Complex64>, seed: u64) -> Result<Vec<Check>> {
    let mut s = Sampler::new(seed);
    let mut out = Vec::new();
    let one = DescendantElement::one();
    for n in 0..=8 {
        let poly = j_rho(&one, &s.generic_points(n, mp), mp)?;
        let dev = poly.palindromy_defect() / poly.max_abs().max(1e-300);
        out.push(Check::new("reflection", format!("palindromy N={n}"), dev, mp.tolerance, json!({})));
    }
    let a = a.unwrap_or(Complex64::new(0.13, 0.0));
    let opts = SolveOptions { seed, ..SolveOptions::default() };
    for level in 1..=max_level {
        let sol = solve_reflection(level, a, mp, &opts)?;
        let back = solve_reflection(level, -a, mp, &opts)?;
        let detail = json!({ "condition": sol.condition, "residual": sol.residual });
        out.push(Check::new("reflection", format!("fit residual level {level}"), sol.residual, mp.tolerance, detail));
        let inv = involution_defect(&sol, &back);
        out.push(Check::new("reflection", format!("involution level {level}"), inv, 10.0 * mp.tolerance, json!({})));
        if level == 2 {
            let image = sol.apply(&h2_element(a, mp)?)?;
            let want = h2_element(-a, mp)?;
            let dev = image.distance_at(&want, a) / want.distance_at(&DescendantElement::zero(), a);
            out.push(Check::new("reflection", "self-dual level 2", dev, mp.tolerance, json!({})));
        }
    }
    Ok(out)
}

fn eom(mp: &ModelParams, seed: u64) -> Result<Vec<Check>> {
    let mut s = Sampler::new(seed);
    let mut out = Vec::new();
    for n in [1, 3, 5] {
        for _ in 0..3 {
            out.push(Check::from_report("eom", check_eom(&s.generic_points(n, mp), mp)?));
        }
    }
    Ok(out)
}

fn em(mp: &ModelParams, seed: u64) -> Result<Vec<Check>> {
    let mut s = Sampler::new(seed);
    let mut out = Vec::new();
    for n in [0, 2, 4] {
        for _ in 0..3 {
            out.push(Check::from_report("em", check_em_conservation(&s.generic_points(n, mp), mp)?));
        }
    }
    for n in [2, 4] {
        for _ in 0..3 {
            out.push(Check::from_report("em", check_t_identification(&s.generic_points(n, mp), mp)?));
        }
    }
    Ok(out)
}

fn kink(mp: &ModelParams, max_level: u32, seed: u64) -> Result<Vec<Check>> {
    let mut s = Sampler::new(seed);
    let mut out = Vec::new();
    for src in ["1", "c-1", "c-2*c-1", "c-2^2 + (0.5-2i)*c-3*c-1"] {
        let h = KinkElement::new(parse_element(src)?, mp)?;
        let mut worst_chain: f64 = 0.0;
        let mut worst_pq: f64 = 0.0;
        for k in 0..5 {
            let pts = s.generic_points(k + 3, mp);
            worst_chain = worst_chain.max(chain_defect(&h, &pts[..k], &pts[k..k + 2], pts[k + 2], mp)?);
            let pts = s.generic_points(k + 1, mp);
            worst_pq = worst_pq.max(pq_consistency(&h, &pts[..k / 2 + 1], &pts[k / 2 + 1..], mp)?.deviation);
        }
        out.push(Check::new("kink", format!("chain {src}"), worst_chain, mp.tolerance, json!({})));
        out.push(Check::new("kink", format!("pq {src}"), worst_pq, mp.tolerance, json!({})));
    }
    for n in 0..=max_level {
        let r = q_rank(n, n as usize + 1, n as usize / 2 + 1, mp, seed)?;
        let want = partition_count(n);
        let dev = if r as u64 == want { 0.0 } else { 1.0 };
        out.push(Check::new("kink", format!("Q rank level {n}"), dev, 0.5, json!({ "rank": r, "expected": want })));
    }
    Ok(out)
}
