//! Vertex operators λ±(z), t(z) = ρλ₋(z) + ρ⁻¹λ₊(z) and s(y) = :λ₋(y)λ₊(−y): and their vacuum
//! expectations by explicit Wick contraction.
//!
//! Every letter is a normal-ordered exponential, so a word's expectation is the product of the
//! pairwise contraction factors: an opposite-sign pair λ₋(z₋), λ₊(z₊) gives f(z₋/z₊) in either
//! order and a same-sign pair gives 1.

use num_complex::Complex64;

use super::heisenberg::Sign;
use crate::error::Result;
use crate::numeric::exp_i_pi;
use crate::params::ModelParams;
use crate::special::f_value;
use crate::special::kernel::check_argument;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Letter {
    Lambda(Sign, Complex64),
    S(Complex64),
}

impl Letter {
    /// The elementary λ-exponentials the letter is built from.
    fn parts(&self) -> Vec<(Sign, Complex64)> {
        match *self {
            Letter::Lambda(s, z) => vec![(s, z)],
            Letter::S(y) => vec![(Sign::Minus, y), (Sign::Plus, -y)],
        }
    }
}

/// Ordered product of letters.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct VertexWord {
    pub letters: Vec<Letter>,
}

impl VertexWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        VertexWord { letters }
    }

    pub fn push(&mut self, l: Letter) {
        self.letters.push(l);
    }
}

/// Contraction factor of two letters (independent of their order).
pub fn letter_contraction(l: &Letter, r: &Letter, params: &ModelParams) -> Result<Complex64> {
    let mut acc = Complex64::new(1.0, 0.0);
    for (s1, z1) in l.parts() {
        for (s2, z2) in r.parts() {
            if s1 == s2 {
                continue;
            }
            let (zm, zp) = if s1 == Sign::Minus { (z1, z2) } else { (z2, z1) };
            let x = zm / zp;
            check_argument(x)?;
            acc *= f_value(x, params.omega);
        }
    }
    Ok(acc)
}

/// ⟨word⟩: the product of all pair factors.
pub fn pair_contraction(word: &VertexWord, params: &ModelParams) -> Result<Complex64> {
    let mut acc = Complex64::new(1.0, 0.0);
    let ls = &word.letters;
    for i in 0..ls.len() {
        for j in i + 1..ls.len() {
            acc *= letter_contraction(&ls[i], &ls[j], params)?;
        }
    }
    Ok(acc)
}

/// One λ-word from expanding t(x_1)…t(x_N): bit i of `mask` set means λ₊(x_i), weight ρ^{−1}.
pub(crate) fn t_word(xs: &[Complex64], mask: u64) -> (VertexWord, i32) {
    let mut deg = 0;
    let letters = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            if mask >> i & 1 == 1 {
                deg -= 1;
                Letter::Lambda(Sign::Plus, x)
            } else {
                deg += 1;
                Letter::Lambda(Sign::Minus, x)
            }
        })
        .collect();
    (VertexWord::new(letters), deg)
}

fn check_len(n: usize) -> Result<()> {
    if n > 30 {
        return Err(crate::error::Error::Domain(format!("explicit Wick expansion over 2^{n} words is not supported")));
    }
    Ok(())
}

/// ⟨t(x_1)…t(x_N) s(y_1)…s(y_L)⟩_a summed over the 2^N λ-words of the t's.
pub fn ts_expectation(xs: &[Complex64], ys: &[Complex64], a: Complex64, params: &ModelParams) -> Result<Complex64> {
    check_len(xs.len())?;
    let mut acc = Complex64::new(0.0, 0.0);
    for mask in 0..1u64 << xs.len() {
        let (mut word, deg) = t_word(xs, mask);
        for &y in ys {
            word.push(Letter::S(y));
        }
        acc += exp_i_pi(a * deg as f64) * pair_contraction(&word, params)?;
    }
    Ok(acc)
}

/// ⟨t(x_1)…t(x_N)⟩_a.
pub fn t_vacuum_expectation(xs: &[Complex64], a: Complex64, params: &ModelParams) -> Result<Complex64> {
    ts_expectation(xs, &[], a, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DescendantElement;
    use crate::jfunctions::j_value;
    use crate::numeric::cos_pi;
    use crate::sampling::Sampler;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pair_factors() {
        let mp = ModelParams::new(0.3);
        let (x, xp) = (c(0.6, 0.2), c(-0.3, 1.1));
        let w = VertexWord::new(vec![Letter::Lambda(Sign::Plus, xp), Letter::Lambda(Sign::Minus, x)]);
        assert!((pair_contraction(&w, &mp).unwrap() - f_value(x / xp, mp.omega)).norm() < 1e-15);
        let w = VertexWord::new(vec![Letter::Lambda(Sign::Plus, xp), Letter::Lambda(Sign::Plus, x)]);
        assert_eq!(pair_contraction(&w, &mp).unwrap(), c(1.0, 0.0));
        // s(y) against either λ(x) gives f(y/x)
        let y = c(0.4, -0.9);
        for s in [Sign::Minus, Sign::Plus] {
            let v = letter_contraction(&Letter::S(y), &Letter::Lambda(s, x), &mp).unwrap();
            assert!((v - f_value(y / x, mp.omega)).norm() < 1e-14);
        }
        let v = letter_contraction(&Letter::S(y), &Letter::S(x), &mp).unwrap();
        assert!((v - f_value(y / x, mp.omega) * f_value(x / y, mp.omega)).norm() < 1e-14);
        let bad = VertexWord::new(vec![Letter::Lambda(Sign::Plus, x), Letter::Lambda(Sign::Minus, -x)]);
        assert!(pair_contraction(&bad, &mp).is_err());
    }

    #[test]
    fn agrees_with_subset_sum() {
        let mp = ModelParams::new(0.33);
        let a = c(0.17, 0.05);
        assert!((t_vacuum_expectation(&[c(0.3, 0.4)], a, &mp).unwrap() - 2.0 * cos_pi(a)).norm() < 1e-15);
        for n in 0..=8 {
            let x = Sampler::new(n as u64 + 3).generic_points(n, &mp);
            let t = t_vacuum_expectation(&x, a, &mp).unwrap();
            let j = j_value(&DescendantElement::one(), a, &x, &mp).unwrap();
            assert!((t - j).norm() <= 1e-10 * j.norm().max(1.0), "N={n}");
        }
    }

    #[test]
    fn s_insertions_are_reflection_invariant() {
        let mp = ModelParams::new(0.28);
        let a = c(0.21, 0.0);
        let mut s = Sampler::new(11);
        for (k, l) in [(2, 1), (3, 2), (0, 2), (4, 1)] {
            let pts = s.generic_points(k + l, &mp);
            let (xs, ys) = pts.split_at(k);
            let v = ts_expectation(xs, ys, a, &mp).unwrap();
            let w = ts_expectation(xs, ys, -a, &mp).unwrap();
            assert!((v - w).norm() < 1e-12 * v.norm().max(1.0), "K={k} L={l}");
            // explicit prefactor form
            let mut pre = t_vacuum_expectation(xs, a, &mp).unwrap();
            for (j, &y) in ys.iter().enumerate() {
                for &x in xs {
                    pre *= f_value(y / x, mp.omega);
                }
                for &y2 in &ys[j + 1..] {
                    pre *= f_value(y / y2, mp.omega) * f_value(y2 / y, mp.omega);
                }
            }
            assert!((v - pre).norm() < 1e-12 * v.norm().max(1.0));
        }
    }
}
