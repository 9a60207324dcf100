//! Level-truncated Fock vectors: ⟨1|P(d_{m>0}) on the bra side, Q(d_{m<0})|1⟩ on the ket side.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::heisenberg::{HeisenbergSpec, Sign};

/// Bra vectors are polynomials in positive modes, kets in negative modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Bra,
    Ket,
}

/// A mode d^ε_{±m}; the index m > 0 is stored, its sign is fixed by the side.
pub type Mode = (Sign, u32);

/// Sorted multiset of modes (sign first, then index).
pub type FockMonomial = Vec<Mode>;

#[derive(Clone, Debug, PartialEq)]
pub struct FockVector {
    pub side: Side,
    terms: BTreeMap<FockMonomial, Complex64>,
}

fn insert_sorted(m: &FockMonomial, x: Mode) -> FockMonomial {
    let mut out = m.clone();
    let pos = out.partition_point(|y| *y <= x);
    out.insert(pos, x);
    out
}

impl FockVector {
    pub fn zero(side: Side) -> Self {
        FockVector { side, terms: BTreeMap::new() }
    }

    pub fn vacuum(side: Side) -> Self {
        let mut v = FockVector::zero(side);
        v.terms.insert(Vec::new(), Complex64::new(1.0, 0.0));
        v
    }

    /// ⟨1|d^ε_m or d^ε_{−m}|1⟩ depending on the side.
    pub fn mode(side: Side, sign: Sign, m: u32) -> Self {
        let mut v = FockVector::zero(side);
        v.terms.insert(vec![(sign, m)], Complex64::new(1.0, 0.0));
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (FockMonomial, Complex64)>>(side: Side, terms: I) -> Self {
        let mut v = FockVector::zero(side);
        for (mut k, c) in terms {
            k.sort();
            v.add_term(k, c);
        }
        v
    }

    fn add_term(&mut self, k: FockMonomial, c: Complex64) {
        *self.terms.entry(k).or_insert(Complex64::new(0.0, 0.0)) += c;
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockMonomial, &Complex64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: &[Mode]) -> Complex64 {
        let mut key = k.to_vec();
        key.sort();
        self.terms.get(&key).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Level of a monomial: the sum of its mode indices.
    pub fn monomial_level(k: &[Mode]) -> u32 {
        k.iter().map(|(_, m)| m).sum()
    }

    /// Component of the given level.
    pub fn level_part(&self, n: u32) -> Self {
        FockVector {
            side: self.side,
            terms: self.terms.iter().filter(|(k, _)| Self::monomial_level(k) == n).map(|(k, c)| (k.clone(), *c)).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Drops coefficients of modulus ≤ tol.
    pub fn prune(mut self, tol: f64) -> Self {
        self.terms.retain(|_, c| c.norm() > tol);
        self
    }

    pub fn add(&self, o: &FockVector) -> Self {
        assert_eq!(self.side, o.side, "adding vectors of different sides");
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), *c);
        }
        out
    }

    pub fn sub(&self, o: &FockVector) -> Self {
        self.add(&o.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        FockVector { side: self.side, terms: self.terms.iter().map(|(k, c)| (k.clone(), c * s)).collect() }
    }

    /// Product of the two mode polynomials (modes on one side commute).
    pub fn mul(&self, o: &FockVector) -> Self {
        assert_eq!(self.side, o.side, "multiplying vectors of different sides");
        let mut out = FockVector::zero(self.side);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &o.terms {
                let mut k = k1.clone();
                k.extend_from_slice(k2);
                k.sort();
                out.add_term(k, c1 * c2);
            }
        }
        out
    }

    /// Multiplication by the mode (sign, m) of this side.
    pub fn mul_mode(&self, sign: Sign, m: u32) -> Self {
        FockVector {
            side: self.side,
            terms: self.terms.iter().map(|(k, c)| (insert_sorted(k, (sign, m)), *c)).collect(),
        }
    }

    /// ∂/∂d^ε_{±m} of the mode polynomial.
    pub fn derivative(&self, sign: Sign, m: u32) -> Self {
        let mut out = FockVector::zero(self.side);
        for (k, c) in &self.terms {
            let cnt = k.iter().filter(|x| **x == (sign, m)).count();
            if cnt > 0 {
                let mut rest = k.clone();
                let pos = rest.iter().position(|x| *x == (sign, m)).expect("counted");
                rest.remove(pos);
                out.add_term(rest, c * cnt as f64);
            }
        }
        out
    }

    /// ⟨v|d^ε_k on the bra side, d^ε_k|v⟩ on the ket side (k ≠ 0 signed).
    ///
    /// Creation-side modes multiply; the others act as m A ∂ through the commutator with the polynomial.
    pub fn apply(&self, spec: &HeisenbergSpec, sign: Sign, k: i32) -> Self {
        assert!(k != 0, "no zero mode");
        let m = k.unsigned_abs();
        match (self.side, k > 0) {
            (Side::Bra, true) | (Side::Ket, false) => self.mul_mode(sign, m),
            // ⟨1|P d^ε_{−m} = ⟨1|[P, d^ε_{−m}] = m A^{−ε}_m ∂P/∂d^{−ε}_m
            (Side::Bra, false) => self.derivative(sign.flip(), m).scale(m as f64 * spec.a(sign.flip(), m as i32)),
            // d^ε_m Q|1⟩ = [d^ε_m, Q]|1⟩ = m A^ε_m ∂Q/∂d^{−ε}_{−m}
            (Side::Ket, true) => self.derivative(sign.flip(), m).scale(m as f64 * spec.a(sign, m as i32)),
        }
    }

    /// ⟨bra|ket⟩, contracting every ket mode into the bra.
    pub fn pair(spec: &HeisenbergSpec, bra: &FockVector, ket: &FockVector) -> Complex64 {
        assert!(bra.side == Side::Bra && ket.side == Side::Ket, "pair takes a bra and a ket");
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in &ket.terms {
            let mut v = bra.clone();
            for &(s, m) in k {
                v = v.apply(spec, s, -(m as i32));
                if v.is_empty() {
                    break;
                }
            }
            acc += c * v.coeff(&[]);
        }
        acc
    }

    /// The same vector read on the other side (d_m ↔ d_{−m}).
    pub fn transpose(&self) -> Self {
        let side = match self.side {
            Side::Bra => Side::Ket,
            Side::Ket => Side::Bra,
        };
        FockVector { side, terms: self.terms.clone() }
    }

    pub fn distance(&self, o: &FockVector) -> f64 {
        self.sub(o).max_abs()
    }
}

/// All sorted mode monomials of total level n (the basis of the level-n two-boson space).
pub fn level_basis(n: u32) -> Vec<FockMonomial> {
    fn rec(rem: u32, min: Mode, cur: &mut FockMonomial, out: &mut Vec<FockMonomial>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for sign in [Sign::Minus, Sign::Plus] {
            for m in 1..=rem {
                let x = (sign, m);
                if x < min {
                    continue;
                }
                cur.push(x);
                rec(rem - m, x, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, (Sign::Minus, 1), &mut Vec::new(), &mut out);
    out
}
