//! Descendant labels: finite combinations of (chiral, antichiral) monomials.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::partition::Partition;
use super::rho::RhoLaurent;
use crate::error::{Error, Result};

/// Coefficient of a monomial: a number or a Laurent polynomial in ρ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Rho(RhoLaurent),
    Num(#[serde(with = "crate::numeric::cjson")] Complex64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffMode {
    Numeric,
    Rho,
}

impl Coeff {
    pub fn mode(&self) -> CoeffMode {
        match self {
            Coeff::Num(_) => CoeffMode::Numeric,
            Coeff::Rho(_) => CoeffMode::Rho,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Num(z) => *z == Complex64::new(0.0, 0.0),
            Coeff::Rho(r) => r.is_zero(),
        }
    }

    /// Value at a given a.
    pub fn at_a(&self, a: Complex64) -> Complex64 {
        match self {
            Coeff::Num(z) => *z,
            Coeff::Rho(r) => r.eval_at_a(a),
        }
    }

    /// As a ρ-polynomial (numbers become constants).
    pub fn to_rho(&self) -> RhoLaurent {
        match self {
            Coeff::Num(z) => RhoLaurent::constant(*z),
            Coeff::Rho(r) => r.clone(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Coeff {
        match self {
            Coeff::Num(z) => Coeff::Num(z * s),
            Coeff::Rho(r) => Coeff::Rho(r.scale(s)),
        }
    }

    fn add(&self, o: &Coeff) -> Result<Coeff> {
        match (self, o) {
            (Coeff::Num(x), Coeff::Num(y)) => Ok(Coeff::Num(x + y)),
            (Coeff::Rho(x), Coeff::Rho(y)) => Ok(Coeff::Rho(x.clone() + y.clone())),
            _ => Err(Error::MixedModes),
        }
    }

    fn mul(&self, o: &Coeff) -> Result<Coeff> {
        match (self, o) {
            (Coeff::Num(x), Coeff::Num(y)) => Ok(Coeff::Num(x * y)),
            (Coeff::Rho(x), Coeff::Rho(y)) => Ok(Coeff::Rho(x * y)),
            _ => Err(Error::MixedModes),
        }
    }
}

/// Key of a monomial c_{−λ} c̄_{−μ}.
pub type Monomial = (Partition, Partition);

/// Finite combination Σ coeff · c_{−chiral} c̄_{−antichiral}; all coefficients share one mode.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct DescendantElement {
    terms: BTreeMap<Monomial, Coeff>,
}

impl DescendantElement {
    pub fn zero() -> Self {
        DescendantElement::default()
    }

    /// The identity element (exponential operator).
    pub fn one() -> Self {
        DescendantElement::monomial(Partition::empty(), Partition::empty(), Complex64::new(1.0, 0.0))
    }

    pub fn monomial(chiral: Partition, antichiral: Partition, c: Complex64) -> Self {
        let mut e = DescendantElement::zero();
        e.terms.insert((chiral, antichiral), Coeff::Num(c));
        e.prune();
        e
    }

    pub fn chiral(p: Partition) -> Self {
        DescendantElement::monomial(p, Partition::empty(), Complex64::new(1.0, 0.0))
    }

    pub fn antichiral(p: Partition) -> Self {
        DescendantElement::monomial(Partition::empty(), p, Complex64::new(1.0, 0.0))
    }

    /// c_{−n}.
    pub fn c(n: u32) -> Self {
        DescendantElement::chiral(Partition::single(n))
    }

    /// c̄_{−n}.
    pub fn cbar(n: u32) -> Self {
        DescendantElement::antichiral(Partition::single(n))
    }

    /// Builds an element, rejecting mixed coefficient modes.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coeff)>>(terms: I) -> Result<Self> {
        let mut e = DescendantElement::zero();
        for (k, c) in terms {
            e.add_term(k, c)?;
        }
        Ok(e)
    }

    pub fn add_term(&mut self, key: Monomial, c: Coeff) -> Result<()> {
        if let Some(m) = self.mode() {
            if m != c.mode() {
                return Err(Error::MixedModes);
            }
        }
        let new = match self.terms.get(&key) {
            Some(old) => old.add(&c)?,
            None => c,
        };
        if new.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, new);
        }
        Ok(())
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, chiral: &Partition, antichiral: &Partition) -> Option<&Coeff> {
        self.terms.get(&(chiral.clone(), antichiral.clone()))
    }

    /// Coefficient mode, or None for the zero element.
    pub fn mode(&self) -> Option<CoeffMode> {
        self.terms.values().next().map(|c| c.mode())
    }

    pub fn is_rho_mode(&self) -> bool {
        self.mode() == Some(CoeffMode::Rho)
    }

    /// (level, antilevel) if all terms share it.
    pub fn homogeneous_level(&self) -> Option<(u32, u32)> {
        let mut it = self.terms.keys().map(|(c, a)| (c.level(), a.level()));
        let first = it.next()?;
        if it.all(|l| l == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Largest (level, antilevel) appearing.
    pub fn max_levels(&self) -> (u32, u32) {
        self.terms.keys().fold((0, 0), |(n, m), (c, a)| (n.max(c.level()), m.max(a.level())))
    }

    pub fn is_chiral(&self) -> bool {
        self.terms.keys().all(|(_, a)| a.is_empty())
    }

    pub fn add(&self, o: &DescendantElement) -> Result<Self> {
        let mut e = self.clone();
        for (k, c) in &o.terms {
            e.add_term(k.clone(), c.clone())?;
        }
        Ok(e)
    }

    pub fn sub(&self, o: &DescendantElement) -> Result<Self> {
        self.add(&o.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut e = DescendantElement { terms: self.terms.iter().map(|(k, c)| (k.clone(), c.scale(s))).collect() };
        e.prune();
        e
    }

    /// Product in the commutative algebra.
    pub fn mul(&self, o: &DescendantElement) -> Result<Self> {
        let mut e = DescendantElement::zero();
        for ((c1, a1), x) in &self.terms {
            for ((c2, a2), y) in &o.terms {
                e.add_term((c1.merge(c2), a1.merge(a2)), x.mul(y)?)?;
            }
        }
        Ok(e)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut e = DescendantElement::one();
        if self.is_rho_mode() {
            e = e.to_rho();
        }
        for _ in 0..k {
            e = e.mul(self)?;
        }
        Ok(e)
    }

    /// Numeric element with ρ-coefficients evaluated at a.
    pub fn at_a(&self, a: Complex64) -> Self {
        let mut e = DescendantElement { terms: self.terms.iter().map(|(k, c)| (k.clone(), Coeff::Num(c.at_a(a)))).collect() };
        e.prune();
        e
    }

    /// Same element with every coefficient as a ρ-polynomial.
    pub fn to_rho(&self) -> Self {
        let mut e = DescendantElement { terms: self.terms.iter().map(|(k, c)| (k.clone(), Coeff::Rho(c.to_rho()))).collect() };
        e.prune();
        e
    }

    /// Swaps chiral and antichiral labels (the map h h̄′ ↦ h′ h̄).
    pub fn swap_chirality(&self) -> Self {
        DescendantElement { terms: self.terms.iter().map(|((c, a), x)| ((a.clone(), c.clone()), x.clone())).collect() }
    }

    /// Largest coefficient distance to another element evaluated at a.
    pub fn distance_at(&self, o: &DescendantElement, a: Complex64) -> f64 {
        let d = self.at_a(a).sub(&o.at_a(a)).expect("numeric mode");
        d.terms.values().map(|c| c.at_a(a).norm()).fold(0.0, f64::max)
    }
}

impl fmt::Display for DescendantElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((c, a), x) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match x {
                Coeff::Num(z) => write!(f, "({}{:+}i)", z.re, z.im)?,
                Coeff::Rho(r) => write!(f, "[{r}]")?,
            }
            if !c.is_empty() {
                write!(f, "*{c}")?;
            }
            if !a.is_empty() {
                write!(f, "*{}", a.to_string().replace("c-", "cbar-"))?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    chiral: Vec<u32>,
    antichiral: Vec<u32>,
    coeff: Coeff,
}

impl Serialize for DescendantElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let list: Vec<TermJson> = self
            .terms
            .iter()
            .map(|((c, a), x)| TermJson { chiral: c.parts().to_vec(), antichiral: a.parts().to_vec(), coeff: x.clone() })
            .collect();
        list.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DescendantElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let list = Vec::<TermJson>::deserialize(d)?;
        DescendantElement::from_terms(
            list.into_iter().map(|t| ((Partition::new(t.chiral), Partition::new(t.antichiral)), t.coeff)),
        )
        .map_err(serde::de::Error::custom)
    }
}
