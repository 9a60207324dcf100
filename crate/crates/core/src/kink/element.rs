use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{Coeff, DescendantElement, Partition};
use crate::error::{Error, Result};
use crate::numeric::cjson::ComplexJson;
use crate::numeric::sin_pi;
use crate::params::ModelParams;

/// K_n = 2i^{1−n} sin(πpn/2), the rescaling c_{−n} = K_n C_{−n}.
pub fn kink_constant(n: u32, params: &ModelParams) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::Domain("kink constants are defined for n ≥ 1".into()));
    }
    let phase = Complex64::i().powi(1 - n as i32);
    Ok(2.0 * phase * sin_pi(params.p * (n as f64 / 2.0)))
}

/// K_h = ∏ K_m^{k_m} over the parts of a monomial (both chiralities).
pub fn kink_norm(chiral: &Partition, antichiral: &Partition, params: &ModelParams) -> Result<Complex64> {
    let mut k = Complex64::new(1.0, 0.0);
    for p in chiral.parts().iter().chain(antichiral.parts()) {
        k *= kink_constant(*p, params)?;
    }
    Ok(k)
}

/// A descendant label read in the kink sector, with the C-basis normalization of each monomial cached.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KinkElement {
    /// Coefficients with respect to the c-monomials.
    pub element: DescendantElement,
    /// K_h per monomial, in the element's term order.
    pub norms: Vec<ComplexJson>,
}

impl KinkElement {
    pub fn new(element: DescendantElement, params: &ModelParams) -> Result<Self> {
        if element.is_rho_mode() {
            return Err(Error::Domain("kink functionals take numeric coefficients".into()));
        }
        let norms = element.terms().map(|((c, a), _)| kink_norm(c, a, params).map(ComplexJson::from)).collect::<Result<_>>()?;
        Ok(KinkElement { element, norms })
    }

    /// Σ y_h C_h with the C-monomial C_h = K_h⁻¹ c_h.
    pub fn from_c_basis(rescaled: &DescendantElement, params: &ModelParams) -> Result<Self> {
        let mut e = DescendantElement::zero();
        for ((c, a), x) in rescaled.terms() {
            let k = kink_norm(c, a, params)?;
            e.add_term((c.clone(), a.clone()), Coeff::Num(x.at_a(Complex64::new(0.0, 0.0)) / k))?;
        }
        KinkElement::new(e, params)
    }

    /// Coefficients with respect to the C-monomials.
    pub fn c_basis(&self) -> Result<DescendantElement> {
        let mut e = DescendantElement::zero();
        for (((c, a), x), k) in self.element.terms().zip(&self.norms) {
            e.add_term((c.clone(), a.clone()), Coeff::Num(x.at_a(Complex64::new(0.0, 0.0)) * Complex64::from(*k)))?;
        }
        Ok(e)
    }

    /// (monomial, coefficient, K_h) triples.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Partition, Complex64, Complex64)> {
        self.element
            .terms()
            .zip(&self.norms)
            .map(|(((c, a), x), k)| (c, a, x.at_a(Complex64::new(0.0, 0.0)), Complex64::from(*k)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_element;
    use std::f64::consts::PI;

    #[test]
    fn constants() {
        let mp = ModelParams::new(0.3);
        let k1 = kink_constant(1, &mp).unwrap();
        assert!((k1 - 2.0 * (PI * 0.15).sin()).norm() < 1e-15);
        let k2 = kink_constant(2, &mp).unwrap();
        assert!((k2 - Complex64::new(0.0, -2.0 * (PI * 0.3).sin())).norm() < 1e-15);
        for p in [1e-3, 1e-4] {
            let k = kink_constant(3, &ModelParams::new(p)).unwrap();
            assert!((k.norm() / p - 3.0 * PI).abs() < 1e-3);
        }
        assert!(kink_constant(0, &mp).is_err());
    }

    #[test]
    fn norms_and_rescaling() {
        let mp = ModelParams::new(0.37);
        let h = parse_element("c-2*c-1^2 + (2-1i)*c-3").unwrap();
        let k = KinkElement::new(h.clone(), &mp).unwrap();
        let k1 = kink_constant(1, &mp).unwrap();
        let k2 = kink_constant(2, &mp).unwrap();
        let want = k2 * k1 * k1;
        assert!(k.terms().any(|(c, _, _, n)| c.parts() == [2, 1, 1] && (n - want).norm() < 1e-14));
        let back = KinkElement::from_c_basis(&k.c_basis().unwrap(), &mp).unwrap();
        assert!(back.element.distance_at(&h, Complex64::new(0.0, 0.0)) < 1e-14);
        let json = serde_json::to_string(&k).unwrap();
        let de: KinkElement = serde_json::from_str(&json).unwrap();
        assert_eq!(de, k);
    }
}
