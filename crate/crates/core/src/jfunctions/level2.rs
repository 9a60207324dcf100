//! The level-2 chiral family h^{(1,1)}_a = c_{−1}², h^{(2)}_a = (c_{−2} − i tan πa·c_{−1}²)/(sin πp − sin 2πa).

use num_complex::Complex64;

use crate::algebra::{DescendantElement, Partition};
use crate::error::{Error, Result};
use crate::numeric::{cos_pi, sin_pi};
use crate::params::ModelParams;

/// Relative size of sin πp − sin 2πa (or cos πa) below which h^{(2)}_a is reported as degenerate.
const DENOM_GUARD: f64 = 1e-12;

pub fn h11_element() -> DescendantElement {
    DescendantElement::chiral(Partition::new(vec![1, 1]))
}

/// h^{(2)}_a at numeric a.
pub fn h2_element(a: Complex64, params: &ModelParams) -> Result<DescendantElement> {
    let den = params.sin_pi_p() - sin_pi(2.0 * a);
    if den.norm() < DENOM_GUARD * params.sin_pi_p().norm() {
        let lp = params.nearest_lattice_point(a);
        return Err(Error::Degenerate { a: format!("{a}"), point: format!("{} = {}", lp.label, lp.value), distance: lp.distance });
    }
    let cos = cos_pi(a);
    if cos.norm() < DENOM_GUARD {
        return Err(Error::Pole(format!("h2 has tan πa and is singular at a = {a}; use the recursion or the finite form")));
    }
    let tan = sin_pi(a) / cos;
    let one = Complex64::new(1.0, 0.0);
    let mut g = DescendantElement::zero();
    g.add_term((Partition::single(2), Partition::empty()), crate::algebra::Coeff::Num(one / den))?;
    g.add_term((Partition::new(vec![1, 1]), Partition::empty()), crate::algebra::Coeff::Num(-Complex64::i() * tan / den))?;
    Ok(g)
}

/// h̄^{(2)}_a, the antichiral mirror.
pub fn h2bar_element(a: Complex64, params: &ModelParams) -> Result<DescendantElement> {
    Ok(h2_element(a, params)?.swap_chirality())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_points() {
        let mp = ModelParams::new(0.3);
        assert!(matches!(h2_element(Complex64::new(0.15, 0.0), &mp), Err(Error::Degenerate { .. })));
        assert!(matches!(h2_element(Complex64::new(0.5, 0.0), &mp), Err(Error::Pole(_))));
        assert_eq!(h2_element(Complex64::new(0.1, 0.0), &mp).unwrap().len(), 2);
    }
}
