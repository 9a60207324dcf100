//! Numeric substrate: scalar fields, linear algebra, Γ/E1 and quadrature.

pub mod cjson;
pub mod extended;
pub mod gamma;
pub mod linalg;
pub mod quadrature;
pub mod scalar;

pub use extended::XComplex;
pub use quadrature::{Estimate, QuadratureSpec};
pub use scalar::{cos_pi, exp_i_pi, rel_dev, sin_pi, Scalar};
