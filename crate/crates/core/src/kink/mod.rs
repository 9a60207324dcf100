//! Polynomial layer of the kink sector: rescaled generators, currents and the Q-functionals.

pub mod element;
pub mod functional;

pub use element::{kink_constant, kink_norm, KinkElement};
pub use functional::{
    chain_defect, current_exponent, homogeneity_defect, level_basis, pq_consistency, q_eval, q_rank, symmetry_defect,
};
