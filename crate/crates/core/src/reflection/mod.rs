//! Reflection a → −a of descendant J-functions, periodicity in a and cluster factorization.

pub mod properties;
pub mod solve;

pub use properties::{
    bijection_margin, periodicity_defect, rho_parity_defect, self_dual_level2, verify_cluster, verify_periodicity,
};
pub use solve::{involution_defect, sample_sizes, solve_reflection, ReflectionSolution, SampleInfo, SolveOptions};
