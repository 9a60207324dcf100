//! J-function forms of the equation of motion, energy–momentum conservation, the T-component
//! identification and the action of odd generators.

pub mod checks;
pub mod derivative;
pub mod report;

pub use checks::{
    check_em_conservation, check_eom, check_odd_generator, check_t_identification, h2_limit_finite, h2_limit_numeric,
};
pub use derivative::{d_da_j, d_da_j_family, d_da_j_numeric};
pub use report::IdentityReport;
