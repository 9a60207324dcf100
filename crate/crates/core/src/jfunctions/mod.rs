//! J-functions: subset-sum evaluation, residues, recursions and the physical form factor.

pub mod assemble;
pub mod direct;
pub mod kernel;
pub mod level2;
pub mod recurrence;
pub mod residues;

pub use assemble::{assemble_form_factor, FormFactor};
pub use direct::{j_direct, j_rho, j_rho_result, j_value, JResult, JValue};
pub use level2::{h11_element, h2_element, h2bar_element};
pub use recurrence::{recur_exponential, recur_exponential_rho, recur_level2};
pub use residues::{pole_decomposition, residue_kinematic, residue_numeric, PoleDecomposition};
