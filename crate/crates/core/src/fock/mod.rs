//! Free-field oracle: two Heisenberg bosons, vertex operators, tilde matrix elements and the
//! level states used in the reflection argument.

pub mod heisenberg;
pub mod states;
pub mod tilde;
pub mod vector;
pub mod vertex;

pub use heisenberg::{HeisenbergSpec, LinearForm, Sign};
pub use states::{
    coefficient_matrix, even_projector_apply, invaction_defect, level2_worked_example, level_state_coefficients,
    projected_vector, reduction_check, reduction_defect, spanning_rank, worked_example_ratio, WorkedExample,
};
pub use tilde::{matrix_element_tilde, pair_element, tilde_to_plain, tilde_via_plain, w_residue_check, WResidueCheck};
pub use vector::{level_basis, FockMonomial, FockVector, Mode, Side};
pub use vertex::{letter_contraction, pair_contraction, t_vacuum_expectation, ts_expectation, Letter, VertexWord};
