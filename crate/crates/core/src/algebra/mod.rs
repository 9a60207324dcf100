//! Descendant labels, partitions, ρ-polynomials and the P-functionals.

pub mod element;
pub mod functional;
pub mod parse;
pub mod partition;
pub mod rho;

pub use element::{Coeff, CoeffMode, DescendantElement, Monomial};
pub use functional::{check_kinematic_chain, eval_p, eval_p_at, level_rank, power_sum};
pub use parse::parse_element;
pub use partition::{enumerate_partitions, partition_count, Partition};
pub use rho::RhoLaurent;
