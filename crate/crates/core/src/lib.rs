//! Form factors of descendant operators in the sine-Gordon / restricted models.

pub mod error;
pub mod numeric;
pub mod params;
pub mod sampling;
pub mod algebra;
pub mod special;
pub mod jfunctions;
pub mod kink;
pub mod fock;
pub mod identities;
pub mod reflection;

pub use error::{Error, Result};
pub use params::{ModelParams, Precision};
pub use algebra::{DescendantElement, Partition, RhoLaurent};
