//! Special functions of the model: the kernel f, R(θ), λ′, G_a, R_a and the kink function G(θ).

pub mod constants;
pub mod expsum;
pub mod kernel;
pub mod kink_g;
pub mod minimal_r;

pub use constants::{lambda_prime, reflection_const, vev_g};
pub use kernel::{f_kernel, f_value};
pub use kink_g::{kink_g, kink_g_rep, kink_w, KinkRep};
pub use minimal_r::minimal_r;
