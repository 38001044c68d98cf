//! High-accuracy real special functions underlying the closed-form
//! determinant: Γ-family, Gauss hypergeometric, Hurwitz and Barnes zeta
//! derivatives, Dedekind sums, and the cone contribution C(β).

mod barnes;
mod dedekind;
mod gamma;
mod hurwitz;
mod hyp2f1;

pub use barnes::{barnes_zeta_prime0, barnes_zeta_prime0_rational, c_of_beta, c_second_derivative};
pub(crate) use barnes::c_second_derivative_with_step;
pub use dedekind::{dedekind_sum, Rational};
pub use gamma::{digamma, log_gamma, trigamma};
pub use hurwitz::{hurwitz_zeta, zeta_h_prime_m1};
pub use hyp2f1::hyp2f1;
