//! Construction of the unit-area constant-curvature metric with three
//! conical singularities: coefficient functions, the Schwarz triangle map,
//! the explicit potential, and quadrature-based verification integrals.

mod coeffs;
mod potential;
pub(crate) mod quad;
mod schwarz;

pub use coeffs::{
    log_c_beta_sq_flat, phi_big, phi_big_partials, phi_coeff_general, phi_coeffs, PhiPartials,
};
pub use potential::{metric_phi, PotentialSample};
pub use quad::{area_integral, phi_weighted_integral};
pub use schwarz::{phi_infinity, schwarz_w, schwarz_w_prime};
