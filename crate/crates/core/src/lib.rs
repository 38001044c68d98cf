//! Closed-form evaluation of the zeta-regularized spectral determinant of the
//! Friedrichs Laplacian on the Riemann sphere carrying a constant-curvature
//! metric with three conical singularities of orders β₁, β₂, β₃ ∈ (−1, 0),
//! together with the extremal analysis of the determinant in the orders.
//!
//! The library is organized in layers:
//!
//! * [`specfun`] — real special functions: log Γ, ψ, ψ′, the Gauss
//!   hypergeometric series, ζ′_H(−1, ·), the Barnes double zeta derivative
//!   ζ′_B(0; a, 1, 1) and its closed form at rationals, Dedekind sums, and
//!   the per-singularity determinant contribution C(β).
//! * [`uniformization`] — the unit-area constant-curvature metric itself:
//!   the coefficient function Φ, the asymptotic coefficients φⱼ and φ_∞,
//!   the Schwarz triangle function, the explicit potential φ(z), and
//!   singularity-aware quadrature of e^{2φ} and φ e^{2φ}.
//! * [`liouville`] — the Liouville action in closed form, the H functional,
//!   flat and classical specializations, and the governing-equation check.
//! * [`determinant`] — log det Δ for any valid divisor and area, via the
//!   closed formula and independently via the quadrature anomaly formula.
//! * [`extremal`] — gradient and Hessian of log det at the symmetric point,
//!   the threshold area S₀(|β|), and stationary-point classification.
//! * [`verify`] — the runnable invariant suites behind `conedet verify`.

// frozen oracle constants keep their full reference digits, and domain
// guards use the `!(x > 0.0)` form on purpose so NaN falls into the error
// branch
#![allow(clippy::excessive_precision)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod determinant;
pub mod diff;
pub mod divisor;
pub mod error;
pub mod extremal;
pub mod liouville;
pub mod specfun;
pub mod uniformization;
pub mod verify;

pub use config::{Constants, PrecisionConfig};
pub use determinant::{DetPath, DetResult, SurfaceSpec};
pub use divisor::{ConeDivisor, GeometryClass};
pub use error::{Error, Result};
