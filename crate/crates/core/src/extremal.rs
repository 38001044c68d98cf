//! Extremal structure of log det Δ^S_β in the orders at fixed degree:
//! gradient at the symmetric point, the analytic Hessian, the threshold
//! area S₀(|β|), and stationary-point classification.

use crate::config::DEFAULT;
use crate::determinant::{logdet, SurfaceSpec};
use crate::diff::central_derivative;
use crate::divisor::ConeDivisor;
use crate::error::{Error, Result};
use crate::specfun::c_second_derivative;
use crate::uniformization::{phi_big, phi_big_partials};

/// The constrained Hessian of log det at βⱼ = |β|/3 on the surface of fixed
/// degree, in the (β₁, β₃) coordinates: [[d11, d13], [d13, d11]] with
/// eigenvectors (1, 1) and (1, −1).
#[derive(Debug, Clone, Copy)]
pub struct HessianAtSymmetric {
    /// ∂²/∂β₁² (equals ∂²/∂β₃² by symmetry).
    pub d11: f64,
    /// Mixed ∂²/∂β₃∂β₁; structurally d11/2.
    pub d13: f64,
    /// (d11 + d13, d11 − d13).
    pub eigenvalues: (f64, f64),
    /// Threshold area at this degree: d11 changes sign at S = s0.
    pub s0: f64,
}

/// Classification of a configuration (β, S) as a critical point of the
/// fixed-degree determinant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Minimum,
    Maximum,
    Saddle,
    Degenerate,
    NotStationary,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Minimum => "Minimum",
            Classification::Maximum => "Maximum",
            Classification::Saddle => "Saddle",
            Classification::Degenerate => "Degenerate",
            Classification::NotStationary => "NotStationary",
        }
    }
}

/// Finite-difference gradient of log det along (β₁, β₃) at fixed degree and
/// area, step 1e-3 with one Richardson level. The closed-form log det
/// carries ~1e-12 of evaluation noise from the layer-summed ζ′_B, so a
/// smaller step would drown the 1e-8 stationarity target in roundoff; the
/// Richardson level keeps the truncation at O(h⁴).
pub fn gradient_at(divisor: &ConeDivisor, area: f64) -> Result<[f64; 2]> {
    divisor.require_canonical()?;
    let beta = divisor.beta;
    let degree = divisor.degree();
    let h = 1e-3;
    let value = |b1: f64, b3: f64| -> Result<f64> {
        let d = ConeDivisor::new([b1, degree - b1 - b3, b3])?;
        Ok(logdet(&SurfaceSpec::new(d, area)?)?.log_det)
    };
    for step in [h, -h] {
        // both probe directions must stay inside the validity region
        value(beta[0] + step, beta[2])
            .and(value(beta[0], beta[2] + step))
            .map_err(|_| Error::domain("finite-difference step collides with the validity boundary"))?;
    }
    let g1 = central_derivative(|x| value(x, beta[2]), beta[0], h)?;
    let g3 = central_derivative(|x| value(beta[0], x), beta[2], h)?;
    Ok([g1, g3])
}

/// The analytic second derivatives at βⱼ = |β|/3, assembled from Φ and its
/// slot partials with the degree chained through all three slots, plus the
/// Richardson-differenced C″:
///
///   d11 = −9(|β|+3)⁻³ (2 log 2 + log S + 2Φ) + 6(|β|+3)⁻² (∂₁Φ − ∂₂Φ)
///         + (w/3)(H₁₁ + 2H₂₂ − 2H₁₂ − H₂₃) − 2C″(|β|/3),
///   w = (|β|+3)/3 − 3/(|β|+3),
///
/// and d13 with every coefficient halved. The mixed Hessian entries H₁₂ and
/// H₂₃ come out of the constrained chain rule (β₂ = |β| − β₁ − β₃ couples
/// the slots); dropping them fails the finite-difference cross-check and
/// shifts the flat threshold area from 1.92 to 1.76.
pub fn hessian_symmetric(abs_beta: f64, area: f64) -> Result<HessianAtSymmetric> {
    if !(-3.0 < abs_beta && abs_beta < 0.0) {
        return Err(Error::domain(format!(
            "degree must lie in (-3,0), got {abs_beta}"
        )));
    }
    if !(area > 0.0) || !area.is_finite() {
        return Err(Error::domain("area must be positive"));
    }
    let b = abs_beta / 3.0;
    let beta = [b, b, b];
    let phi = phi_big(&beta)?;
    let parts = phi_big_partials(&beta)?;
    let h = parts.hessian;
    let mixed_combo = h[0][0] + 2.0 * h[1][1] - 2.0 * h[0][1] - h[1][2];
    let cpp = c_second_derivative(b, &DEFAULT)?;
    let t = abs_beta + 3.0;
    let w = t / 3.0 - 3.0 / t;
    let base = 2.0 * std::f64::consts::LN_2 + area.ln() + 2.0 * phi;
    let d11 =
        -9.0 * t.powi(-3) * base + 6.0 * t.powi(-2) * parts.d1_minus_d2 + w / 3.0 * mixed_combo
            - 2.0 * cpp;
    let d13 =
        -4.5 * t.powi(-3) * base + 3.0 * t.powi(-2) * parts.d1_minus_d2 + w / 6.0 * mixed_combo
            - cpp;
    // S-independent part determines where d11 crosses zero
    let d11_at_unit = d11 + 9.0 * t.powi(-3) * area.ln();
    let s0 = (d11_at_unit * t.powi(3) / 9.0).exp();
    Ok(HessianAtSymmetric {
        d11,
        d13,
        eigenvalues: (d11 + d13, d11 - d13),
        s0,
    })
}

/// The unique area S₀ with d11(|β|, S₀) = 0, in closed form from the
/// affine-in-log-S structure of d11.
pub fn threshold_area(abs_beta: f64) -> Result<f64> {
    Ok(hessian_symmetric(abs_beta, 1.0)?.s0)
}

const GRADIENT_TOL: f64 = 1e-6;
const DEGENERACY_TOL: f64 = 1e-9;

/// Classify (β, S): `NotStationary` when the gradient norm exceeds 1e-6,
/// otherwise by the Hessian eigenvalue signs with a 1e-9 degeneracy band.
pub fn classify(divisor: &ConeDivisor, area: f64) -> Result<Classification> {
    let g = gradient_at(divisor, area)?;
    let norm = (g[0] * g[0] + g[1] * g[1]).sqrt();
    if norm > GRADIENT_TOL {
        return Ok(Classification::NotStationary);
    }
    let h = hessian_symmetric(divisor.degree(), area)?;
    let (l1, l2) = h.eigenvalues;
    if l1.abs() <= DEGENERACY_TOL || l2.abs() <= DEGENERACY_TOL {
        return Ok(Classification::Degenerate);
    }
    Ok(match (l1 > 0.0, l2 > 0.0) {
        (true, true) => Classification::Minimum,
        (false, false) => Classification::Maximum,
        _ => Classification::Saddle,
    })
}
