//! The coefficient function Φ(β₁, β₂, β₃) of the unit-area metric, its
//! analytic derivatives, and the asymptotic coefficients φⱼ.

use crate::config::{PrecisionConfig, DEFAULT};
use crate::divisor::ConeDivisor;
use crate::error::{Error, Result};
use crate::specfun::{digamma, log_gamma, trigamma};

/// Φ as a weighted sum of log Γ over linear forms of (β₁, β₂, β₃):
///
///   Φ = ½ log Γ(2 + σ/2) − ½ log Γ(−σ/2) + log Γ(−β₁) − log Γ(1 + β₁)
///     + ½ [ log Γ(β₁ − σ/2) + log Γ(1 + σ/2 − β₂) + log Γ(1 + σ/2 − β₃)
///           − log Γ(1 + σ/2 − β₁) − log Γ(β₂ − σ/2) − log Γ(β₃ − σ/2) ]
///     − ½ log 4π,        σ = β₁ + β₂ + β₃.
///
/// Each row is (coefficient, constant, weights of β₁..β₃ in the argument).
const PHI_TERMS: [(f64, f64, [f64; 3]); 10] = [
    (0.5, 2.0, [0.5, 0.5, 0.5]),
    (-0.5, 0.0, [-0.5, -0.5, -0.5]),
    (1.0, 0.0, [-1.0, 0.0, 0.0]),
    (-1.0, 1.0, [1.0, 0.0, 0.0]),
    (0.5, 0.0, [0.5, -0.5, -0.5]),
    (0.5, 1.0, [0.5, -0.5, 0.5]),
    (0.5, 1.0, [0.5, 0.5, -0.5]),
    (-0.5, 1.0, [-0.5, 0.5, 0.5]),
    (-0.5, 0.0, [-0.5, 0.5, -0.5]),
    (-0.5, 0.0, [-0.5, -0.5, 0.5]),
];

const HALF_LN_4PI: f64 = 1.2655121234846453965;

/// Φ(β₁, β₂, β₃) for the slot order as given. In the flat class this equals
/// ½ log [Γ(−β₁)Γ(−β₂)Γ(−β₃) / (4π Γ(β₁+1)Γ(β₂+1)Γ(β₃+1))].
pub fn phi_big(beta: &[f64; 3]) -> Result<f64> {
    phi_big_cfg(beta, &DEFAULT)
}

pub(crate) fn phi_big_cfg(beta: &[f64; 3], cfg: &PrecisionConfig) -> Result<f64> {
    let mut sum = -HALF_LN_4PI;
    for (coef, cst, w) in PHI_TERMS {
        let arg = cst + w[0] * beta[0] + w[1] * beta[1] + w[2] * beta[2];
        if arg <= 0.0 {
            return Err(Error::domain(format!(
                "gamma argument {arg} <= 0 in Phi at beta = {beta:?}"
            )));
        }
        sum += coef * log_gamma(arg, cfg)?;
    }
    Ok(sum)
}

/// Analytic first and second partial derivatives of Φ with respect to its
/// three slots, with σ = β₁+β₂+β₃ chained through every argument.
#[derive(Debug, Clone, Copy)]
pub struct PhiPartials {
    pub gradient: [f64; 3],
    pub hessian: [[f64; 3]; 3],
    /// Σⱼ ∂²Φ/∂βⱼ².
    pub hessian_diag_sum: f64,
    /// ∂₁Φ − ∂₂Φ.
    pub d1_minus_d2: f64,
}

pub fn phi_big_partials(beta: &[f64; 3]) -> Result<PhiPartials> {
    let cfg = &DEFAULT;
    let mut gradient = [0.0; 3];
    let mut hessian = [[0.0; 3]; 3];
    for (coef, cst, w) in PHI_TERMS {
        let arg = cst + w[0] * beta[0] + w[1] * beta[1] + w[2] * beta[2];
        if arg <= 0.0 {
            return Err(Error::domain(format!(
                "gamma argument {arg} <= 0 in Phi at beta = {beta:?}"
            )));
        }
        let psi = digamma(arg, cfg)?;
        let psi1 = trigamma(arg, cfg)?;
        for i in 0..3 {
            gradient[i] += coef * psi * w[i];
            for j in 0..3 {
                hessian[i][j] += coef * psi1 * w[i] * w[j];
            }
        }
    }
    Ok(PhiPartials {
        gradient,
        hessian,
        hessian_diag_sum: hessian[0][0] + hessian[1][1] + hessian[2][2],
        d1_minus_d2: gradient[0] - gradient[1],
    })
}

/// Coefficients (φ₁, φ₂, φ₃) of the potential asymptotics at the canonical
/// marked points (−1, 0, 1):
///
///   φ₁ = −β₁ log 2 + Φ(β₁, β₂, β₃),
///   φ₂ = (β₂ + 2) log 2 + Φ(β₂, β₁, β₃),
///   φ₃ = −β₃ log 2 + Φ(β₃, β₂, β₁).
pub fn phi_coeffs(divisor: &ConeDivisor) -> Result<[f64; 3]> {
    divisor.require_canonical()?;
    let [b1, b2, b3] = divisor.beta;
    let ln2 = std::f64::consts::LN_2;
    Ok([
        -b1 * ln2 + phi_big(&[b1, b2, b3])?,
        (b2 + 2.0) * ln2 + phi_big(&[b2, b1, b3])?,
        -b3 * ln2 + phi_big(&[b3, b2, b1])?,
    ])
}

/// Coefficients φⱼ for arbitrary distinct marked points:
///
///   φ₁ = (β₁+1) log |(p₃−p₂)/((p₃−p₁)(p₂−p₁))| + log 2 + Φ(β₁, β₂, β₃),
///
/// and cyclically for φ₂, φ₃.
pub fn phi_coeff_general(divisor: &ConeDivisor) -> Result<[f64; 3]> {
    let [b1, b2, b3] = divisor.beta;
    let [p1, p2, p3] = divisor.points;
    let ln2 = std::f64::consts::LN_2;
    let dist = |num: num_complex::Complex64, d1: num_complex::Complex64, d2: num_complex::Complex64| -> Result<f64> {
        let v = num.norm() / (d1.norm() * d2.norm());
        if !v.is_finite() || v == 0.0 {
            return Err(Error::divisor("degenerate marked points"));
        }
        Ok(v.ln())
    };
    Ok([
        (b1 + 1.0) * dist(p3 - p2, p3 - p1, p2 - p1)? + ln2 + phi_big(&[b1, b2, b3])?,
        (b2 + 1.0) * dist(p3 - p1, p3 - p2, p1 - p2)? + ln2 + phi_big(&[b2, b1, b3])?,
        (b3 + 1.0) * dist(p2 - p1, p2 - p3, p1 - p3)? + ln2 + phi_big(&[b3, b2, b1])?,
    ])
}

/// Scaling factor C²_β of the flat metric
/// C²_β |z+1|^{2β₁} |z|^{2β₂} |z−1|^{2β₃} |dz|²:
///
///   C²_β = 2^{2β₂+2} Γ(−β₁)Γ(−β₂)Γ(−β₃) / (π Γ(β₁+1)Γ(β₂+1)Γ(β₃+1)).
pub fn log_c_beta_sq_flat(beta: &[f64; 3]) -> Result<f64> {
    let cfg = &DEFAULT;
    let mut v = (2.0 * beta[1] + 2.0) * std::f64::consts::LN_2 - crate::config::LN_PI;
    for &b in beta {
        v += log_gamma(-b, cfg)? - log_gamma(b + 1.0, cfg)?;
    }
    Ok(v)
}
