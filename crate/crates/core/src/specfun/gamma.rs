//! log Γ, ψ, and ψ′ on the positive half-line via upward recurrence and
//! Bernoulli (Stirling-type) asymptotic expansions.

use crate::config::PrecisionConfig;
use crate::error::{Error, Result};

/// B_{2k} for k = 1..=10.
pub(crate) const BERNOULLI_2K: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

const HALF_LN_2PI: f64 = 0.91893853320467274178;

/// Natural logarithm of Γ(x) for x > 0, relative error near machine level.
///
/// The argument is shifted upward with Γ(x+1) = x Γ(x) until it reaches the
/// asymptotic threshold, then the Stirling series with Bernoulli
/// coefficients is applied.
pub fn log_gamma(x: f64, cfg: &PrecisionConfig) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("log_gamma requires x > 0, got {x}")));
    }
    let threshold = cfg.euler_maclaurin_shift.max(12) as f64;
    let mut shift = 0.0;
    let mut y = x;
    while y < threshold {
        shift += y.ln();
        y += 1.0;
    }
    let mut series = 0.0;
    let y2 = y * y;
    let mut ypow = y;
    for (k, b2k) in BERNOULLI_2K.iter().enumerate().take(8) {
        let k = k as f64 + 1.0;
        series += b2k / (2.0 * k * (2.0 * k - 1.0) * ypow);
        ypow *= y2;
    }
    Ok((y - 0.5) * y.ln() - y + HALF_LN_2PI + series - shift)
}

/// Digamma ψ(x) = d/dx log Γ(x) for x > 0.
pub fn digamma(x: f64, cfg: &PrecisionConfig) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("digamma requires x > 0, got {x}")));
    }
    let threshold = cfg.euler_maclaurin_shift.max(12) as f64;
    let mut shift = 0.0;
    let mut y = x;
    while y < threshold {
        shift += 1.0 / y;
        y += 1.0;
    }
    let inv2 = 1.0 / (y * y);
    let mut series = 0.0;
    let mut p = inv2;
    for (k, b2k) in BERNOULLI_2K.iter().enumerate().take(8) {
        let k = k as f64 + 1.0;
        series += b2k / (2.0 * k) * p;
        p *= inv2;
    }
    Ok(y.ln() - 0.5 / y - series - shift)
}

/// Trigamma ψ′(x) for x > 0.
pub fn trigamma(x: f64, cfg: &PrecisionConfig) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("trigamma requires x > 0, got {x}")));
    }
    let threshold = cfg.euler_maclaurin_shift.max(12) as f64;
    let mut shift = 0.0;
    let mut y = x;
    while y < threshold {
        shift += 1.0 / (y * y);
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut p = inv2 * inv;
    for b2k in BERNOULLI_2K.iter().take(8) {
        series += b2k * p;
        p *= inv2;
    }
    Ok(inv + 0.5 * inv2 + series + shift)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CFG: PrecisionConfig = crate::config::DEFAULT;

    #[test]
    fn log_gamma_known_values() {
        assert!(log_gamma(1.0, &CFG).unwrap().abs() < 1e-14);
        // Γ(1/2) = √π
        let expect = 0.5 * crate::config::LN_PI;
        assert!((log_gamma(0.5, &CFG).unwrap() - expect).abs() < 1e-14);
        // Γ(5) = 24
        assert!((log_gamma(5.0, &CFG).unwrap() - 24f64.ln()).abs() < 1e-14);
        // large argument agrees with recurrence
        let a = log_gamma(123.75, &CFG).unwrap();
        let b = log_gamma(122.75, &CFG).unwrap() + 122.75f64.ln();
        assert!((a - b).abs() < 1e-12 * a.abs());
    }

    #[test]
    fn log_gamma_domain() {
        assert!(log_gamma(0.0, &CFG).is_err());
        assert!(log_gamma(-1.5, &CFG).is_err());
        assert!(log_gamma(f64::NAN, &CFG).is_err());
    }

    #[test]
    fn digamma_known_values() {
        // ψ(1) = −γ
        let gamma_e = 0.57721566490153286061;
        assert!((digamma(1.0, &CFG).unwrap() + gamma_e).abs() < 1e-14);
        // recurrence ψ(x+1) − ψ(x) = 1/x
        let x = 0.7;
        let d = digamma(x + 1.0, &CFG).unwrap() - digamma(x, &CFG).unwrap();
        assert!((d - 1.0 / x).abs() < 1e-13);
        assert!(digamma(-0.1, &CFG).is_err());
    }

    #[test]
    fn trigamma_known_values() {
        // ψ′(1) = π²/6
        let expect = std::f64::consts::PI.powi(2) / 6.0;
        assert!((trigamma(1.0, &CFG).unwrap() - expect).abs() < 1e-13);
        // ψ′(x) − ψ′(x+1) = 1/x²
        let x = 0.37;
        let d = trigamma(x, &CFG).unwrap() - trigamma(x + 1.0, &CFG).unwrap();
        assert!((d - 1.0 / (x * x)).abs() < 1e-12);
        assert!(trigamma(0.0, &CFG).is_err());
    }

    #[test]
    fn digamma_matches_log_gamma_derivative() {
        let x = 2.31;
        let h = 1e-6;
        let fd = (log_gamma(x + h, &CFG).unwrap() - log_gamma(x - h, &CFG).unwrap()) / (2.0 * h);
        assert!((fd - digamma(x, &CFG).unwrap()).abs() < 1e-8);
    }
}
