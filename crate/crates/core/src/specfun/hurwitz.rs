//! Hurwitz zeta machinery: ∂_s ζ_H(s, x) at s = −1, and ζ_H(s, x) for s > 1.

use crate::config::PrecisionConfig;
use crate::error::{Error, Result};
use crate::specfun::gamma::BERNOULLI_2K;

/// ∂_s ζ_H(s, x) at s = −1 for x > 0.
///
/// The argument is shifted upward with ζ′_H(−1, x) = −x log x + ζ′_H(−1, x+1)
/// until it reaches the asymptotic threshold, where
///
///   ζ′_H(−1, a) = B₂(a)/2 · log a − a²/4 + 1/12
///                 − Σ_{k≥2} B_{2k} a^{2−2k} / (2k (2k−1)(2k−2)).
pub fn zeta_h_prime_m1(x: f64, cfg: &PrecisionConfig) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!(
            "zeta_h_prime_m1 requires x > 0, got {x}"
        )));
    }
    let threshold = cfg.euler_maclaurin_shift.max(16) as f64;
    let mut shift = 0.0;
    let mut a = x;
    while a < threshold {
        shift += a * a.ln();
        a += 1.0;
    }
    let b2 = a * a - a + 1.0 / 6.0; // B₂(a)
    let mut tail = 0.0;
    let a2 = a * a;
    let mut apow = a2; // a^{2k-2}
    for (i, b2k) in BERNOULLI_2K.iter().enumerate().skip(1) {
        let k = (i + 1) as f64;
        tail += b2k / (2.0 * k * (2.0 * k - 1.0) * (2.0 * k - 2.0) * apow);
        apow *= a2;
    }
    Ok(0.5 * b2 * a.ln() - 0.25 * a2 + 1.0 / 12.0 - tail - shift)
}

/// ζ_H(s, x) for real s > 1 and x > 0, by direct shifting plus the
/// Euler–Maclaurin asymptotic expansion.
pub fn hurwitz_zeta(s: f64, x: f64, cfg: &PrecisionConfig) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!(
            "hurwitz_zeta requires x > 0, got {x}"
        )));
    }
    if !(s > 1.0) {
        return Err(Error::domain(format!(
            "hurwitz_zeta implemented for s > 1 only, got {s}"
        )));
    }
    let threshold = cfg.euler_maclaurin_shift.max(12) as f64;
    let mut head = 0.0;
    let mut a = x;
    while a < threshold {
        head += a.powf(-s);
        a += 1.0;
    }
    // ζ_H(s,a) = a^{1-s}/(s-1) + a^{-s}/2 + Σ_k B_{2k}/(2k)! (s)_{2k-1} a^{-s-2k+1}
    let mut sum = a.powf(1.0 - s) / (s - 1.0) + 0.5 * a.powf(-s);
    let mut poch = s; // (s)_{2k-1}
    let mut fact = 2.0; // (2k)!
    let mut apow = a.powf(-s - 1.0);
    for (i, b2k) in BERNOULLI_2K.iter().enumerate() {
        if i > 0 {
            let m = 2.0 * i as f64;
            poch *= (s + m - 1.0) * (s + m);
            fact *= (m + 1.0) * (m + 2.0);
            apow /= a * a;
        }
        sum += b2k / fact * poch * apow;
    }
    Ok(head + sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{DEFAULT, ZETA_PRIME_M1};

    #[test]
    fn zph_at_one_is_riemann() {
        assert!((zeta_h_prime_m1(1.0, &DEFAULT).unwrap() - ZETA_PRIME_M1).abs() < 3e-13);
    }

    #[test]
    fn zph_at_half() {
        // ζ_H(s,1/2) = (2^s − 1) ζ_R(s) differentiated at s = −1:
        // ζ′_H(−1,1/2) = −(log 2)/24 − ζ′_R(−1)/2
        let expect = -std::f64::consts::LN_2 / 24.0 - ZETA_PRIME_M1 / 2.0;
        let got = zeta_h_prime_m1(0.5, &DEFAULT).unwrap();
        assert!((got - expect).abs() < 3e-13, "got {got}, expect {expect}");
        // frozen high-precision value
        assert!((got - 0.053829439326894410048).abs() < 3e-13);
    }

    #[test]
    fn zph_recurrence() {
        let x = 0.37;
        let d = zeta_h_prime_m1(1.37, &DEFAULT).unwrap() - zeta_h_prime_m1(0.37, &DEFAULT).unwrap();
        assert!((d - x * f64::ln(x)).abs() < 1e-13);
    }

    #[test]
    fn zph_frozen_value() {
        assert!((zeta_h_prime_m1(2.5, &DEFAULT).unwrap() - 0.31545351120916832831).abs() < 3e-13);
    }

    #[test]
    fn zph_domain() {
        assert!(zeta_h_prime_m1(0.0, &DEFAULT).is_err());
        assert!(zeta_h_prime_m1(-2.0, &DEFAULT).is_err());
    }

    #[test]
    fn hurwitz_integer_s() {
        // ζ_H(2,1) = π²/6
        let expect = std::f64::consts::PI.powi(2) / 6.0;
        assert!((hurwitz_zeta(2.0, 1.0, &DEFAULT).unwrap() - expect).abs() < 1e-13);
        // ζ_H(3, 2) = ζ(3) − 1
        let apery = 1.2020569031595942854;
        assert!((hurwitz_zeta(3.0, 2.0, &DEFAULT).unwrap() - (apery - 1.0)).abs() < 1e-13);
    }
}
