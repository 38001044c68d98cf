//! The Barnes double zeta derivative ζ′_B(0; a, 1, 1), its closed form at
//! rational a, and the per-singularity determinant contribution C(β).

use crate::config::{PrecisionConfig, ZETA_PRIME_M1};
use crate::error::{Error, Result};
use crate::specfun::dedekind::{dedekind_sum, gcd_u64};
use crate::specfun::gamma::{digamma, log_gamma, BERNOULLI_2K};
use crate::specfun::hurwitz::{hurwitz_zeta, zeta_h_prime_m1};

const LN_2PI: f64 = 1.8378770664093454836;

/// Layers of ζ_B(s; a, 1, 1) = Σ_{m≥0} ζ_H(s, am+1) summed explicitly
/// before the Euler–Maclaurin tail in m takes over. The tail error decays
/// faster than LAYERS^{-15}, so 24 layers keep it far below 1e-12 while the
/// f64 rounding of the ζ′_H(−1, a·LAYERS+1) boundary term (which scales
/// like (a·LAYERS)² ε) stays small enough for the C″ differences downstream.
const LAYERS: usize = 24;
/// Bernoulli terms kept in the Euler–Maclaurin tail.
const TAIL_TERMS: usize = 8;

/// ∂_s ζ_B(s; a, 1, 1) at s = 0 for a > 0, absolute accuracy ~1e-12.
///
/// Uses the layer decomposition ζ_B(s; a,1,1) = Σ_{m≥0} ζ_H(s, am+1): the
/// first `LAYERS` layers contribute ζ′_H(0, am+1) = log Γ(am+1) − ½ log 2π,
/// and the tail is an Euler–Maclaurin expansion in m, analytically
/// continued to s = 0 before differentiation:
///
///   T′(0) = −[ζ′_H(−1,X) − B₂(X)/2]/a + ½ log Γ(X) − ¼ log 2π
///           − (a/12) ψ(X) + Σ_{k≥2} B_{2k} a^{2k−1} ζ_H(2k−1, X) / (2k(2k−1)),
///
/// with X = a·LAYERS + 1.
pub fn barnes_zeta_prime0(a: f64, cfg: &PrecisionConfig) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(format!(
            "barnes_zeta_prime0 requires a > 0, got {a}"
        )));
    }
    let x_tail = a * LAYERS as f64 + 1.0;
    // compensated summation: the layers grow to log Γ(64a+1) and their
    // rounding would otherwise dominate the error budget of C″
    let mut sum = 0.0;
    let mut carry = 0.0;
    for m in 0..LAYERS {
        let term = log_gamma(a * m as f64 + 1.0, cfg)? - 0.5 * LN_2PI - carry;
        let t = sum + term;
        carry = (t - sum) - term;
        sum = t;
    }
    let b2 = x_tail * x_tail - x_tail + 1.0 / 6.0;
    sum -= (zeta_h_prime_m1(x_tail, cfg)? - 0.5 * b2) / a;
    sum += 0.5 * log_gamma(x_tail, cfg)? - 0.25 * LN_2PI;
    sum -= a / 12.0 * digamma(x_tail, cfg)?;
    let mut apow = a; // a^{2k-1}
    for (i, b2k) in BERNOULLI_2K.iter().enumerate().take(TAIL_TERMS).skip(1) {
        let k = (i + 1) as f64;
        apow *= a * a;
        sum += b2k * apow / (2.0 * k * (2.0 * k - 1.0)) * hurwitz_zeta(2.0 * k - 1.0, x_tail, cfg)?;
    }
    if !sum.is_finite() {
        return Err(Error::convergence(format!(
            "barnes_zeta_prime0 produced a non-finite value at a = {a}"
        )));
    }
    Ok(sum)
}

/// Exact ζ′_B(0; p/q, 1, 1) for coprime positive integers p, q, via the
/// closed form in terms of Γ, the Riemann ζ′(−1), and the Dedekind sum
/// S(q, p). Sawtooth arguments ((·)) that vanish contribute log Γ(1/2).
pub fn barnes_zeta_prime0_rational(p: u64, q: u64, cfg: &PrecisionConfig) -> Result<f64> {
    if p == 0 || q == 0 {
        return Err(Error::domain("barnes_zeta_prime0_rational requires p, q >= 1"));
    }
    if gcd_u64(p, q) != 1 {
        return Err(Error::domain(format!(
            "barnes_zeta_prime0_rational requires gcd(p, q) = 1, got ({p}, {q})"
        )));
    }
    let (pf, qf) = (p as f64, q as f64);
    if p == 1 {
        // simplified form at p = 1
        let mut sum = ZETA_PRIME_M1 / qf - qf.ln() / (12.0 * qf) + (qf - 1.0) / 4.0 * LN_2PI;
        for j in 1..q {
            sum -= j as f64 / qf * log_gamma(j as f64 / qf, cfg)?;
        }
        return Ok(sum);
    }
    let sawtooth = |num: u64, den: u64| -> f64 {
        let r = num % den;
        if r == 0 {
            0.0
        } else {
            r as f64 / den as f64 - 0.5
        }
    };
    let s_qp = dedekind_sum(q, p).to_f64();
    let mut sum = ZETA_PRIME_M1 / (pf * qf) - qf.ln() / (12.0 * pf * qf)
        + (0.25 + s_qp) * (qf / pf).ln();
    for k in 1..p {
        sum += (0.5 - k as f64 / pf) * log_gamma(sawtooth(k * q, p) + 0.5, cfg)?;
    }
    for j in 1..q {
        sum += (0.5 - j as f64 / qf) * log_gamma(sawtooth(j * p, q) + 0.5, cfg)?;
    }
    Ok(sum)
}

/// C(β) = 2ζ′_B(0; β+1, 1, 1) − 2ζ′_R(−1) − β²/(6(β+1)) log 2 − β/12
///        + ½ log(β+1), for β > −1.
pub fn c_of_beta(beta: f64, cfg: &PrecisionConfig) -> Result<f64> {
    if !(beta > -1.0) || !beta.is_finite() {
        return Err(Error::domain(format!(
            "c_of_beta requires beta > -1, got {beta}"
        )));
    }
    let a = beta + 1.0;
    Ok(2.0 * barnes_zeta_prime0(a, cfg)? - 2.0 * ZETA_PRIME_M1
        - beta * beta / (6.0 * a) * std::f64::consts::LN_2
        - beta / 12.0
        + 0.5 * a.ln())
}

/// C″(β) by Richardson-extrapolated central second differences of
/// [`c_of_beta`] with two extrapolation levels. The base step 1e-2 balances
/// the h⁶ extrapolated truncation against the ~1e-12 evaluation noise of
/// the layer-summed ζ′_B, which at the finest level h/4 enters as 64·ε/h²;
/// near the β = −1 pole the step shrinks with β+1 because the high
/// derivatives of C grow like (β+1)^{−k}.
pub fn c_second_derivative(beta: f64, cfg: &PrecisionConfig) -> Result<f64> {
    let h0 = (0.04 * (beta + 1.0)).clamp(2e-3, 1e-2);
    c_second_derivative_with_step(beta, h0, cfg)
}

pub(crate) fn c_second_derivative_with_step(
    beta: f64,
    h0: f64,
    cfg: &PrecisionConfig,
) -> Result<f64> {
    let d2 = |h: f64| -> Result<f64> {
        Ok((c_of_beta(beta + h, cfg)? - 2.0 * c_of_beta(beta, cfg)? + c_of_beta(beta - h, cfg)?)
            / (h * h))
    };
    let a = d2(h0)?;
    let b = d2(h0 / 2.0)?;
    let c = d2(h0 / 4.0)?;
    let r1 = (4.0 * b - a) / 3.0;
    let r2 = (4.0 * c - b) / 3.0;
    Ok((16.0 * r2 - r1) / 15.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::DEFAULT;

    #[test]
    fn regular_point_reduces_to_riemann() {
        // ζ_B(s;1,1,1) = ζ_R(s−1), so ζ′_B(0;1,1,1) = ζ′_R(−1)
        let got = barnes_zeta_prime0(1.0, &DEFAULT).unwrap();
        assert!((got - ZETA_PRIME_M1).abs() < 1e-11);
        let rat = barnes_zeta_prime0_rational(1, 1, &DEFAULT).unwrap();
        assert!((rat - ZETA_PRIME_M1).abs() < 1e-14);
    }

    #[test]
    fn rational_half_frozen() {
        // p=1, q=2: ½ζ′_R(−1) − (log 2)/24 − ½ log Γ(1/2) + ¼ log 2π
        let got = barnes_zeta_prime0_rational(1, 2, &DEFAULT).unwrap();
        assert!((got - 0.061695090766429808188).abs() < 1e-14);
        let numeric = barnes_zeta_prime0(0.5, &DEFAULT).unwrap();
        assert!((got - numeric).abs() < 1e-11);
    }

    #[test]
    fn rational_vs_numeric() {
        for &(p, q) in &[(2u64, 3u64), (3, 4), (5, 7)] {
            let rat = barnes_zeta_prime0_rational(p, q, &DEFAULT).unwrap();
            let num = barnes_zeta_prime0(p as f64 / q as f64, &DEFAULT).unwrap();
            assert!(
                (rat - num).abs() < 1e-10,
                "({p},{q}): rational {rat} vs numeric {num}"
            );
        }
        // frozen spot checks
        let v = barnes_zeta_prime0_rational(2, 3, &DEFAULT).unwrap();
        assert!((v - -0.055174146229020610729).abs() < 1e-13);
        let v = barnes_zeta_prime0_rational(5, 7, &DEFAULT).unwrap();
        assert!((v - -0.077954694715272227082).abs() < 1e-13);
    }

    #[test]
    fn rational_rejects_non_coprime() {
        assert!(barnes_zeta_prime0_rational(2, 4, &DEFAULT).is_err());
        assert!(barnes_zeta_prime0_rational(0, 3, &DEFAULT).is_err());
    }

    #[test]
    fn c_at_zero_vanishes() {
        assert!(c_of_beta(0.0, &DEFAULT).unwrap().abs() < 1e-11);
    }

    #[test]
    fn c_frozen_values() {
        assert!((c_of_beta(-0.5, &DEFAULT).unwrap() - 0.091563280273793377644).abs() < 1e-11);
        assert!(
            (c_of_beta(-1.0 / 3.0, &DEFAULT).unwrap() - 0.026285130317668854052).abs() < 1e-11
        );
        assert!(c_of_beta(-1.0, &DEFAULT).is_err());
    }

    #[test]
    fn c_dual_path_rational() {
        // C(−1/3) through the rational Barnes value
        let bz = barnes_zeta_prime0_rational(2, 3, &DEFAULT).unwrap();
        let beta: f64 = -1.0 / 3.0;
        let direct = 2.0 * bz - 2.0 * ZETA_PRIME_M1
            - beta * beta / (6.0 * (beta + 1.0)) * std::f64::consts::LN_2
            - beta / 12.0
            + 0.5 * (beta + 1.0f64).ln();
        let numeric = c_of_beta(beta, &DEFAULT).unwrap();
        assert!((direct - numeric).abs() < 1e-10);
    }

    #[test]
    fn c_second_derivative_step_halving() {
        // FD C″ is stable under doubling the base step, and matches a
        // frozen independent high-precision evaluation
        let cfg = DEFAULT;
        let v = c_second_derivative(-2.0 / 3.0, &cfg).unwrap();
        assert!((v - 16.114855464627635).abs() < 1e-6, "got {v}");
        let w = c_second_derivative_with_step(-2.0 / 3.0, 2e-2, &cfg).unwrap();
        assert!((v - w).abs() < 1e-5, "{v} vs {w}");
    }

    #[test]
    fn c_second_derivative_near_pole() {
        // the high derivatives of C blow up toward β = −1; the scaled step
        // must still deliver ~1e-6 relative accuracy there
        let cfg = DEFAULT;
        let v = c_second_derivative(-0.9, &cfg).unwrap();
        assert!((v - 713.96487351805389).abs() < 1e-3, "got {v}");
        let v = c_second_derivative(-0.1, &cfg).unwrap();
        assert!((v - 0.40684405616701086).abs() < 1e-6, "got {v}");
    }
}
