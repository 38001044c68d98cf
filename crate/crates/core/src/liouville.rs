//! The Liouville action in closed form, the H functional, flat and
//! classical-limit specializations, and the governing-equation check.

use crate::config::{ZETA_PRIME_M1, DEFAULT, LN_PI};
use crate::diff::central_derivative;
use crate::divisor::ConeDivisor;
use crate::error::{Error, Result};
use crate::specfun::zeta_h_prime_m1;
use crate::uniformization::phi_coeffs;

/// The action with its term-by-term trace — the ± pattern of the closed
/// formula is the most error-prone transcription point, so every summand is
/// kept addressable.
#[derive(Debug, Clone)]
pub struct ActionBreakdown {
    /// S_β\[φ\].
    pub action: f64,
    /// log H_β\[φ\] = 2 Σⱼ (βⱼ+1 − 1/(βⱼ+1)) φⱼ.
    pub log_h: f64,
    /// Classical action S^{(cl)} at the unit-area curvature 2π(|β|+2).
    pub classical: f64,
    /// Labeled summands of S_β\[φ\]/(4π).
    pub terms: Vec<(&'static str, f64)>,
}

/// S_β\[φ\]/(4π) assembled from Hurwitz zeta derivatives:
///
///   −(|β|+2)/2 (2+log π) − [(β₁²+2β₁)/2 − (β₂²+2β₂)/2 + (β₃²+2β₃)/2] log 2
///   − Σⱼ [ζ′_H(−1,−βⱼ) + ζ′_H(−1,1+βⱼ) − ζ′_H(−1,βⱼ−|β|/2) − ζ′_H(−1,1+|β|/2−βⱼ)]
///   + ζ′_H(−1,−|β|/2) + ζ′_H(−1,2+|β|/2) − 2ζ′_R(−1).
fn action_terms(beta: &[f64; 3]) -> Result<Vec<(&'static str, f64)>> {
    let cfg = &DEFAULT;
    let s: f64 = beta.iter().sum();
    let zph = |x: f64| zeta_h_prime_m1(x, cfg);
    let ln2 = std::f64::consts::LN_2;
    let mut terms = Vec::with_capacity(5);
    terms.push(("area_term", -(s + 2.0) / 2.0 * (2.0 + LN_PI)));
    terms.push((
        "log2_polynomial",
        -((beta[0] * beta[0] + 2.0 * beta[0]) / 2.0 - (beta[1] * beta[1] + 2.0 * beta[1]) / 2.0
            + (beta[2] * beta[2] + 2.0 * beta[2]) / 2.0)
            * ln2,
    ));
    let mut hurwitz_sum = 0.0;
    for &b in beta {
        hurwitz_sum -= zph(-b)? + zph(1.0 + b)? - zph(b - s / 2.0)? - zph(1.0 + s / 2.0 - b)?;
    }
    terms.push(("hurwitz_per_order", hurwitz_sum));
    terms.push(("hurwitz_degree", zph(-s / 2.0)? + zph(2.0 + s / 2.0)?));
    terms.push(("riemann_constant", -2.0 * ZETA_PRIME_M1));
    Ok(terms)
}

/// The Liouville action S_β\[φ\] for the unit-area metric at the canonical
/// marked points (−1, 0, 1).
pub fn action_explicit(divisor: &ConeDivisor) -> Result<f64> {
    divisor.require_canonical()?;
    let terms = action_terms(&divisor.beta)?;
    Ok(4.0 * std::f64::consts::PI * terms.iter().map(|(_, v)| v).sum::<f64>())
}

/// log H_β\[φ\] = 2 Σⱼ (βⱼ+1 − 1/(βⱼ+1)) φⱼ.
pub fn h_functional(divisor: &ConeDivisor) -> Result<f64> {
    let ph = phi_coeffs(divisor)?;
    Ok(2.0
        * divisor
            .beta
            .iter()
            .zip(ph)
            .map(|(&b, p)| (b + 1.0 - 1.0 / (b + 1.0)) * p)
            .sum::<f64>())
}

/// Full action diagnostics for one divisor. The classical action is taken
/// at the unit-area curvature, where 2(|β|+2)/K ≡ 1/π identically; this
/// form stays finite through the flat class (K = 0).
pub fn action_breakdown(divisor: &ConeDivisor) -> Result<ActionBreakdown> {
    divisor.require_canonical()?;
    let terms = action_terms(&divisor.beta)?;
    let total: f64 = terms.iter().map(|(_, v)| v).sum();
    let action = 4.0 * std::f64::consts::PI * total;
    // classical = full action/(4π) minus the marked-point log 2 terms
    let log2_poly = terms
        .iter()
        .find(|(n, _)| *n == "log2_polynomial")
        .map(|(_, v)| *v)
        .unwrap_or(0.0);
    Ok(ActionBreakdown {
        action,
        log_h: h_functional(divisor)?,
        classical: total - log2_poly,
        terms,
    })
}

/// Curvature-zero specialization S_β\[φ\] = 4π β₁ β₃ log 2 on the flat line
/// β₂ = −2 − β₁ − β₃.
pub fn action_flat(beta1: f64, beta3: f64) -> Result<f64> {
    let beta2 = -2.0 - beta1 - beta3;
    if !(-1.0 < beta2 && beta2 < 0.0) {
        return Err(Error::divisor(format!(
            "flat class violation: implied beta_2 = {beta2} outside (-1,0)"
        )));
    }
    Ok(4.0 * std::f64::consts::PI * beta1 * beta3 * std::f64::consts::LN_2)
}

/// The classical Liouville action S^{(cl)}(K; β₁, β₂, β₃): the fixed-curvature
/// form whose only K-dependence is (|β|+2)/2 · (log(2(|β|+2)/K) − 2).
pub fn classical_action(curvature: f64, beta: &[f64; 3]) -> Result<f64> {
    let cfg = &DEFAULT;
    let s: f64 = beta.iter().sum();
    let area = 2.0 * std::f64::consts::PI * (s + 2.0) / curvature;
    if !(area > 0.0) || !area.is_finite() {
        return Err(Error::domain(format!(
            "curvature {curvature} inconsistent with degree {s}: area must be positive"
        )));
    }
    let zph = |x: f64| zeta_h_prime_m1(x, cfg);
    let mut v = (s + 2.0) / 2.0 * ((2.0 * (s + 2.0) / curvature).ln() - 2.0);
    for &b in beta {
        v -= zph(-b)? + zph(1.0 + b)? - zph(b - s / 2.0)? - zph(1.0 + s / 2.0 - b)?;
    }
    v += zph(-s / 2.0)? + zph(2.0 + s / 2.0)? - 2.0 * ZETA_PRIME_M1;
    Ok(v)
}

/// S_β[φ + ½ log(2π(|β|+2)/K)]/(4π) at arbitrary marked points: the classical
/// action plus the δ-weighted log-distance terms, δⱼ = −βⱼ(βⱼ+2).
pub fn action_general_points(curvature: f64, divisor: &ConeDivisor) -> Result<f64> {
    let beta = divisor.beta;
    let [p1, p2, p3] = divisor.points;
    let delta: Vec<f64> = beta.iter().map(|&b| -b * (b + 2.0)).collect();
    let mut v = classical_action(curvature, &beta)?;
    v += (delta[0] + delta[1] - delta[2]) / 2.0 * (p1 - p2).norm().ln();
    v += (delta[1] + delta[2] - delta[0]) / 2.0 * (p2 - p3).norm().ln();
    v += (delta[2] + delta[0] - delta[1]) / 2.0 * (p1 - p3).norm().ln();
    Ok(v)
}

/// |∂_{βⱼ} S_β\[φ\] − (4π φⱼ − 2π)| by Richardson-extrapolated central
/// differences of the explicit action, step 1e-5.
pub fn governing_check(divisor: &ConeDivisor, j: usize) -> Result<f64> {
    divisor.require_canonical()?;
    if j >= 3 {
        return Err(Error::domain(format!("governing_check index {j} out of range")));
    }
    let h = 1e-5;
    let beta = divisor.beta;
    for &b in &beta {
        if b + h >= 0.0 || b - h <= -1.0 {
            return Err(Error::domain(
                "finite-difference step collides with the validity boundary",
            ));
        }
    }
    let deriv = central_derivative(
        |x| {
            let mut b = beta;
            b[j] = x;
            action_terms(&b).map(|t| {
                4.0 * std::f64::consts::PI * t.iter().map(|(_, v)| v).sum::<f64>()
            })
        },
        beta[j],
        h,
    )?;
    let ph = phi_coeffs(divisor)?;
    Ok((deriv - (4.0 * std::f64::consts::PI * ph[j] - 2.0 * std::f64::consts::PI)).abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn div(beta: [f64; 3]) -> ConeDivisor {
        ConeDivisor::new(beta).unwrap()
    }

    #[test]
    fn flat_action_closed_form() {
        // S = 4π β₁ β₃ log 2 on the flat line
        let d = div([-0.5, -0.8, -0.7]);
        let a = action_explicit(&d).unwrap();
        let expect = action_flat(-0.5, -0.7).unwrap();
        assert!((a - expect).abs() < 1e-10, "{a} vs {expect}");
        assert!((expect - 3.0486205264250428).abs() < 1e-12);
    }

    #[test]
    fn flat_line_grid_agreement() {
        for i in 1..6 {
            for k in 1..6 {
                let b1 = -0.3 - 0.1 * i as f64;
                let b3 = -0.3 - 0.1 * k as f64;
                let b2 = -2.0 - b1 - b3;
                if !(-1.0 < b2 && b2 < 0.0) {
                    continue;
                }
                let a = action_explicit(&div([b1, b2, b3])).unwrap();
                let f = action_flat(b1, b3).unwrap();
                assert!((a - f).abs() < 1e-10, "({b1},{b3}): {a} vs {f}");
            }
        }
    }

    #[test]
    fn sphere_limit() {
        // S/(4π) → −2 − log π as βⱼ → 0⁻
        let e = -1e-7;
        let a = action_explicit(&div([e, e, e])).unwrap() / (4.0 * std::f64::consts::PI);
        assert!((a - (-2.0 - LN_PI)).abs() < 1e-5, "got {a}");
    }

    #[test]
    fn spindle_limit_of_action() {
        // S/(4π) → −(b+1)(2+log π) − (b²+2b) log 2 + (1+b) log(1+b)
        let b = -0.5;
        let vals: Vec<f64> = [-1e-2, -1e-3, -1e-4]
            .iter()
            .map(|&e| action_explicit(&div([b, e, b])).unwrap() / (4.0 * std::f64::consts::PI))
            .collect();
        let lim = crate::diff::richardson_sequence(&vals, 10.0);
        let expect = -(b + 1.0) * (2.0 + LN_PI)
            - (b * b + 2.0 * b) * std::f64::consts::LN_2
            + (1.0 + b) * (1.0 + b).ln();
        // the ε-expansion carries ε log ε terms, so plain Richardson in ε
        // leaves a small residual
        assert!((lim - expect).abs() < 1e-3, "{lim} vs {expect}");
        assert!((expect - -1.3990781477847137).abs() < 1e-12);
    }

    #[test]
    fn h_functional_vanishes_at_zero_orders() {
        let e = -1e-9;
        let h = h_functional(&div([e, e, e])).unwrap();
        assert!(h.abs() < 1e-6);
    }

    #[test]
    fn h_functional_spindle_limit() {
        let b = -0.5;
        let h = h_functional(&div([b, -1e-8, b])).unwrap();
        let expect = 4.0
            * (b + 1.0 - 1.0 / (b + 1.0))
            * (-b * std::f64::consts::LN_2
                + 0.5 * ((b + 1.0) / (4.0 * std::f64::consts::PI)).ln());
        assert!((h - expect).abs() < 1e-5, "{h} vs {expect}");
    }

    #[test]
    fn flat_h_decomposition() {
        // (1/12) log H = (1/6)(β₁+1−1/(β₁+1)) β₃ log 2
        //              + (1/6)(β₃+1−1/(β₃+1)) β₁ log 2 − (ζ₀+1) log C²_β
        let beta = [-0.5, -0.8, -0.7];
        let d = div(beta);
        let lhs = h_functional(&d).unwrap() / 12.0;
        let ln2 = std::f64::consts::LN_2;
        let log_c2 = crate::uniformization::log_c_beta_sq_flat(&beta).unwrap();
        let zeta0_flat: f64 =
            -13.0 / 12.0 + beta.iter().map(|&b| 1.0 / (b + 1.0)).sum::<f64>() / 12.0;
        let w = |b: f64| b + 1.0 - 1.0 / (b + 1.0);
        let rhs = w(beta[0]) * beta[2] * ln2 / 6.0 + w(beta[2]) * beta[0] * ln2 / 6.0
            - (zeta0_flat + 1.0) * log_c2;
        assert!((lhs - rhs).abs() < 1e-11, "{lhs} vs {rhs}");
    }

    #[test]
    fn action_symmetric_under_outer_swap() {
        let a = action_explicit(&div([-0.3, -0.5, -0.4])).unwrap();
        let b = action_explicit(&div([-0.4, -0.5, -0.3])).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn governing_equations_hold() {
        let d = div([-0.3, -0.5, -0.4]);
        for j in 0..3 {
            let r = governing_check(&d, j).unwrap();
            assert!(r < 1e-6, "j = {j}: residual {r}");
        }
    }

    #[test]
    fn governing_flat_difference() {
        // ∂₁S − ∂₂S = 4π(φ₁ − φ₂) along the flat line
        let d = div([-0.5, -0.8, -0.7]);
        let ph = phi_coeffs(&d).unwrap();
        let h = 1e-5;
        let f = |x: f64| {
            action_explicit(&div([-0.5 + x, -0.8 - x, -0.7]))
        };
        let d1 = (f(h).unwrap() - f(-h).unwrap()) / (2.0 * h);
        let expect = 4.0 * std::f64::consts::PI * (ph[0] - ph[1]);
        assert!((d1 - expect).abs() < 1e-5, "{d1} vs {expect}");
    }

    #[test]
    fn classical_action_symmetric() {
        // hyperbolic degree with negative curvature
        let k = -2.0;
        let a = classical_action(k, &[-0.7, -0.8, -0.9]).unwrap();
        let b = classical_action(k, &[-0.9, -0.7, -0.8]).unwrap();
        assert!((a - b).abs() < 1e-12);
        // sign inconsistency rejected
        assert!(classical_action(2.0, &[-0.7, -0.8, -0.9]).is_err());
    }

    #[test]
    fn classical_matches_action_at_unit_area() {
        // at K = 2π(|β|+2) the action is the classical action plus the
        // canonical-point log-distance terms (δ₃+δ₁−δ₂)/2 · log 2
        let beta: [f64; 3] = [-0.2, -0.3, -0.4];
        let d = div(beta);
        let k = 2.0 * std::f64::consts::PI * (d.degree() + 2.0);
        let a = action_explicit(&d).unwrap() / (4.0 * std::f64::consts::PI);
        let c = classical_action(k, &beta).unwrap();
        let delta: Vec<f64> = beta.iter().map(|&b| -b * (b + 2.0)).collect();
        let dist = (delta[2] + delta[0] - delta[1]) / 2.0 * std::f64::consts::LN_2;
        assert!((a - (c + dist)).abs() < 1e-12);
    }

    #[test]
    fn general_points_distance_terms() {
        use num_complex::Complex64;
        // spherical degree, so a positive curvature keeps the area positive
        let beta = [-0.3, -0.4, -0.5];
        let k = 1.5;
        let canonical = ConeDivisor::new(beta).unwrap();
        let cl = classical_action(k, &beta).unwrap();
        let gp = action_general_points(k, &canonical).unwrap();
        // |p₁−p₂| = |p₂−p₃| = 1, |p₁−p₃| = 2
        let delta: Vec<f64> = beta.iter().map(|&b| -b * (b + 2.0)).collect();
        let expect = (delta[2] + delta[0] - delta[1]) / 2.0 * 2.0f64.ln();
        assert!(((gp - cl) - expect).abs() < 1e-13);
        // moving the points moves only the distance terms
        let moved = ConeDivisor::with_points(
            beta,
            [
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(2.0, 0.0),
            ],
        )
        .unwrap();
        let gp2 = action_general_points(k, &moved).unwrap();
        let expect2 = (delta[2] + delta[0] - delta[1]) / 2.0 * 2.0f64.ln();
        assert!(((gp2 - cl) - expect2).abs() < 1e-13);
    }

    #[test]
    fn scaling_relation() {
        // S^{(cl)}(K(S)) − S^{(cl)}(K(1)) = (|β|+2)/2 · log S per unit of 4π:
        // equivalently S_β[φ + ½ log S] = S_β[φ] + 2π(|β|+2) log S
        let beta = [-0.3, -0.4, -0.5];
        let s_sum: f64 = beta.iter().sum();
        for &area in &[3.0, 0.5, 7.2, 1.7, 0.08] {
            let k1 = 2.0 * std::f64::consts::PI * (s_sum + 2.0);
            let ks = k1 / area;
            let diff = 4.0 * std::f64::consts::PI
                * (classical_action(ks, &beta).unwrap() - classical_action(k1, &beta).unwrap());
            let expect = 2.0 * std::f64::consts::PI * (s_sum + 2.0) * area.ln();
            assert!((diff - expect).abs() < 1e-9, "S = {area}");
        }
    }

    #[test]
    fn action_breakdown_resums() {
        let d = div([-0.2, -0.3, -0.4]);
        let b = action_breakdown(&d).unwrap();
        let total: f64 = b.terms.iter().map(|(_, v)| v).sum();
        assert!((b.action - 4.0 * std::f64::consts::PI * total).abs() < 1e-12);
        // frozen values
        assert!((total - -1.8002530981274528279).abs() < 1e-12);
        assert!((b.log_h - 4.8772551877513167641).abs() < 1e-11);
    }
}
