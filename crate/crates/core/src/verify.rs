//! Runnable invariant suites: each check evaluates a mathematical identity
//! the library must satisfy and reports the measured residual against its
//! tolerance. The CLI `verify` command and the acceptance tests drive these.

use num_complex::Complex64;

use crate::config::{ZETA_PRIME_M1, DEFAULT};
use crate::determinant::{
    logdet, logdet_quadrature, logdet_round_sphere, logdet_spindle, logdet_unit,
    logdet_unit_general_points, zeta0, zeta0_flat, SurfaceSpec,
};
use crate::diff::richardson_sequence;
use crate::divisor::ConeDivisor;
use crate::error::{Error, Result};
use crate::extremal::{classify, gradient_at, hessian_symmetric, threshold_area, Classification};
use crate::liouville::{action_explicit, action_flat, classical_action, governing_check};
use crate::specfun::{
    barnes_zeta_prime0, barnes_zeta_prime0_rational, c_of_beta, hyp2f1, log_gamma,
    zeta_h_prime_m1,
};
use crate::uniformization::quad::integrate_singular_lower;
use crate::uniformization::{area_integral, metric_phi, phi_big, phi_coeffs};

/// One executed invariant with its measured residual.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.residual.is_finite() && self.residual <= self.tolerance
    }
}

/// Known invariant suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Specfun,
    Uniformization,
    Action,
    Determinant,
    Extremal,
    All,
}

impl Suite {
    pub fn parse(name: &str) -> Result<Suite> {
        Ok(match name {
            "specfun" => Suite::Specfun,
            "uniformization" => Suite::Uniformization,
            "action" => Suite::Action,
            "determinant" => Suite::Determinant,
            "extremal" => Suite::Extremal,
            "all" => Suite::All,
            other => {
                return Err(Error::domain(format!(
                    "unknown suite '{other}' (expected specfun|uniformization|action|determinant|extremal|all)"
                )))
            }
        })
    }
}

/// Run a suite; `tol_scale` relaxes every tolerance (for slow machines).
pub fn run_suite(suite: Suite, tol_scale: f64) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    match suite {
        Suite::Specfun => specfun_suite(&mut out)?,
        Suite::Uniformization => uniformization_suite(&mut out)?,
        Suite::Action => action_suite(&mut out)?,
        Suite::Determinant => determinant_suite(&mut out)?,
        Suite::Extremal => extremal_suite(&mut out)?,
        Suite::All => {
            specfun_suite(&mut out)?;
            uniformization_suite(&mut out)?;
            action_suite(&mut out)?;
            determinant_suite(&mut out)?;
            extremal_suite(&mut out)?;
        }
    }
    for c in &mut out {
        c.tolerance *= tol_scale;
    }
    Ok(out)
}

fn push(out: &mut Vec<CheckResult>, suite: &'static str, name: impl Into<String>, residual: f64, tol: f64) {
    out.push(CheckResult {
        suite,
        name: name.into(),
        residual,
        tolerance: tol,
    });
}

/// Deterministic pseudo-random stream for randomized identities.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next_f64(&mut self) -> f64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z = z ^ (z >> 31);
        (z >> 11) as f64 / (1u64 << 53) as f64
    }
}

fn specfun_suite(out: &mut Vec<CheckResult>) -> Result<()> {
    let cfg = &DEFAULT;
    // Hurwitz recurrence ζ′_H(−1,x+1) − ζ′_H(−1,x) = x log x, random x
    let mut rng = SplitMix64(0x5eed_1234_abcd_0001);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let x = 1e-3 + 4.999 * rng.next_f64();
        let lhs = zeta_h_prime_m1(x + 1.0, cfg)? - zeta_h_prime_m1(x, cfg)?;
        worst = worst.max((lhs - x * x.ln()).abs());
    }
    push(out, "specfun", "hurwitz_recurrence_random_x", worst, 1e-11);

    // Barnes rational closed form vs numeric continuation, coprime p,q ≤ 9
    let mut worst: f64 = 0.0;
    for p in 1..=9u64 {
        for q in 1..=9u64 {
            if gcd(p, q) == 1 {
                let a = barnes_zeta_prime0_rational(p, q, cfg)?;
                let b = barnes_zeta_prime0(p as f64 / q as f64, cfg)?;
                worst = worst.max((a - b).abs());
            }
        }
    }
    push(out, "specfun", "barnes_rational_vs_numeric", worst, 1e-10);

    // ∫₀ˣ log Γ(t) dt = ζ′_H(−1,x) − ζ′_R(−1) − (x²−x)/2 + (x/2) log 2π
    let mut worst: f64 = 0.0;
    for &x in &[0.6, 1.0, 1.7, 3.2] {
        let mut f = |t: f64| log_gamma(t, cfg);
        let quad = integrate_singular_lower(&mut f, 0.0, x, 160)?;
        let closed = zeta_h_prime_m1(x, cfg)? - ZETA_PRIME_M1 - (x * x - x) / 2.0
            + x / 2.0 * (2.0 * std::f64::consts::PI).ln();
        worst = worst.max((quad - closed).abs());
    }
    push(out, "specfun", "log_gamma_integral_identity", worst, 1e-8);

    // Gauss contiguous relation for the hypergeometric series
    let mut worst: f64 = 0.0;
    for &(a, b, c, z) in &[(0.25, -0.55, 1.3, 0.6), (0.8, 0.3, 2.1, 0.45), (1.2, -0.2, 0.7, 0.3)] {
        let lhs = c * (hyp2f1(a + 1.0, b, c, z, cfg)? - hyp2f1(a, b, c, z, cfg)?);
        let rhs = b * z * hyp2f1(a + 1.0, b + 1.0, c + 1.0, z, cfg)?;
        worst = worst.max((lhs - rhs).abs());
    }
    push(out, "specfun", "hyp2f1_contiguous_relation", worst, 1e-11);

    // C(0) = 0 and symmetric decay of the finite-difference C″ under
    // step-halving
    push(out, "specfun", "c_of_beta_vanishes_at_zero", c_of_beta(0.0, cfg)?.abs(), 1e-10);
    let jump = (c_of_beta(1e-6, cfg)? - c_of_beta(-1e-6, cfg)?).abs();
    push(out, "specfun", "c_of_beta_continuous_at_zero", jump, 1e-5);
    // C″ stable under doubling the Richardson base step
    let v1 = crate::specfun::c_second_derivative(-0.4, cfg)?;
    let v2 = crate::specfun::c_second_derivative_with_step(-0.4, 2e-2, cfg)?;
    push(out, "specfun", "c_second_derivative_step_stability", (v1 - v2).abs(), 1e-5);
    Ok(())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn class_representatives() -> [ConeDivisor; 3] {
    [
        ConeDivisor::new([-0.2, -0.3, -0.4]).unwrap(),
        ConeDivisor::new([-0.5, -0.8, -0.7]).unwrap(),
        ConeDivisor::new([-0.8, -0.8, -0.8]).unwrap(),
    ]
}

fn uniformization_suite(out: &mut Vec<CheckResult>) -> Result<()> {
    // unit area per geometry class
    for d in class_representatives() {
        let a = area_integral(&d)?;
        push(
            out,
            "uniformization",
            format!("unit_area_{}", d.geometry().as_str()),
            (a - 1.0).abs(),
            1e-6,
        );
    }

    // Liouville residual at a 20-point grid of regular points, per class
    for d in class_representatives() {
        let kappa = 2.0 * std::f64::consts::PI * (d.degree() + 2.0);
        let mut worst: f64 = 0.0;
        for i in 0..10 {
            let theta = 0.17 + 2.0 * std::f64::consts::PI * i as f64 / 10.0;
            for &r in &[0.55, 1.6] {
                let z = Complex64::from_polar(r, theta);
                let s = metric_phi(z, &d)?;
                worst = worst.max(s.residual.abs());
            }
        }
        push(
            out,
            "uniformization",
            format!("liouville_residual_{}", d.geometry().as_str()),
            worst,
            1e-6 * (1.0 + kappa.abs()),
        );
    }

    // asymptotic coefficients converge to the closed-form φⱼ
    let d = ConeDivisor::new([-0.4, -0.5, -0.6]).unwrap();
    let coeffs = phi_coeffs(&d)?;
    let pts = [-1.0, 0.0, 1.0];
    let mut worst: f64 = 0.0;
    for j in 0..3 {
        let mut seq = Vec::new();
        for k in 0..3 {
            let eps = 1e-4 * 0.1f64.powi(k);
            let z = Complex64::new(pts[j] + 0.6 * eps, 0.8 * eps);
            let s = metric_phi(z, &d)?;
            seq.push(s.phi - d.beta[j] * (z - pts[j]).norm().ln());
        }
        worst = worst.max((richardson_sequence(&seq, 10.0) - coeffs[j]).abs());
    }
    push(out, "uniformization", "asymptotic_coefficients", worst, 1e-5);

    // every Γ-argument in Φ stays positive on a sweep of the valid set
    let mut violations = 0.0;
    for i in 1..9 {
        for k in 1..9 {
            for l in 1..9 {
                let beta = [-0.1 * i as f64 - 0.05, -0.1 * k as f64 - 0.05, -0.1 * l as f64 - 0.05];
                if ConeDivisor::new(beta).is_ok() && phi_big(&beta).is_err() {
                    violations += 1.0;
                }
            }
        }
    }
    push(out, "uniformization", "phi_gamma_arguments_positive", violations, 0.5);

    // flat branch vs general branch continuity at |β| + 2 = ±1e-9
    let z = Complex64::new(0.43, 0.37);
    let flat = metric_phi(z, &ConeDivisor::new([-0.5, -0.8, -0.7]).unwrap())?.phi;
    let mut worst: f64 = 0.0;
    for sign in [-1.0, 1.0] {
        let d = ConeDivisor::new([-0.5 + sign * 1e-9, -0.8, -0.7]).unwrap();
        worst = worst.max((metric_phi(z, &d)?.phi - flat).abs());
    }
    push(out, "uniformization", "flat_general_branch_continuity", worst, 1e-6);

    // 1 + 2π(2+|β|)|w(−1)|² stays positive on the valid set (in the
    // hyperbolic class |w(−1)| must sit inside the Poincaré disk)
    let mut min_arg = f64::INFINITY;
    for i in 1..9 {
        for k in 1..9 {
            for l in 1..9 {
                let beta = [
                    -0.1 * i as f64 - 0.05,
                    -0.1 * k as f64 - 0.05,
                    -0.1 * l as f64 - 0.05,
                ];
                let d = match ConeDivisor::new(beta) {
                    Ok(d) => d,
                    Err(_) => continue,
                };
                // phi_infinity errors out exactly when the positivity fails
                if crate::uniformization::phi_infinity(&d).is_err() {
                    min_arg = -1.0;
                } else {
                    min_arg = min_arg.min(1.0);
                }
            }
        }
    }
    push(
        out,
        "uniformization",
        "developing_map_inside_model_disk",
        if min_arg > 0.0 { 0.0 } else { 1.0 },
        0.5,
    );
    Ok(())
}

fn action_suite(out: &mut Vec<CheckResult>) -> Result<()> {
    // governing equations over a 27-point grid
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for k in 0..3 {
            for l in 0..3 {
                let beta = [
                    -0.35 - 0.15 * i as f64,
                    -0.35 - 0.15 * k as f64,
                    -0.35 - 0.15 * l as f64,
                ];
                let d = match ConeDivisor::new(beta) {
                    Ok(d) => d,
                    Err(_) => continue,
                };
                for j in 0..3 {
                    worst = worst.max(governing_check(&d, j)?);
                }
            }
        }
    }
    push(out, "action", "governing_equations_grid", worst, 1e-6);

    // β₁ ↔ β₃ swap leaves the action unchanged
    let a = action_explicit(&ConeDivisor::new([-0.3, -0.5, -0.4]).unwrap())?;
    let b = action_explicit(&ConeDivisor::new([-0.4, -0.5, -0.3]).unwrap())?;
    push(out, "action", "outer_swap_symmetry", (a - b).abs(), 1e-12);

    // flat-line equality against the closed product form, 25-point grid
    let mut worst: f64 = 0.0;
    for i in 0..5 {
        for k in 0..5 {
            let b1 = -0.35 - 0.12 * i as f64;
            let b3 = -0.35 - 0.12 * k as f64;
            let b2 = -2.0 - b1 - b3;
            if !(-1.0 < b2 && b2 < 0.0) {
                continue;
            }
            let d = ConeDivisor::new([b1, b2, b3]).unwrap();
            worst = worst.max((action_explicit(&d)? - action_flat(b1, b3)?).abs());
        }
    }
    push(out, "action", "flat_line_equality", worst, 1e-10);

    // scaling relation for 5 pseudo-random (S, β)
    let mut rng = SplitMix64(0x5eed_5678_0000_0002);
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let beta = [
            -0.2 - 0.3 * rng.next_f64(),
            -0.2 - 0.3 * rng.next_f64(),
            -0.2 - 0.3 * rng.next_f64(),
        ];
        let area = 0.2 + 5.0 * rng.next_f64();
        let s_sum: f64 = beta.iter().sum();
        let k1 = 2.0 * std::f64::consts::PI * (s_sum + 2.0);
        let diff = 4.0 * std::f64::consts::PI
            * (classical_action(k1 / area, &beta)? - classical_action(k1, &beta)?);
        let expect = 2.0 * std::f64::consts::PI * (s_sum + 2.0) * area.ln();
        worst = worst.max((diff - expect).abs());
    }
    push(out, "action", "area_scaling_relation", worst, 1e-9);

    // canonical-point distance terms: general − classical = (δ₃+δ₁−δ₂)/2 log 2
    let beta = [-0.3, -0.4, -0.5];
    let d = ConeDivisor::new(beta).unwrap();
    let k = 2.2;
    let delta: Vec<f64> = beta.iter().map(|&b| -b * (b + 2.0)).collect();
    let gap = crate::liouville::action_general_points(k, &d)? - classical_action(k, &beta)?;
    let expect = (delta[2] + delta[0] - delta[1]) / 2.0 * std::f64::consts::LN_2;
    push(out, "action", "general_points_distance_terms", (gap - expect).abs(), 1e-13);
    Ok(())
}

fn determinant_suite(out: &mut Vec<CheckResult>) -> Result<()> {
    // dual-path agreement over 9 divisors spanning the three classes
    let divisors = [
        [-0.2, -0.3, -0.4],
        [-0.3, -0.3, -0.3],
        [-0.45, -0.4, -0.35],
        [-0.5, -0.8, -0.7],
        [-0.6, -0.8, -0.6],
        [-0.7, -0.6, -0.7],
        [-0.8, -0.8, -0.8],
        [-0.75, -0.85, -0.9],
        [-0.9, -0.7, -0.85],
    ];
    let mut worst: f64 = 0.0;
    for beta in divisors {
        let d = ConeDivisor::new(beta).unwrap();
        let q = logdet_quadrature(&d)?.log_det;
        let c = logdet_unit(&d)?.log_det;
        worst = worst.max((q - c).abs());
    }
    push(out, "determinant", "dual_path_agreement", worst, 1e-6);

    // permutation invariance: outer swap exactly, Möbius renormalization
    let beta = [-0.4, -0.5, -0.6];
    let base = logdet_unit(&ConeDivisor::new(beta).unwrap())?.log_det;
    let swapped = logdet_unit(&ConeDivisor::new([-0.6, -0.5, -0.4]).unwrap())?.log_det;
    push(out, "determinant", "outer_swap_invariance", (base - swapped).abs(), 1e-12);
    let moved = ConeDivisor::with_points(
        beta,
        [
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
        ],
    )?;
    push(
        out,
        "determinant",
        "mobius_renormalization_invariance",
        (logdet_unit_general_points(&moved)? - base).abs(),
        1e-9,
    );

    // rescaling: log det + ζ(0) log S is S-independent
    let d = ConeDivisor::new([-0.3, -0.4, -0.5])?;
    let mut vals = Vec::new();
    for &s in &[0.5, 1.0, 4.0] {
        let r = logdet(&SurfaceSpec::new(d, s)?)?;
        vals.push(r.log_det + r.zeta0 * s.ln());
    }
    let spread = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - vals.iter().cloned().fold(f64::INFINITY, f64::min);
    push(out, "determinant", "rescaling_invariance", spread, 1e-12);

    // spindle and round-sphere limits by extrapolation
    let mut worst: f64 = 0.0;
    for &b in &[-0.2, -0.5, -0.8] {
        let vals: Vec<f64> = [-1e-2, -1e-3, -1e-4]
            .iter()
            .map(|&e| Ok(logdet_unit(&ConeDivisor::new([b, e, b])?)?.log_det))
            .collect::<Result<_>>()?;
        worst = worst.max((richardson_sequence(&vals, 10.0) - logdet_spindle(b)?).abs());
    }
    push(out, "determinant", "spindle_limit", worst, 1e-5);
    let area = 4.0 * std::f64::consts::PI;
    let vals: Vec<f64> = [-1e-2, -1e-3, -1e-4]
        .iter()
        .map(|&e| {
            Ok(logdet(&SurfaceSpec::new(ConeDivisor::new([e, e, e])?, area)?)?.log_det)
        })
        .collect::<Result<_>>()?;
    push(
        out,
        "determinant",
        "round_sphere_limit",
        (richardson_sequence(&vals, 10.0) - logdet_round_sphere()).abs(),
        1e-6,
    );

    // ζ(0) flat-line formula
    let mut worst: f64 = 0.0;
    for i in 0..7 {
        let b1 = -0.3 - 0.08 * i as f64;
        let b3 = -0.62;
        let b2 = -2.0 - b1 - b3;
        if let Ok(d) = ConeDivisor::new([b1, b2, b3]) {
            worst = worst.max((zeta0(&d) - zeta0_flat(&d.beta)).abs());
        }
    }
    push(out, "determinant", "zeta0_flat_equality", worst, 1e-14);
    Ok(())
}

fn extremal_suite(out: &mut Vec<CheckResult>) -> Result<()> {
    let degrees = [-2.7, -2.4, -2.0, -1.5, -0.9, -0.3];
    let areas = [0.1, 1.0, 10.0];

    let mut worst_grad: f64 = 0.0;
    let mut worst_hess: f64 = 0.0;
    for &sigma in &degrees {
        for &area in &areas {
            let b = sigma / 3.0;
            let d = ConeDivisor::new([b, b, b])?;
            let g = gradient_at(&d, area)?;
            worst_grad = worst_grad.max((g[0] * g[0] + g[1] * g[1]).sqrt());
            let h = hessian_symmetric(sigma, area)?;
            let f = |b1: f64, b3: f64| -> Result<f64> {
                let dd = ConeDivisor::new([b1, sigma - b1 - b3, b3])?;
                Ok(logdet(&SurfaceSpec::new(dd, area)?)?.log_det)
            };
            let f11 = crate::diff::second_derivative(|x| f(x, b), b, 3e-3)?;
            let f13 = crate::diff::mixed_derivative(f, b, b, 3e-3)?;
            // |β| → −3 sends the Hessian entries to O(10³), where an
            // absolute 1e-5 would demand sub-noise relative accuracy of the
            // FD reference; compare absolutely for O(1) values and
            // relatively beyond
            worst_hess = worst_hess
                .max((h.d11 - f11).abs() / f11.abs().max(1.0))
                .max((h.d13 - f13).abs() / f13.abs().max(1.0));
        }
    }
    push(out, "extremal", "symmetric_gradient_norm", worst_grad, 1e-8);
    push(out, "extremal", "analytic_vs_fd_hessian", worst_hess, 1e-5);

    // d11 strictly decreasing in S and minimum classification below S₀
    let mut monotone_defect: f64 = 0.0;
    let mut class_defect: f64 = 0.0;
    for &sigma in &[-2.0, -1.5, -2.4] {
        let s0 = threshold_area(sigma)?;
        let d1 = hessian_symmetric(sigma, 0.5 * s0)?.d11;
        let d2 = hessian_symmetric(sigma, s0)?.d11;
        let d3 = hessian_symmetric(sigma, 1.5 * s0)?.d11;
        if !(d1 > d2 && d2 > d3) {
            monotone_defect += 1.0;
        }
        let b = sigma / 3.0;
        let d = ConeDivisor::new([b, b, b])?;
        if classify(&d, s0 * (1.0 - 1e-6))? != Classification::Minimum {
            class_defect += 1.0;
        }
    }
    push(out, "extremal", "d11_decreasing_in_area", monotone_defect, 0.5);
    push(out, "extremal", "minimum_below_threshold", class_defect, 0.5);

    // eigenstructure: Hessian [[d11,d13],[d13,d11]] has eigenvalues d11±d13
    let h = hessian_symmetric(-2.0, 1.0)?;
    let defect = ((h.eigenvalues.0 - (h.d11 + h.d13)).abs())
        .max((h.eigenvalues.1 - (h.d11 - h.d13)).abs());
    push(out, "extremal", "hessian_eigenstructure", defect, 1e-14);

    // threshold at the flat degree matches the reported value
    push(
        out,
        "extremal",
        "flat_threshold_area",
        (threshold_area(-2.0)? - 1.92).abs(),
        0.02,
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_parsing() {
        assert_eq!(Suite::parse("specfun").unwrap(), Suite::Specfun);
        assert_eq!(Suite::parse("all").unwrap(), Suite::All);
        assert!(Suite::parse("bogus").is_err());
    }

    #[test]
    fn specfun_suite_passes() {
        for c in run_suite(Suite::Specfun, 1.0).unwrap() {
            assert!(c.passed(), "{}: residual {} > tol {}", c.name, c.residual, c.tolerance);
        }
    }

    #[test]
    fn action_suite_passes() {
        for c in run_suite(Suite::Action, 1.0).unwrap() {
            assert!(c.passed(), "{}: residual {} > tol {}", c.name, c.residual, c.tolerance);
        }
    }
}
