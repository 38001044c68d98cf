//! log det Δ for any valid divisor and area, via the closed formula and,
//! independently, via the quadrature anomaly formula.

use crate::config::{ZETA_PRIME_M1, DEFAULT, LN_PI};
use crate::divisor::{ConeDivisor, GeometryClass};
use crate::error::{Error, Result};
use crate::liouville::{action_breakdown, ActionBreakdown};
use crate::specfun::{barnes_zeta_prime0, c_of_beta};
use crate::uniformization::{
    log_c_beta_sq_flat, phi_coeff_general, phi_coeffs, phi_infinity, phi_weighted_integral,
};

/// Which of the two determinant formulas produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetPath {
    /// The explicit closed formula (action + H + C-terms).
    ClosedForm,
    /// The anomaly formula with the quadrature integral ∫ φ e^{2φ}.
    QuadratureAnomaly,
}

impl DetPath {
    pub fn as_str(&self) -> &'static str {
        match self {
            DetPath::ClosedForm => "closed",
            DetPath::QuadratureAnomaly => "quadrature",
        }
    }
}

/// A surface: divisor plus area; the curvature K = 2π(|β|+2)/S is derived
/// (Gauss–Bonnet).
#[derive(Debug, Clone, Copy)]
pub struct SurfaceSpec {
    pub divisor: ConeDivisor,
    pub area: f64,
}

impl SurfaceSpec {
    pub fn new(divisor: ConeDivisor, area: f64) -> Result<SurfaceSpec> {
        if !(area > 0.0) || !area.is_finite() {
            return Err(Error::domain(format!("area must be positive, got {area}")));
        }
        Ok(SurfaceSpec { divisor, area })
    }

    pub fn curvature(&self) -> f64 {
        2.0 * std::f64::consts::PI * (self.divisor.degree() + 2.0) / self.area
    }
}

/// A determinant evaluation with its full additive decomposition.
#[derive(Debug, Clone)]
pub struct DetResult {
    pub log_det: f64,
    pub zeta0: f64,
    pub geometry: GeometryClass,
    pub path: DetPath,
    /// Diagnostic decomposition of the Liouville action entering the value.
    pub action: ActionBreakdown,
    /// Named summands; their sum reproduces `log_det` exactly.
    pub terms: Vec<(&'static str, f64)>,
}

impl DetResult {
    /// Re-sum the stored breakdown (must reproduce `log_det`).
    pub fn resummed(&self) -> f64 {
        self.terms.iter().map(|(_, v)| v).sum()
    }
}

/// ζ_β(0) = (|β|+2)/6 − (1/12) Σⱼ (βⱼ+1 − 1/(βⱼ+1)) − 1.
pub fn zeta0(divisor: &ConeDivisor) -> f64 {
    let s = divisor.degree();
    (s + 2.0) / 6.0
        - divisor
            .beta
            .iter()
            .map(|&b| b + 1.0 - 1.0 / (b + 1.0))
            .sum::<f64>()
            / 12.0
        - 1.0
}

/// Flat-line specialization ζ_β(0)|_{|β|=−2} = −13/12 + (1/12) Σⱼ 1/(βⱼ+1).
pub fn zeta0_flat(beta: &[f64; 3]) -> f64 {
    -13.0 / 12.0 + beta.iter().map(|&b| 1.0 / (b + 1.0)).sum::<f64>() / 12.0
}

const LOG2_CONSTANT: &str = "log2_constant";

fn constant_terms() -> [(&'static str, f64); 3] {
    [
        (LOG2_CONSTANT, -4.0 / 3.0 * std::f64::consts::LN_2),
        ("riemann_constant", -4.0 * ZETA_PRIME_M1),
        ("log_pi_constant", -LN_PI),
    ]
}

/// log det Δ_β for the unit-area metric:
///
///   −(|β|+1)/6 − (1/12π)(S_β\[φ\] − π log H_β\[φ\]) − Σⱼ C(βⱼ)
///   − (4/3) log 2 − 4ζ′_R(−1) − log π.
pub fn logdet_unit(divisor: &ConeDivisor) -> Result<DetResult> {
    divisor.require_canonical()?;
    let action = action_breakdown(divisor)?;
    let mut terms: Vec<(&'static str, f64)> = Vec::with_capacity(10);
    terms.push(("degree_term", -(divisor.degree() + 1.0) / 6.0));
    terms.push((
        "action_term",
        -action.action / (12.0 * std::f64::consts::PI),
    ));
    terms.push(("h_term", action.log_h / 12.0));
    let names = ["c_term_1", "c_term_2", "c_term_3"];
    for (j, &b) in divisor.beta.iter().enumerate() {
        terms.push((names[j], -c_of_beta(b, &DEFAULT)?));
    }
    terms.extend(constant_terms());
    let log_det = terms.iter().map(|(_, v)| v).sum();
    Ok(DetResult {
        log_det,
        zeta0: zeta0(divisor),
        geometry: divisor.geometry(),
        path: DetPath::ClosedForm,
        action,
        terms,
    })
}

/// The unit-area determinant rebuilt from an arbitrary normalization of the
/// marked points (used to exhibit Möbius invariance): the action acquires
/// the δ-weighted log-distance terms and the φⱼ move accordingly, while the
/// total stays put.
pub fn logdet_unit_general_points(divisor: &ConeDivisor) -> Result<f64> {
    let s = divisor.degree();
    let kappa = 2.0 * std::f64::consts::PI * (s + 2.0);
    let action =
        4.0 * std::f64::consts::PI * crate::liouville::action_general_points(kappa, divisor)?;
    let ph = phi_coeff_general(divisor)?;
    let log_h = 2.0
        * divisor
            .beta
            .iter()
            .zip(ph)
            .map(|(&b, p)| (b + 1.0 - 1.0 / (b + 1.0)) * p)
            .sum::<f64>();
    let mut v = -(s + 1.0) / 6.0 - (action - std::f64::consts::PI * log_h)
        / (12.0 * std::f64::consts::PI);
    for &b in &divisor.beta {
        v -= c_of_beta(b, &DEFAULT)?;
    }
    v += constant_terms().iter().map(|(_, t)| t).sum::<f64>();
    Ok(v)
}

/// log det Δ^S_β = log det Δ_β − ζ_β(0) log S.
pub fn logdet(spec: &SurfaceSpec) -> Result<DetResult> {
    let mut r = logdet_unit(&spec.divisor)?;
    let scaling = -r.zeta0 * spec.area.ln();
    r.terms.push(("area_scaling", scaling));
    r.log_det += scaling;
    Ok(r)
}

/// Flat closed form (triangle envelopes) at area S:
///
///   (1/6)(β₁β₃/(β₁+1) + β₁β₃/(β₃+1)) log 2
///   − Σⱼ [2ζ′_B(0;βⱼ+1,1,1) − βⱼ²/(6(βⱼ+1)) log 2 + ½ log(βⱼ+1)]
///   − log C²_β − ζ_β(0)|flat · log(C²_β S) − (4/3) log 2 + 2ζ′_R(−1) − log π.
pub fn logdet_flat(beta1: f64, beta3: f64, area: f64) -> Result<f64> {
    let beta2 = -2.0 - beta1 - beta3;
    if !(-1.0 < beta2 && beta2 < 0.0) {
        return Err(Error::divisor(format!(
            "flat class violation: implied beta_2 = {beta2} outside (-1,0)"
        )));
    }
    if !(area > 0.0) {
        return Err(Error::domain("area must be positive"));
    }
    let beta = [beta1, beta2, beta3];
    let ln2 = std::f64::consts::LN_2;
    let log_c2 = log_c_beta_sq_flat(&beta)?;
    let mut v = (beta1 * beta3 / (beta1 + 1.0) + beta1 * beta3 / (beta3 + 1.0)) / 6.0 * ln2;
    for &b in &beta {
        v -= 2.0 * barnes_zeta_prime0(b + 1.0, &DEFAULT)? - b * b / (6.0 * (b + 1.0)) * ln2
            + 0.5 * (b + 1.0f64).ln();
    }
    v -= log_c2 + zeta0_flat(&beta) * (log_c2 + area.ln());
    v += -4.0 / 3.0 * ln2 + 2.0 * ZETA_PRIME_M1 - LN_PI;
    Ok(v)
}

/// Unit-area spindle determinant (two antipodal singularities of order b),
/// as the β₂ → 0⁻ limit of the general closed formula:
///
///   (b+1)/2 − (1/6)(b+1+1/(b+1)) log((b+1)/2π) − 4ζ′_B(0;b+1,1,1)
///   − log(4π(b+1)) + (b²+2b+2)/(6(b+1)) · log 2.
///
/// The final log 2 term is forced by continuity: without it the b → 0
/// value misses the unit-area round sphere by (1/3) log 2, and the
/// ε-extrapolation of the general formula confirms it to ~1e-7.
pub fn logdet_spindle(b: f64) -> Result<f64> {
    if !(-1.0 < b && b < 0.0) {
        return Err(Error::domain(format!(
            "spindle order must lie in (-1,0), got {b}"
        )));
    }
    let a = b + 1.0;
    Ok(a / 2.0 - (a + 1.0 / a) / 6.0 * (a / (2.0 * std::f64::consts::PI)).ln()
        - 4.0 * barnes_zeta_prime0(a, &DEFAULT)?
        - (4.0 * std::f64::consts::PI * a).ln()
        + (b * b + 2.0 * b + 2.0) / (6.0 * a) * std::f64::consts::LN_2)
}

/// log det of the round sphere of area 4π: 1/2 − 4ζ′_R(−1).
pub fn logdet_round_sphere() -> f64 {
    0.5 - 4.0 * ZETA_PRIME_M1
}

/// The independent evaluation path: the anomaly formula
///
///   −((|β|+2)/6) ∫φe^{2φ} − φ_∞/3 + (1/6) Σⱼ (βⱼ/(βⱼ+1)) φⱼ − Σⱼ C(βⱼ)
///   − (4/3) log 2 − 4ζ′_R(−1) + 1/6 − log π,
///
/// with the integral from singular-aware quadrature. In the flat class the
/// integral coefficient vanishes and the quadrature is skipped.
pub fn logdet_quadrature(divisor: &ConeDivisor) -> Result<DetResult> {
    divisor.require_canonical()?;
    let s = divisor.degree();
    let integral = if divisor.geometry() == GeometryClass::Flat {
        0.0
    } else {
        phi_weighted_integral(divisor)?
    };
    let ph = phi_coeffs(divisor)?;
    let pinf = phi_infinity(divisor)?;
    let mut terms: Vec<(&'static str, f64)> = Vec::with_capacity(10);
    terms.push(("integral_term", -(s + 2.0) / 6.0 * integral));
    terms.push(("phi_infinity_term", -pinf / 3.0));
    terms.push((
        "phi_coeff_term",
        divisor
            .beta
            .iter()
            .zip(ph)
            .map(|(&b, p)| b / (b + 1.0) * p)
            .sum::<f64>()
            / 6.0,
    ));
    let names = ["c_term_1", "c_term_2", "c_term_3"];
    for (j, &b) in divisor.beta.iter().enumerate() {
        terms.push((names[j], -c_of_beta(b, &DEFAULT)?));
    }
    terms.extend(constant_terms());
    terms.push(("one_sixth_constant", 1.0 / 6.0));
    let log_det = terms.iter().map(|(_, v)| v).sum();
    Ok(DetResult {
        log_det,
        zeta0: zeta0(divisor),
        geometry: divisor.geometry(),
        path: DetPath::QuadratureAnomaly,
        action: action_breakdown(divisor)?,
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diff::richardson_sequence;

    fn div(beta: [f64; 3]) -> ConeDivisor {
        ConeDivisor::new(beta).unwrap()
    }

    #[test]
    fn zeta0_values() {
        let e = -1e-12;
        assert!((zeta0(&div([e, e, e])) + 2.0 / 3.0).abs() < 1e-9);
        let b = -2.0 / 3.0;
        let d = div([b, b, b]);
        assert!((zeta0(&d) + 1.0 / 3.0).abs() < 1e-13);
        assert!((zeta0(&d) - zeta0_flat(&d.beta)).abs() < 1e-14);
        assert!((zeta0(&div([-0.2, -0.3, -0.4])) - -0.62956349206349206349).abs() < 1e-14);
    }

    #[test]
    fn zeta0_flat_formula_on_flat_line() {
        for i in 1..8 {
            let b1 = -0.1 * i as f64 - 0.15;
            let b3 = -0.55;
            let b2 = -2.0 - b1 - b3;
            if !(-0.95 < b2 && b2 < -0.05) {
                continue;
            }
            let d = div([b1, b2, b3]);
            assert!((zeta0(&d) - zeta0_flat(&d.beta)).abs() < 1e-14);
        }
    }

    #[test]
    fn round_sphere_limit() {
        // logdet at S = 4π, extrapolated over βⱼ = −10⁻², −10⁻³, −10⁻⁴
        let area = 4.0 * std::f64::consts::PI;
        let vals: Vec<f64> = [-1e-2, -1e-3, -1e-4]
            .iter()
            .map(|&e| {
                let spec = SurfaceSpec::new(div([e, e, e]), area).unwrap();
                logdet(&spec).unwrap().log_det
            })
            .collect();
        let lim = richardson_sequence(&vals, 10.0);
        assert!(
            (lim - logdet_round_sphere()).abs() < 1e-6,
            "extrapolated {lim} vs {}",
            logdet_round_sphere()
        );
        assert!((logdet_round_sphere() - 1.1616845748018037169).abs() < 1e-14);
    }

    #[test]
    fn unit_area_sphere_constant() {
        // logdet_unit(β→0) → 1/2 − 4ζ′_R(−1) − (2/3) log 4π ≈ −0.52566
        let e = -1e-6;
        let got = logdet_unit(&div([e, e, e])).unwrap().log_det;
        let expect = logdet_round_sphere() - 2.0 / 3.0 * (4.0 * std::f64::consts::PI).ln();
        assert!((got - expect).abs() < 1e-4, "{got} vs {expect}");
        assert!((expect - -0.52566492317772347846).abs() < 1e-14);
    }

    #[test]
    fn frozen_unit_values() {
        let got = logdet_unit(&div([-0.3, -0.4, -0.5])).unwrap().log_det;
        assert!((got - -0.43424706608065403228).abs() < 1e-11, "{got}");
        let got = logdet_unit(&div([-0.2, -0.3, -0.4])).unwrap().log_det;
        assert!((got - -0.4887176862114952753).abs() < 1e-11, "{got}");
    }

    #[test]
    fn swap_of_outer_orders_is_exact() {
        let a = logdet_unit(&div([-0.4, -0.5, -0.6])).unwrap().log_det;
        let b = logdet_unit(&div([-0.6, -0.5, -0.4])).unwrap().log_det;
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn mobius_invariance() {
        use num_complex::Complex64;
        let beta = [-0.4, -0.5, -0.6];
        let base = logdet_unit(&div(beta)).unwrap().log_det;
        let moved = ConeDivisor::with_points(
            beta,
            [
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(2.0, 0.0),
            ],
        )
        .unwrap();
        let rebuilt = logdet_unit_general_points(&moved).unwrap();
        assert!((rebuilt - base).abs() < 1e-9, "{rebuilt} vs {base}");
    }

    #[test]
    fn rescaling_property() {
        let d = div([-0.3, -0.4, -0.5]);
        let unit = logdet_unit(&d).unwrap();
        let s1 = logdet(&SurfaceSpec::new(d, 1.0).unwrap()).unwrap();
        assert!((s1.log_det - unit.log_det).abs() < 1e-15);
        let s2 = logdet(&SurfaceSpec::new(d, 2.0).unwrap()).unwrap();
        let expect = unit.log_det - unit.zeta0 * 2.0f64.ln();
        assert!((s2.log_det - expect).abs() < 1e-13);
        // log det + ζ(0) log S is S-independent
        let s7 = logdet(&SurfaceSpec::new(d, 7.3).unwrap()).unwrap();
        assert!(
            ((s7.log_det + s7.zeta0 * 7.3f64.ln()) - (s2.log_det + s2.zeta0 * 2.0f64.ln())).abs()
                < 1e-12
        );
    }

    #[test]
    fn flat_closed_form_matches_general() {
        let (b1, b3) = (-0.5, -0.7);
        let d = div([b1, -2.0 - b1 - b3, b3]);
        let general = logdet(&SurfaceSpec::new(d, 1.0).unwrap()).unwrap().log_det;
        let flat = logdet_flat(b1, b3, 1.0).unwrap();
        assert!((general - flat).abs() < 1e-9, "{general} vs {flat}");
        assert!((flat - 0.097198829982694481091).abs() < 1e-11);
    }

    #[test]
    fn flat_area_slope() {
        let (b1, b3) = (-0.6, -0.7);
        let z0 = zeta0_flat(&[b1, -2.0 - b1 - b3, b3]);
        let a = logdet_flat(b1, b3, 1.0).unwrap();
        let b = logdet_flat(b1, b3, std::f64::consts::E).unwrap();
        assert!((b - a + z0).abs() < 1e-12);
    }

    #[test]
    fn calabi_croke_value() {
        let b = -2.0 / 3.0;
        let got = logdet_flat(b, b, 3.0f64.sqrt() / 2.0).unwrap();
        assert!((got - -0.026249341173465303155).abs() < 1e-11, "{got}");
    }

    #[test]
    fn spindle_closed_values() {
        for (b, expect) in [
            (-0.2, -0.52063951417550067375),
            (-0.5, -0.49125266800454967365),
            (-0.8, -0.40877348972054021616),
        ] {
            let got = logdet_spindle(b).unwrap();
            assert!((got - expect).abs() < 1e-11, "b = {b}: {got} vs {expect}");
        }
        assert!(logdet_spindle(0.0).is_err());
        assert!(logdet_spindle(-1.0).is_err());
    }

    #[test]
    fn spindle_round_sphere_continuity() {
        // b → 0⁻ must reproduce the unit-area round sphere
        let expect = logdet_round_sphere() - 2.0 / 3.0 * (4.0 * std::f64::consts::PI).ln();
        let got = logdet_spindle(-1e-9).unwrap();
        assert!((got - expect).abs() < 1e-6, "{got} vs {expect}");
    }

    #[test]
    fn spindle_limit_of_general_formula() {
        // β = (b, ε, b), Richardson over ε = 1e-2, 1e-3, 1e-4
        for &b in &[-0.2, -0.5, -0.8] {
            let vals: Vec<f64> = [-1e-2, -1e-3, -1e-4]
                .iter()
                .map(|&e| logdet_unit(&div([b, e, b])).unwrap().log_det)
                .collect();
            let lim = richardson_sequence(&vals, 10.0);
            let closed = logdet_spindle(b).unwrap();
            assert!((lim - closed).abs() < 1e-5, "b = {b}: {lim} vs {closed}");
        }
    }

    #[test]
    fn spindle_via_rational_barnes() {
        // b = −1/2 through the rational closed form for ζ′_B(0; 1/2, 1, 1)
        let bz = crate::specfun::barnes_zeta_prime0_rational(1, 2, &DEFAULT).unwrap();
        let b: f64 = -0.5;
        let a = b + 1.0;
        let direct = a / 2.0 - (a + 1.0 / a) / 6.0 * (a / (2.0 * std::f64::consts::PI)).ln()
            - 4.0 * bz
            - (4.0 * std::f64::consts::PI * a).ln()
            + (b * b + 2.0 * b + 2.0) / (6.0 * a) * std::f64::consts::LN_2;
        assert!((direct - logdet_spindle(b).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn breakdown_resums_exactly() {
        let d = div([-0.3, -0.4, -0.5]);
        let r = logdet(&SurfaceSpec::new(d, 2.5).unwrap()).unwrap();
        assert!((r.resummed() - r.log_det).abs() < 1e-12);
    }

    #[test]
    fn quadrature_path_flat_line() {
        // integral coefficient vanishes: agreement at 1e-9 without quadrature
        let d = div([-0.5, -0.8, -0.7]);
        let q = logdet_quadrature(&d).unwrap();
        let c = logdet_unit(&d).unwrap();
        assert!(
            (q.log_det - c.log_det).abs() < 1e-9,
            "{} vs {}",
            q.log_det,
            c.log_det
        );
        assert_eq!(q.path, DetPath::QuadratureAnomaly);
    }

    #[test]
    fn quadrature_path_spherical() {
        let d = div([-0.2, -0.3, -0.4]);
        let q = logdet_quadrature(&d).unwrap();
        let c = logdet_unit(&d).unwrap();
        assert!(
            (q.log_det - c.log_det).abs() < 1e-6,
            "{} vs {}",
            q.log_det,
            c.log_det
        );
    }

    #[test]
    fn quadrature_path_hyperbolic() {
        let d = div([-0.8, -0.8, -0.8]);
        let q = logdet_quadrature(&d).unwrap();
        let c = logdet_unit(&d).unwrap();
        assert!(
            (q.log_det - c.log_det).abs() < 1e-6,
            "{} vs {}",
            q.log_det,
            c.log_det
        );
    }
}
