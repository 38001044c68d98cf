//! The Schwarz triangle function w and its derivative: the developing map of
//! the unit-area constant-curvature metric, built from a pair of Gauss
//! hypergeometric functions evaluated on the half-plane chart.
//!
//! Complex hypergeometric values are produced three ways, chosen by the
//! location of the argument:
//!  * direct power series for |ẑ| ≤ 0.75,
//!  * the Pfaff transformation F(a,b,c;ẑ) = (1−ẑ)^{−a} F(a, c−b, c; ẑ/(ẑ−1))
//!    for |ẑ/(ẑ−1)| ≤ 0.75,
//!  * otherwise Taylor continuation of the hypergeometric ODE along a path
//!    from a series-reachable anchor, stepping at most 0.45× the distance to
//!    the nearest singularity {0, 1}.
//!
//! The principal branch of ẑ^{β₁+1} is fixed on the upper half-plane;
//! continuation paths approach the cut [1, ∞) from above.

use num_complex::Complex64;

use crate::config::PrecisionConfig;
use crate::divisor::ConeDivisor;
use crate::error::{Error, Result};
use crate::specfun::{hyp2f1, log_gamma};
use crate::uniformization::coeffs::phi_big;

const SERIES_RADIUS: f64 = 0.75;

#[derive(Debug, Clone, Copy)]
pub(crate) struct HypParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// Everything needed to evaluate w, w′, and the metric density in one
/// half-plane chart with slot order (β₁, β₂, β₃).
#[derive(Debug, Clone, Copy)]
pub(crate) struct MapParams {
    pub beta: [f64; 3],
    pub degree: f64,
    /// F in the numerator of w.
    pub num: HypParams,
    /// F in the denominator of w and in w′.
    pub den: HypParams,
    /// Φ(β₁, β₂, β₃) for this slot order.
    pub phi_big: f64,
    /// 2π(|β| + 2); negative in the hyperbolic class.
    pub kappa: f64,
}

impl MapParams {
    pub fn build(beta: [f64; 3]) -> Result<MapParams> {
        let s = beta[0] + beta[1] + beta[2];
        Ok(MapParams {
            beta,
            degree: s,
            num: HypParams {
                a: 1.0 - beta[1] + s / 2.0,
                b: beta[0] - s / 2.0,
                c: 2.0 + beta[0],
            },
            den: HypParams {
                a: beta[2] - s / 2.0,
                b: -1.0 - s / 2.0,
                c: -beta[0],
            },
            phi_big: phi_big(&beta)?,
            kappa: 2.0 * std::f64::consts::PI * (s + 2.0),
        })
    }

    /// Scaling factor c_β = e^Φ / (β₁ + 1).
    pub fn c_beta(&self) -> f64 {
        self.phi_big.exp() / (self.beta[0] + 1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Method {
    Series,
    Pfaff,
    Continue,
}

pub(crate) fn choose_method(zh: Complex64) -> Method {
    if zh.norm() <= SERIES_RADIUS {
        Method::Series
    } else if (zh / (zh - 1.0)).norm() <= SERIES_RADIUS {
        Method::Pfaff
    } else {
        Method::Continue
    }
}

/// Direct series; returns the value and the number of terms consumed.
fn series_adaptive(
    p: &HypParams,
    z: Complex64,
    cfg: &PrecisionConfig,
) -> Result<(Complex64, usize)> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for n in 0..cfg.series_max_terms {
        let nf = n as f64;
        term *= z * ((p.a + nf) * (p.b + nf) / ((p.c + nf) * (nf + 1.0)));
        sum += term;
        if n > 3 && term.norm() <= 1e-17 * sum.norm().max(1.0) {
            return Ok((sum, n + 1));
        }
    }
    Err(Error::convergence(format!(
        "hypergeometric series exceeded {} terms at |z| = {}",
        cfg.series_max_terms,
        z.norm()
    )))
}

/// Direct series with a pinned term count (for stencil coherence).
fn series_fixed(p: &HypParams, z: Complex64, n_terms: usize) -> Complex64 {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for n in 0..n_terms {
        let nf = n as f64;
        term *= z * ((p.a + nf) * (p.b + nf) / ((p.c + nf) * (nf + 1.0)));
        sum += term;
    }
    sum
}

fn pfaff_params(p: &HypParams) -> HypParams {
    HypParams {
        a: p.a,
        b: p.c - p.b,
        c: p.c,
    }
}

fn pfaff_prefactor(p: &HypParams, z: Complex64) -> Complex64 {
    (Complex64::new(1.0, 0.0) - z).powf(-p.a)
}

/// Taylor coefficients of a solution around `anchor`, from (u, u′) there.
/// Recurrence from ẑ(1−ẑ)u″ + (c −(a+b+1)ẑ)u′ − ab·u = 0 expanded at the
/// anchor:
///   A(k+2)(k+1) u_{k+2} = −(k+1)[(1−2a₀)k + c −(a+b+1)a₀] u_{k+1}
///                          + (k+a)(k+b) u_k,     A = a₀(1−a₀).
fn taylor_coeffs(
    p: &HypParams,
    anchor: Complex64,
    u0: Complex64,
    u1: Complex64,
    n_max: usize,
) -> Vec<Complex64> {
    let mut c = Vec::with_capacity(n_max);
    c.push(u0);
    c.push(u1);
    let cap_a = anchor * (Complex64::new(1.0, 0.0) - anchor);
    let lin = Complex64::new(1.0, 0.0) - 2.0 * anchor;
    let b0 = Complex64::new(p.c, 0.0) - (p.a + p.b + 1.0) * anchor;
    for k in 0..(n_max - 2) {
        let kf = k as f64;
        let next = (-(kf + 1.0) * (lin * kf + b0) * c[k + 1]
            + (kf + p.a) * (kf + p.b) * c[k])
            / (cap_a * ((kf + 2.0) * (kf + 1.0)));
        c.push(next);
    }
    c
}

fn taylor_eval(coeffs: &[Complex64], t: Complex64) -> (Complex64, Complex64) {
    // value and derivative at anchor + t, by Horner from the top
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for (k, &ck) in coeffs.iter().enumerate().rev() {
        v = v * t + ck;
        if k >= 1 {
            d = d * t + ck * k as f64;
        }
    }
    (v, d)
}

const MAX_STEPS: usize = 96;
const TAYLOR_TERMS: usize = 72;

/// State of a continuation that has been carried to `anchor`: Taylor
/// coefficients of each requested function there, valid within
/// 0.45 × dist(anchor, {0, 1}).
pub(crate) struct ContinuationState {
    pub anchor: Complex64,
    pub coeffs: Vec<Vec<Complex64>>,
}

impl ContinuationState {
    pub fn eval(&self, z: Complex64) -> Vec<Complex64> {
        let t = z - self.anchor;
        self.coeffs.iter().map(|c| taylor_eval(c, t).0).collect()
    }
}

/// Carry all `params` along a common path from the origin region to
/// `target`, which must stay away from the singular points {0, 1}.
pub(crate) fn continue_pair(
    params: &[HypParams],
    target: Complex64,
    cfg: &PrecisionConfig,
) -> Result<ContinuationState> {
    let dist_sing = target.norm().min((target - 1.0).norm());
    if dist_sing < 1e-6 {
        return Err(Error::convergence(
            "continuation target too close to a hypergeometric singular point",
        ));
    }
    // series anchor on the ray toward the target
    let start = if target.norm() <= 0.4 {
        target
    } else {
        target * (0.4 / target.norm())
    };
    let mut states: Vec<(Complex64, Complex64)> = Vec::with_capacity(params.len());
    for p in params {
        let (u, _) = series_adaptive(p, start, cfg)?;
        let dp = HypParams {
            a: p.a + 1.0,
            b: p.b + 1.0,
            c: p.c + 1.0,
        };
        let (du, _) = series_adaptive(&dp, start, cfg)?;
        states.push((u, du * (p.a * p.b / p.c)));
    }
    // waypoints: detour above/below the cut if the straight segment passes
    // near ẑ = 1
    let mut waypoints: Vec<Complex64> = Vec::new();
    if segment_close_to_one(start, target, 0.35) {
        let side = if target.im < 0.0 { -1.0 } else { 1.0 };
        waypoints.push(Complex64::new(1.0, 0.55 * side));
    }
    waypoints.push(target);

    let mut anchor = start;
    let mut coeffs: Vec<Vec<Complex64>> = params
        .iter()
        .zip(&states)
        .map(|(p, &(u, du))| taylor_coeffs(p, anchor, u, du, TAYLOR_TERMS))
        .collect();
    let mut steps = 0;
    for wp in waypoints {
        while (wp - anchor).norm() > 1e-15 {
            steps += 1;
            if steps > MAX_STEPS {
                return Err(Error::convergence(
                    "hypergeometric continuation exceeded the step budget",
                ));
            }
            let radius = anchor.norm().min((anchor - 1.0).norm());
            let remaining = wp - anchor;
            let step = if remaining.norm() <= 0.45 * radius {
                remaining
            } else {
                remaining * (0.45 * radius / remaining.norm())
            };
            let mut new_coeffs = Vec::with_capacity(params.len());
            for (p, c) in params.iter().zip(&coeffs) {
                let (u, du) = taylor_eval(c, step);
                new_coeffs.push(taylor_coeffs(p, anchor + step, u, du, TAYLOR_TERMS));
            }
            anchor += step;
            coeffs = new_coeffs;
        }
    }
    Ok(ContinuationState { anchor, coeffs })
}

fn segment_close_to_one(a: Complex64, b: Complex64, tol: f64) -> bool {
    let one = Complex64::new(1.0, 0.0);
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (a - one).norm() < tol;
    }
    let t = ((one - a).re * ab.re + (one - a).im * ab.im) / len2;
    let t = t.clamp(0.0, 1.0);
    (a + ab * t - one).norm() < tol
}

/// The numerator/denominator pair (N, D) at ẑ, both by the same method.
pub(crate) fn eval_pair(
    mp: &MapParams,
    zh: Complex64,
    cfg: &PrecisionConfig,
) -> Result<(Complex64, Complex64)> {
    match choose_method(zh) {
        Method::Series => Ok((
            series_adaptive(&mp.num, zh, cfg)?.0,
            series_adaptive(&mp.den, zh, cfg)?.0,
        )),
        Method::Pfaff => {
            let zt = zh / (zh - 1.0);
            let n = series_adaptive(&pfaff_params(&mp.num), zt, cfg)?.0;
            let d = series_adaptive(&pfaff_params(&mp.den), zt, cfg)?.0;
            Ok((
                pfaff_prefactor(&mp.num, zh) * n,
                pfaff_prefactor(&mp.den, zh) * d,
            ))
        }
        Method::Continue => {
            let st = continue_pair(&[mp.num, mp.den], zh, cfg)?;
            let v = st.eval(zh);
            Ok((v[0], v[1]))
        }
    }
}

/// Pair evaluation at a cluster of nearby points with the method (and, for
/// series methods, the truncation index) pinned by the first point, so that
/// finite differences across the cluster see a single smooth function.
pub(crate) fn eval_pair_cluster(
    mp: &MapParams,
    points: &[Complex64],
    cfg: &PrecisionConfig,
) -> Result<Vec<(Complex64, Complex64)>> {
    let centre = points[0];
    match choose_method(centre) {
        Method::Series => {
            let (_, n_num) = series_adaptive(&mp.num, centre, cfg)?;
            let (_, n_den) = series_adaptive(&mp.den, centre, cfg)?;
            Ok(points
                .iter()
                .map(|&z| {
                    (
                        series_fixed(&mp.num, z, n_num + 4),
                        series_fixed(&mp.den, z, n_den + 4),
                    )
                })
                .collect())
        }
        Method::Pfaff => {
            let zt = centre / (centre - 1.0);
            let (_, n_num) = series_adaptive(&pfaff_params(&mp.num), zt, cfg)?;
            let (_, n_den) = series_adaptive(&pfaff_params(&mp.den), zt, cfg)?;
            Ok(points
                .iter()
                .map(|&z| {
                    let zt = z / (z - 1.0);
                    (
                        pfaff_prefactor(&mp.num, z)
                            * series_fixed(&pfaff_params(&mp.num), zt, n_num + 4),
                        pfaff_prefactor(&mp.den, z)
                            * series_fixed(&pfaff_params(&mp.den), zt, n_den + 4),
                    )
                })
                .collect())
        }
        Method::Continue => {
            let st = continue_pair(&[mp.num, mp.den], centre, cfg)?;
            Ok(points
                .iter()
                .map(|&z| {
                    let v = st.eval(z);
                    (v[0], v[1])
                })
                .collect())
        }
    }
}

/// Schwarz triangle function w(ẑ) on the half-plane chart, normalized so
/// that w(0) = 0 and w(1) = s. Principal branch of ẑ^{β₁+1}.
pub fn schwarz_w(zh: Complex64, divisor: &ConeDivisor) -> Result<Complex64> {
    let cfg = crate::config::DEFAULT;
    let mp = MapParams::build(divisor.beta)?;
    if (zh - 1.0).norm() < 1e-13 {
        return w_at_one(&mp, &cfg);
    }
    let (n, d) = eval_pair(&mp, zh, &cfg)?;
    Ok(mp.c_beta() * zh.powf(divisor.beta[0] + 1.0) * n / d)
}

/// Derivative w′(ẑ) = c_β (β₁+1) ẑ^{β₁} (1−ẑ)^{β₂} / F_den(ẑ)².
pub fn schwarz_w_prime(zh: Complex64, divisor: &ConeDivisor) -> Result<Complex64> {
    let cfg = crate::config::DEFAULT;
    let mp = MapParams::build(divisor.beta)?;
    let (_, d) = eval_pair(&mp, zh, &cfg)?;
    let one = Complex64::new(1.0, 0.0);
    Ok(mp.c_beta()
        * (divisor.beta[0] + 1.0)
        * zh.powf(divisor.beta[0])
        * (one - zh).powf(divisor.beta[1])
        / (d * d))
}

/// w(1) = s via Gauss's summation F(a,b,c;1) = Γ(c)Γ(c−a−b)/(Γ(c−a)Γ(c−b)).
fn w_at_one(mp: &MapParams, cfg: &PrecisionConfig) -> Result<Complex64> {
    let gauss = |p: &HypParams| -> Result<f64> {
        Ok((log_gamma(p.c, cfg)? + log_gamma(p.c - p.a - p.b, cfg)?
            - log_gamma(p.c - p.a, cfg)?
            - log_gamma(p.c - p.b, cfg)?)
        .exp())
    };
    Ok(Complex64::new(
        mp.c_beta() * gauss(&mp.num)? / gauss(&mp.den)?,
        0.0,
    ))
}

/// Moduli |w(−1)| and |w′(−1)| from the rapidly convergent argument-1/2
/// series (the Pfaff images of ẑ = −1).
pub(crate) fn w_at_minus_one(mp: &MapParams, cfg: &PrecisionConfig) -> Result<(f64, f64)> {
    let f1 = hyp2f1(mp.num.a, 2.0 + mp.degree / 2.0, mp.num.c, 0.5, cfg)?;
    let f2 = hyp2f1(
        mp.den.a,
        1.0 - mp.beta[0] + mp.degree / 2.0,
        mp.den.c,
        0.5,
        cfg,
    )?;
    let w_abs = 2f64.powf(-1.0 - mp.beta[0]) * mp.c_beta() * f1 / f2;
    let wp_abs = 2f64.powf(mp.beta[2] - mp.beta[0]) * mp.phi_big.exp() / (f2 * f2);
    Ok((w_abs.abs(), wp_abs))
}

/// φ_∞ = 2 log 2 + log |w′(−1)| − log(1 + 2π(2+|β|) |w(−1)|²).
pub fn phi_infinity(divisor: &ConeDivisor) -> Result<f64> {
    divisor.require_canonical()?;
    let cfg = crate::config::DEFAULT;
    let mp = MapParams::build(divisor.beta)?;
    let (w_abs, wp_abs) = w_at_minus_one(&mp, &cfg)?;
    let arg = 1.0 + mp.kappa * w_abs * w_abs;
    if arg <= 0.0 {
        return Err(Error::domain(format!(
            "developing map left the model disk: 1 + kappa |w(-1)|^2 = {arg}"
        )));
    }
    Ok(2.0 * std::f64::consts::LN_2 + wp_abs.ln() - arg.ln())
}
