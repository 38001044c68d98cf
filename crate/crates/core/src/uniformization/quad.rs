//! Singular-aware quadrature of e^{2φ} and φ e^{2φ} over the whole sphere.
//!
//! The plane is split into exactly tiling patches:
//!  * polar disks of radius 1/4 around each marked point, integrated with a
//!    tanh-sinh radial rule that absorbs the |z−pⱼ|^{2βⱼ} weight (and the
//!    log weight of the φ-integrand) at the origin;
//!  * the Voronoi remainder of each marked point inside |z| ≤ 3, in polar
//!    coordinates with the angular range split at the corner angles of the
//!    cell boundary;
//!  * the exterior |z| > 3, compactified by z ↦ 1/v where
//!    φ(1/v) − 2 log|v| is smooth through v = 0.
//!
//! Integrand values are assembled in log scale, so cone orders close to −1
//! (densities like ρ^{−1.8}) stay far from overflow.

use num_complex::Complex64;
use std::sync::OnceLock;

use crate::divisor::ConeDivisor;
use crate::error::{Error, Result};
use crate::uniformization::potential::{EvalPoint, PotentialEvaluator};

/// Target absolute accuracy per patch.
const PATCH_TOL: f64 = 1e-9;
const DISK_RADIUS: f64 = 0.25;
const OUTER_RADIUS: f64 = 3.0;

// ---------------------------------------------------------------------
// Gauss–Legendre base rule
// ---------------------------------------------------------------------

fn legendre_rule(n: usize) -> Vec<(f64, f64)> {
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_eval(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_eval(n, x);
        rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    rule
}

fn legendre_eval(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn gl15() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| legendre_rule(15))
}

fn gl15_integrate<F>(f: &mut F, a: f64, b: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut sum = 0.0;
    for &(x, w) in gl15() {
        sum += w * f(mid + half * x)?;
    }
    Ok(sum * half)
}

/// Adaptive Gauss–Legendre with interval bisection.
pub(crate) fn adaptive_gl<F>(f: &mut F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let whole = gl15_integrate(f, a, b)?;
    adaptive_step(f, a, b, whole, tol, 28)
}

fn adaptive_step<F>(f: &mut F, a: f64, b: f64, whole: f64, tol: f64, depth: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mid = 0.5 * (a + b);
    let left = gl15_integrate(f, a, mid)?;
    let right = gl15_integrate(f, mid, b)?;
    let refined = left + right;
    if (refined - whole).abs() <= tol || (refined - whole).abs() <= 1e-16 * refined.abs() {
        return Ok(refined);
    }
    if depth == 0 {
        return Err(Error::convergence(
            "adaptive quadrature failed to converge (depth exhausted)",
        ));
    }
    Ok(adaptive_step(f, a, mid, left, tol * 0.5, depth - 1)?
        + adaptive_step(f, mid, b, right, tol * 0.5, depth - 1)?)
}

// ---------------------------------------------------------------------
// tanh-sinh rule on (0, 1], in log scale
// ---------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
pub(crate) struct TsNode {
    pub x: f64,
    pub ln_x: f64,
    pub ln_w: f64,
}

/// Nodes of the tanh-sinh rule x(t) = ½(1 + tanh((π/2) sinh t)) truncated at
/// |t| ≤ t_max, spacing t_max / n_half.
pub(crate) fn tanh_sinh_nodes(t_max: f64, n_half: usize) -> Vec<TsNode> {
    let h = t_max / n_half as f64;
    let mut nodes = Vec::with_capacity(2 * n_half + 1);
    for k in -(n_half as i64)..=(n_half as i64) {
        let t = k as f64 * h;
        let s = 0.5 * std::f64::consts::PI * t.sinh();
        // x = 1/(1+e^{−2s}); stable logs on both tails
        let (x, ln_x) = if s >= 0.0 {
            let e = (-2.0 * s).exp();
            (1.0 / (1.0 + e), -(e.ln_1p()))
        } else {
            let e = (2.0 * s).exp();
            (e / (1.0 + e), 2.0 * s - e.ln_1p())
        };
        if x <= 0.0 || !ln_x.is_finite() {
            continue;
        }
        // w = h (π/4) cosh t / cosh²(s)
        let ln_cosh_s = s.abs() + (-2.0 * s.abs()).exp().ln_1p() - std::f64::consts::LN_2;
        let ln_w = (h * 0.25 * std::f64::consts::PI * t.cosh()).ln() - 2.0 * ln_cosh_s;
        nodes.push(TsNode { x, ln_x, ln_w });
    }
    nodes
}

/// ∫_a^b f with an integrable singularity at the endpoint `a`, by tanh-sinh.
pub(crate) fn integrate_singular_lower<F>(f: &mut F, a: f64, b: f64, n_half: usize) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let len = b - a;
    let mut sum = 0.0;
    for node in tanh_sinh_nodes(4.0, n_half) {
        sum += node.ln_w.exp() * len * f(a + len * node.x)?;
    }
    Ok(sum)
}

// ---------------------------------------------------------------------
// the sphere integrals
// ---------------------------------------------------------------------

struct SphereQuadrature {
    eval: PotentialEvaluator,
}

impl SphereQuadrature {
    fn new(divisor: &ConeDivisor) -> Result<SphereQuadrature> {
        Ok(SphereQuadrature {
            eval: PotentialEvaluator::new(divisor)?,
        })
    }

    /// exp(2φ + extra) or φ · exp(2φ + extra) at an evaluation point.
    fn density(&self, p: EvalPoint, ln_extra: f64, weighted: bool) -> Result<f64> {
        let phi = self.eval.phi(p)?;
        let v = (2.0 * phi + ln_extra).exp();
        Ok(if weighted { phi * v } else { v })
    }

    /// Polar disk of radius 1/4 around marked point j.
    fn disk(&self, j: usize, weighted: bool) -> Result<f64> {
        // deeper tanh-sinh reach for orders close to −1
        let t_max = 6.0;
        let nodes = tanh_sinh_nodes(t_max, 160);
        let ln_r = DISK_RADIUS.ln();
        let mut radial_cache: Vec<Option<f64>> = vec![None; MAX_ANGULAR + 1];
        let mut prev: Option<f64> = None;
        let mut n_theta = 64;
        while n_theta <= MAX_ANGULAR {
            let stride = MAX_ANGULAR / n_theta;
            let mut total = 0.0;
            for i in 0..n_theta {
                let slot = i * stride;
                let radial = match radial_cache[slot] {
                    Some(v) => v,
                    None => {
                        let theta =
                            2.0 * std::f64::consts::PI * (slot as f64) / (MAX_ANGULAR as f64);
                        let dir = Complex64::from_polar(1.0, theta);
                        let mut sum = 0.0;
                        for node in &nodes {
                            // ∫₀^r f(ρ) ρ dρ = Σ w r² x f(r x)
                            let rho = DISK_RADIUS * node.x;
                            let p = EvalPoint::NearSingular {
                                j,
                                delta: dir * rho,
                            };
                            let ln_extra = node.ln_w + 2.0 * ln_r + node.ln_x;
                            sum += self.density(p, ln_extra, weighted)?;
                        }
                        radial_cache[slot] = Some(sum);
                        sum
                    }
                };
                total += radial;
            }
            total *= 2.0 * std::f64::consts::PI / n_theta as f64;
            if let Some(p) = prev {
                if (total - p).abs() <= PATCH_TOL * total.abs().max(1.0) {
                    return Ok(total);
                }
            }
            prev = Some(total);
            n_theta *= 2;
        }
        Err(Error::convergence(format!(
            "disk quadrature around point {j} did not converge in the angular index"
        )))
    }

    /// Voronoi remainder of marked point j inside |z| ≤ 3, radial range
    /// [1/4, ρ_max(θ)] with the cell-corner angles as angular breakpoints.
    fn cell(&self, j: usize, weighted: bool) -> Result<f64> {
        let centre = [-1.0f64, 0.0, 1.0][j];
        let corner = (1.0f64 / 6.0).acos();
        let two_pi = 2.0 * std::f64::consts::PI;
        let breaks: Vec<f64> = match j {
            0 => vec![0.0, corner, two_pi - corner, two_pi],
            1 => vec![
                0.0,
                corner,
                std::f64::consts::PI - corner,
                std::f64::consts::PI + corner,
                two_pi - corner,
                two_pi,
            ],
            _ => vec![
                0.0,
                std::f64::consts::PI - corner,
                std::f64::consts::PI + corner,
                two_pi,
            ],
        };
        let rho_max = |theta: f64| -> f64 {
            let c = theta.cos();
            match j {
                0 => {
                    if c > 1.0 / 6.0 {
                        0.5 / c
                    } else {
                        c + (c * c + 8.0).sqrt()
                    }
                }
                1 => (0.5 / c.abs().max(1.0 / 6.0)).min(OUTER_RADIUS),
                _ => {
                    if c < -1.0 / 6.0 {
                        -0.5 / c
                    } else {
                        -c + (c * c + 8.0).sqrt()
                    }
                }
            }
        };
        let mut total = 0.0;
        for pair in breaks.windows(2) {
            let mut f_theta = |theta: f64| -> Result<f64> {
                let dir = Complex64::from_polar(1.0, theta);
                let mut f_rho = |rho: f64| -> Result<f64> {
                    let z = Complex64::new(centre, 0.0) + dir * rho;
                    self.density(EvalPoint::Plain(z), rho.ln(), weighted)
                };
                adaptive_gl(&mut f_rho, DISK_RADIUS, rho_max(theta), 0.02 * PATCH_TOL)
            };
            total += adaptive_gl(&mut f_theta, pair[0], pair[1], 0.3 * PATCH_TOL)?;
        }
        Ok(total)
    }

    /// Exterior |z| > 3 through v = 1/z; the weighted integrand carries the
    /// log|v| singularity of φ at v = 0, absorbed by the tanh-sinh rule.
    fn exterior(&self, weighted: bool) -> Result<f64> {
        let r_v = 1.0 / OUTER_RADIUS;
        let nodes = tanh_sinh_nodes(4.0, 128);
        let ln_rv = r_v.ln();
        let mut prev: Option<f64> = None;
        let mut n_theta = 32;
        while n_theta <= MAX_ANGULAR {
            let mut total = 0.0;
            for i in 0..n_theta {
                let theta = 2.0 * std::f64::consts::PI * i as f64 / n_theta as f64;
                let dir = Complex64::from_polar(1.0, theta);
                for node in &nodes {
                    let rho = r_v * node.x;
                    let ln_rho = ln_rv + node.ln_x;
                    let z = (dir * rho).inv();
                    let phi = self.eval.phi(EvalPoint::Plain(z))?;
                    // e^{2φ(1/v)} |v|^{−4} ρ dρ dθ, assembled in logs
                    let expo =
                        2.0 * phi - 4.0 * ln_rho + node.ln_w + 2.0 * ln_rv + node.ln_x;
                    let val = expo.exp();
                    total += if weighted { phi * val } else { val };
                }
            }
            total *= 2.0 * std::f64::consts::PI / n_theta as f64;
            if let Some(p) = prev {
                if (total - p).abs() <= PATCH_TOL * total.abs().max(1.0) {
                    return Ok(total);
                }
            }
            prev = Some(total);
            n_theta *= 2;
        }
        Err(Error::convergence(
            "exterior quadrature did not converge in the angular index",
        ))
    }

    fn full(&self, weighted: bool) -> Result<f64> {
        let mut total = 0.0;
        for j in 0..3 {
            total += self.disk(j, weighted)?;
            total += self.cell(j, weighted)?;
        }
        total += self.exterior(weighted)?;
        Ok(total)
    }
}

const MAX_ANGULAR: usize = 512;

/// ∫_ℂ e^{2φ} dA — must equal 1 for every valid divisor (unit-area metric).
pub fn area_integral(divisor: &ConeDivisor) -> Result<f64> {
    SphereQuadrature::new(divisor)?.full(false)
}

/// ∫_ℂ φ e^{2φ} dA, the Liouville-action integral of the anomaly formula.
pub fn phi_weighted_integral(divisor: &ConeDivisor) -> Result<f64> {
    SphereQuadrature::new(divisor)?.full(true)
}
