//! Cone divisors β = β₁·p₁ + β₂·p₂ + β₃·p₃ and their validity invariants.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance on |β| + 2 inside which the metric is treated as flat.
pub const FLAT_TOL: f64 = 1e-12;

/// Geometry class of the constant-curvature metric, determined by the sign
/// of |β| + 2 (with a 1e-12 band for the flat case).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeometryClass {
    Hyperbolic,
    Flat,
    Spherical,
}

impl GeometryClass {
    pub fn from_degree(degree: f64) -> GeometryClass {
        let t = degree + 2.0;
        if t.abs() <= FLAT_TOL {
            GeometryClass::Flat
        } else if t < 0.0 {
            GeometryClass::Hyperbolic
        } else {
            GeometryClass::Spherical
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            GeometryClass::Hyperbolic => "hyperbolic",
            GeometryClass::Flat => "flat",
            GeometryClass::Spherical => "spherical",
        }
    }
}

/// The divisor: orders (β₁, β₂, β₃) at three distinct marked points,
/// canonically (−1, 0, 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeDivisor {
    pub beta: [f64; 3],
    pub points: [Complex64; 3],
}

pub const CANONICAL_POINTS: [Complex64; 3] = [
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, 0.0),
    Complex64::new(1.0, 0.0),
];

impl ConeDivisor {
    /// Divisor at the canonical points (−1, 0, 1). Validates that each
    /// βⱼ ∈ (−1, 0) and, in the spherical class, the Troyanov condition
    /// βⱼ − |β|/2 > 0.
    pub fn new(beta: [f64; 3]) -> Result<ConeDivisor> {
        Self::with_points(beta, CANONICAL_POINTS)
    }

    /// Divisor at arbitrary distinct finite marked points.
    pub fn with_points(beta: [f64; 3], points: [Complex64; 3]) -> Result<ConeDivisor> {
        for (j, &b) in beta.iter().enumerate() {
            if !b.is_finite() || b <= -1.0 || b >= 0.0 {
                return Err(Error::divisor(format!(
                    "order must lie in (-1,0): beta_{} = {}",
                    j + 1,
                    b
                )));
            }
        }
        for p in &points {
            if !p.re.is_finite() || !p.im.is_finite() {
                return Err(Error::divisor("marked points must be finite"));
            }
        }
        if points[0] == points[1] || points[1] == points[2] || points[0] == points[2] {
            return Err(Error::divisor("marked points must be pairwise distinct"));
        }
        let degree: f64 = beta.iter().sum();
        if GeometryClass::from_degree(degree) == GeometryClass::Spherical {
            for (j, &b) in beta.iter().enumerate() {
                if b - degree / 2.0 <= 0.0 {
                    return Err(Error::divisor(format!(
                        "Troyanov condition violated: beta_{} - |beta|/2 = {} <= 0",
                        j + 1,
                        b - degree / 2.0
                    )));
                }
            }
        }
        Ok(ConeDivisor { beta, points })
    }

    /// Degree |β| = β₁ + β₂ + β₃.
    pub fn degree(&self) -> f64 {
        self.beta.iter().sum()
    }

    pub fn geometry(&self) -> GeometryClass {
        GeometryClass::from_degree(self.degree())
    }

    pub fn is_canonical(&self) -> bool {
        self.points == CANONICAL_POINTS
    }

    pub(crate) fn require_canonical(&self) -> Result<()> {
        if self.is_canonical() {
            Ok(())
        } else {
            Err(Error::divisor(
                "operation requires the canonical marked points (-1, 0, 1)",
            ))
        }
    }
}
