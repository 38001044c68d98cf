use crate::error::{Error, Result};

/// Tunable accuracy knobs for the special-function layer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionConfig {
    /// Target relative error for series and expansions.
    pub rel_tol: f64,
    /// Hard cap on the number of series terms before giving up.
    pub series_max_terms: usize,
    /// Recurrence shifts applied before switching to an asymptotic
    /// expansion (used by ζ′_H(−1, ·), log Γ, ψ, ψ′). The argument is
    /// shifted upward until it reaches this threshold.
    pub euler_maclaurin_shift: usize,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig {
            rel_tol: 1e-12,
            series_max_terms: 4096,
            euler_maclaurin_shift: 16,
        }
    }
}

impl PrecisionConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::domain("rel_tol must be positive"));
        }
        if self.series_max_terms < 32 {
            return Err(Error::domain("series_max_terms must be at least 32"));
        }
        if self.euler_maclaurin_shift < 8 {
            return Err(Error::domain("euler_maclaurin_shift must be at least 8"));
        }
        Ok(())
    }
}

/// Configuration used by the higher layers when none is supplied explicitly.
pub const DEFAULT: PrecisionConfig = PrecisionConfig {
    rel_tol: 1e-12,
    series_max_terms: 4096,
    euler_maclaurin_shift: 16,
};

/// Frequently used mathematical constants.
#[derive(Debug, Clone, Copy)]
pub struct Constants {
    /// ζ′_R(−1) = 1/12 − log A, with A the Glaisher–Kinkelin constant.
    pub zeta_prime_riemann_m1: f64,
    /// log A (Glaisher–Kinkelin).
    pub log_glaisher: f64,
    pub pi: f64,
    pub log_pi: f64,
    pub log2: f64,
}

/// ζ′_R(−1).
pub const ZETA_PRIME_M1: f64 = -0.16542114370045092921;

/// log of the Glaisher–Kinkelin constant A.
pub const LOG_GLAISHER: f64 = 0.24875447703378426255;

pub const LN_PI: f64 = 1.1447298858494001741;

impl Default for Constants {
    fn default() -> Self {
        Constants {
            zeta_prime_riemann_m1: ZETA_PRIME_M1,
            log_glaisher: LOG_GLAISHER,
            pi: std::f64::consts::PI,
            log_pi: LN_PI,
            log2: std::f64::consts::LN_2,
        }
    }
}

impl Constants {
    /// The two stored representations of ζ′_R(−1) must agree:
    /// ζ′_R(−1) = 1/12 − log A.
    pub fn consistent(&self, rel_tol: f64) -> bool {
        let lhs = self.zeta_prime_riemann_m1;
        let rhs = 1.0 / 12.0 - self.log_glaisher;
        (lhs - rhs).abs() <= rel_tol * lhs.abs()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_consistent() {
        let c = Constants::default();
        assert!(c.consistent(1e-12));
    }

    #[test]
    fn config_invariants() {
        assert!(PrecisionConfig::default().validate().is_ok());
        let bad = PrecisionConfig {
            rel_tol: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = PrecisionConfig {
            series_max_terms: 8,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = PrecisionConfig {
            euler_maclaurin_shift: 4,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }
}
