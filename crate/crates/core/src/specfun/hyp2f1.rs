//! Gauss hypergeometric F(a, b, c; z) for real parameters on z ∈ [0, 0.75].

use crate::config::PrecisionConfig;
use crate::error::{Error, Result};

/// F(a, b, c; z) by the power series, with a term-ratio convergence check.
/// When the direct series converges slowly the Euler transformation
/// F(a,b,c;z) = (1−z)^{c−a−b} F(c−a, c−b, c; z) is applied first.
pub fn hyp2f1(a: f64, b: f64, c: f64, z: f64, cfg: &PrecisionConfig) -> Result<f64> {
    if c <= 0.0 && c == c.floor() {
        return Err(Error::domain(format!(
            "hyp2f1: c must not be a non-positive integer, got {c}"
        )));
    }
    if !(0.0..=0.75).contains(&z) {
        return Err(Error::domain(format!(
            "hyp2f1 supports z in [0, 0.75], got {z}"
        )));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    // Euler transform when it shrinks the series coefficients.
    if (a * b).abs() > ((c - a) * (c - b)).abs() + 1.0 {
        let f = series(c - a, c - b, c, z, cfg)?;
        return Ok((1.0 - z).powf(c - a - b) * f);
    }
    series(a, b, c, z, cfg)
}

fn series(a: f64, b: f64, c: f64, z: f64, cfg: &PrecisionConfig) -> Result<f64> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..cfg.series_max_terms {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * z;
        sum += term;
        if term.abs() <= cfg.rel_tol * 1e-3 * sum.abs().max(1.0) && n > 2 {
            return Ok(sum);
        }
    }
    Err(Error::convergence(format!(
        "hyp2f1 series exceeded {} terms at z = {z}",
        cfg.series_max_terms
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::DEFAULT;

    #[test]
    fn empty_series_at_zero() {
        assert_eq!(hyp2f1(0.3, 1.7, 2.2, 0.0, &DEFAULT).unwrap(), 1.0);
    }

    #[test]
    fn log_series() {
        // F(1,1,2;z) = −log(1−z)/z; at z = 1/2 this is 2 log 2
        let got = hyp2f1(1.0, 1.0, 2.0, 0.5, &DEFAULT).unwrap();
        assert!((got - 2.0 * std::f64::consts::LN_2).abs() < 1e-13);
    }

    #[test]
    fn euler_identity() {
        // F(a,b,c;z) = (1−z)^{c−a−b} F(c−a, c−b, c; z), both sides by series
        let (a, b, c, z) = (0.3, -0.4, 1.2, 0.5);
        let lhs = series(a, b, c, z, &DEFAULT).unwrap();
        let rhs = (1.0 - z).powf(c - a - b) * series(c - a, c - b, c, z, &DEFAULT).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
        // frozen value from an independent evaluation
        assert!((lhs - 0.9444042646687136041).abs() < 1e-13);
    }

    #[test]
    fn gauss_contiguous_relation() {
        // c [F(a+1,b,c;z) − F(a,b,c;z)] = b z F(a+1,b+1,c+1;z)
        let (a, b, c, z) = (0.25, -0.55, 1.3, 0.6);
        let lhs = c * (hyp2f1(a + 1.0, b, c, z, &DEFAULT).unwrap()
            - hyp2f1(a, b, c, z, &DEFAULT).unwrap());
        let rhs = b * z * hyp2f1(a + 1.0, b + 1.0, c + 1.0, z, &DEFAULT).unwrap();
        assert!((lhs - rhs).abs() < 1e-11);
    }

    #[test]
    fn domain_errors() {
        assert!(hyp2f1(0.3, 0.4, 0.0, 0.5, &DEFAULT).is_err());
        assert!(hyp2f1(0.3, 0.4, -2.0, 0.5, &DEFAULT).is_err());
        assert!(hyp2f1(0.3, 0.4, 1.0, 0.9, &DEFAULT).is_err());
        assert!(hyp2f1(0.3, 0.4, 1.0, -0.1, &DEFAULT).is_err());
    }

    #[test]
    fn non_convergence_reported() {
        let tight = PrecisionConfig {
            series_max_terms: 32,
            ..DEFAULT
        };
        assert!(matches!(
            hyp2f1(1.0, 1.0, 2.0, 0.75, &tight),
            Err(Error::Convergence(_))
        ));
    }
}
