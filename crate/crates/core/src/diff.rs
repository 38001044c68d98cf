//! Central-difference derivatives with Richardson extrapolation, used by the
//! governing-equation check and the extremal module.

use crate::error::Result;

/// First derivative by central differences at steps h and h/2, combined with
/// one Richardson level (leading error O(h⁴)).
pub fn central_derivative<F>(f: F, x: f64, h: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let d = |step: f64| -> Result<f64> { Ok((f(x + step)? - f(x - step)?) / (2.0 * step)) };
    let d1 = d(h)?;
    let d2 = d(h / 2.0)?;
    Ok((4.0 * d2 - d1) / 3.0)
}

/// Second derivative by central differences with two Richardson levels.
pub fn second_derivative<F>(f: F, x: f64, h: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let fx = f(x)?;
    let d = |step: f64| -> Result<f64> { Ok((f(x + step)? - 2.0 * fx + f(x - step)?) / (step * step)) };
    let a = d(h)?;
    let b = d(h / 2.0)?;
    let c = d(h / 4.0)?;
    let r1 = (4.0 * b - a) / 3.0;
    let r2 = (4.0 * c - b) / 3.0;
    Ok((16.0 * r2 - r1) / 15.0)
}

/// Mixed second derivative ∂²f/∂x∂y by the four-point cross stencil with two
/// Richardson levels.
pub fn mixed_derivative<F>(f: F, x: f64, y: f64, h: f64) -> Result<f64>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    let d = |step: f64| -> Result<f64> {
        Ok((f(x + step, y + step)? + f(x - step, y - step)?
            - f(x + step, y - step)?
            - f(x - step, y + step)?)
            / (4.0 * step * step))
    };
    let a = d(h)?;
    let b = d(h / 2.0)?;
    let c = d(h / 4.0)?;
    let r1 = (4.0 * b - a) / 3.0;
    let r2 = (4.0 * c - b) / 3.0;
    Ok((16.0 * r2 - r1) / 15.0)
}

/// Richardson extrapolation of a sequence v(tₖ) with t shrinking by `ratio`
/// each step, assuming an error expansion in powers of t. Returns the
/// highest-order extrapolant.
pub fn richardson_sequence(values: &[f64], ratio: f64) -> f64 {
    let mut table: Vec<f64> = values.to_vec();
    let n = table.len();
    for level in 1..n {
        let factor = ratio.powi(level as i32);
        for i in (level..n).rev() {
            table[i] = (factor * table[i] - table[i - 1]) / (factor - 1.0);
        }
    }
    table[n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_exp() {
        let f = |x: f64| -> Result<f64> { Ok(x.exp()) };
        let d = central_derivative(f, 0.3, 1e-4).unwrap();
        assert!((d - 0.3f64.exp()).abs() < 1e-11);
    }

    #[test]
    fn second_derivative_of_sin() {
        let f = |x: f64| -> Result<f64> { Ok(x.sin()) };
        let d = second_derivative(f, 0.7, 1e-2).unwrap();
        assert!((d + 0.7f64.sin()).abs() < 1e-9);
    }

    #[test]
    fn mixed_derivative_of_product() {
        let f = |x: f64, y: f64| -> Result<f64> { Ok(x.exp() * y.sin()) };
        let d = mixed_derivative(f, 0.2, 0.5, 1e-3).unwrap();
        assert!((d - 0.2f64.exp() * 0.5f64.cos()).abs() < 1e-9);
    }

    #[test]
    fn richardson_geometric() {
        // v(t) = L + c t, t halving
        let vals = [1.5, 1.25, 1.125];
        let l = richardson_sequence(&vals, 2.0);
        assert!((l - 1.0).abs() < 1e-12);
    }
}
