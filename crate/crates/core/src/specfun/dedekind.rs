//! Dedekind sums with exact rational arithmetic.

/// A reduced fraction num/den with den > 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rational {
    pub num: i64,
    pub den: i64,
}

impl Rational {
    fn new(num: i128, den: i128) -> Rational {
        debug_assert!(den != 0);
        let g = gcd_i128(num.unsigned_abs(), den.unsigned_abs()) as i128;
        let sign = if den < 0 { -1 } else { 1 };
        Rational {
            num: (sign * num / g) as i64,
            den: (sign * den / g).unsigned_abs() as i64,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd_i128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b.max(1);
    }
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Sawtooth ((x)) for x = n/d: x − ⌊x⌋ − 1/2 for non-integer x, 0 otherwise.
/// Returned as a fraction over 2d.
fn sawtooth_num(n: i128, d: i128) -> i128 {
    // value = (2(n mod d) − d) / (2d), or 0 when d | n
    let r = n.rem_euclid(d);
    if r == 0 {
        0
    } else {
        2 * r - d
    }
}

/// Dedekind sum S(q, p) = Σ_{j=1..p} ((j/p)) ((jq/p)), exact.
pub fn dedekind_sum(q: u64, p: u64) -> Rational {
    assert!(p >= 1, "dedekind_sum requires p >= 1");
    let p = p as i128;
    let q = q as i128;
    // each factor is n/(2p); accumulate over the common denominator 4p²
    let mut acc: i128 = 0;
    for j in 1..=p {
        acc += sawtooth_num(j, p) * sawtooth_num(j * q, p);
    }
    Rational::new(acc, 4 * p * p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_modulus() {
        assert_eq!(dedekind_sum(5, 1), Rational { num: 0, den: 1 });
    }

    #[test]
    fn known_small_values() {
        // S(1,3) = ((1/3))² + ((2/3))² = 1/36 + 1/36 = 1/18
        assert_eq!(dedekind_sum(1, 3), Rational { num: 1, den: 18 });
        assert_eq!(dedekind_sum(3, 5), Rational { num: 0, den: 1 });
    }

    #[test]
    fn reciprocity() {
        // S(q,p) + S(p,q) = −1/4 + (p/q + q/p + 1/(pq)) / 12
        for &(p, q) in &[(3u64, 5u64), (7, 4), (9, 8), (5, 12)] {
            let lhs = dedekind_sum(q, p).to_f64() + dedekind_sum(p, q).to_f64();
            let (pf, qf) = (p as f64, q as f64);
            let rhs = -0.25 + (pf / qf + qf / pf + 1.0 / (pf * qf)) / 12.0;
            assert!((lhs - rhs).abs() < 1e-14, "reciprocity failed for ({p},{q})");
        }
    }
}
