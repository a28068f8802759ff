//! Shared numeric primitives: binary entropy, guarded logarithms, exact
//! binomials and scalar root finding.
//!
//! Logarithms are base 2 everywhere in the public surface.

mod polynomial;
mod roots;

pub use polynomial::RealPolynomial;
pub use roots::{find_root_bisection, smallest_positive_root, BracketedRoot};

use num_bigint::BigUint;
use num_traits::One;

use crate::{Error, Result};

/// Tolerance used for scalar root finding unless the caller asks otherwise.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// A real number in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Probability(f64);

impl Probability {
    pub fn new(p: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&p) {
            Ok(Probability(p))
        } else {
            Err(Error::domain("p", p, "must lie in [0, 1]"))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Binary entropy in bits.
    pub fn entropy(self) -> f64 {
        let p = self.0;
        -xlog2x(p) - xlog2x(1.0 - p)
    }
}

/// `x * log2(x)` with the convention `0 * log2(0) = 0`.
pub fn xlog2x(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Binary entropy `H(p) = -p log2 p - (1-p) log2 (1-p)`.
pub fn entropy(p: f64) -> Result<f64> {
    Probability::new(p).map(Probability::entropy)
}

/// Exact `n choose k`.
pub fn binomial_exact(n: i64, k: i64) -> Result<BigUint> {
    if n < 0 {
        return Err(Error::domain("n", n as f64, "must be non-negative"));
    }
    if k < 0 || k > n {
        return Err(Error::domain("k", k as f64, "must lie in [0, n]"));
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    // Each partial product is itself a binomial coefficient, so the division is exact.
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    Ok(acc)
}

/// `log2` of a big integer, `-inf` for zero.
pub fn log2_big(value: &BigUint) -> f64 {
    let bits = value.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    // Keep the top 64 bits; the dropped tail changes the result by < 2^-60 relative.
    let shift = bits.saturating_sub(64);
    let top = (value >> shift).iter_u64_digits().next().unwrap_or(0);
    (top as f64).log2() + shift as f64
}

/// `log2(2^a + 2^b)`, treating `-inf` as the additive identity.
pub fn log2_add(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if lo == f64::NEG_INFINITY {
        return hi;
    }
    hi + (lo - hi).exp2().ln_1p() / std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    /// Pascal-triangle oracle, independent of the multiplicative formula.
    fn pascal_row(n: usize) -> Vec<BigUint> {
        let mut row = vec![BigUint::one()];
        for _ in 0..n {
            let mut next = vec![BigUint::one(); row.len() + 1];
            for k in 1..row.len() {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
        }
        row
    }

    #[test]
    fn entropy_anchors() {
        assert_eq!(entropy(0.5).unwrap(), 1.0);
        assert_eq!(entropy(0.0).unwrap(), 0.0);
        assert_eq!(entropy(1.0).unwrap(), 0.0);
        // 2 - (3/4) log2 3, evaluated with mpmath at 50 digits.
        assert_abs_diff_eq!(
            entropy(0.25).unwrap(),
            0.811_278_124_459_132_8,
            epsilon = 1e-15
        );
        assert!(entropy(-0.1).is_err());
        assert!(entropy(1.5).is_err());
        assert!(entropy(f64::NAN).is_err());
    }

    #[test]
    fn binomial_anchors() {
        assert_eq!(binomial_exact(5, 2).unwrap(), BigUint::from(10u32));
        assert_eq!(binomial_exact(0, 0).unwrap(), BigUint::one());
        let row = pascal_row(60);
        assert_eq!(row[30], BigUint::from(118_264_581_564_861_424u64));
        assert_eq!(binomial_exact(60, 30).unwrap(), row[30]);
        assert!(binomial_exact(3, 4).is_err());
        assert!(binomial_exact(3, -1).is_err());
    }

    #[test]
    fn binomial_matches_pascal_rows() {
        for n in 0..=70 {
            let row = pascal_row(n);
            for (k, expected) in row.iter().enumerate() {
                assert_eq!(&binomial_exact(n as i64, k as i64).unwrap(), expected);
            }
        }
    }

    #[test]
    fn log2_of_big_integers() {
        assert_eq!(log2_big(&BigUint::from(0u32)), f64::NEG_INFINITY);
        assert_eq!(log2_big(&BigUint::from(1024u32)), 10.0);
        let big = BigUint::one() << 300u32;
        assert_abs_diff_eq!(
            log2_big(&(big * 3u32)),
            300.0 + 3f64.log2(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn log_domain_addition() {
        assert_abs_diff_eq!(log2_add(3.0, 3.0), 4.0, epsilon = 1e-15);
        assert_eq!(log2_add(f64::NEG_INFINITY, 2.5), 2.5);
        assert_eq!(
            log2_add(f64::NEG_INFINITY, f64::NEG_INFINITY),
            f64::NEG_INFINITY
        );
        assert_abs_diff_eq!(log2_add(1.0, 0.0), 3f64.log2(), epsilon = 1e-15);
    }

    proptest! {
        #[test]
        fn entropy_is_symmetric(p in 0.0f64..=1.0) {
            let a = entropy(p).unwrap();
            let b = entropy(1.0 - p).unwrap();
            prop_assert!((a - b).abs() < 1e-12);
        }

        #[test]
        fn entropy_is_midpoint_concave(p in 0.0f64..=1.0, q in 0.0f64..=1.0) {
            let mid = entropy((p + q) / 2.0).unwrap();
            let avg = (entropy(p).unwrap() + entropy(q).unwrap()) / 2.0;
            prop_assert!(mid >= avg - 1e-12);
        }

        #[test]
        fn binomial_satisfies_pascal(n in 2i64..120, k_frac in 0.0f64..1.0) {
            let k = 1 + ((n - 2) as f64 * k_frac) as i64;
            let lhs = binomial_exact(n, k).unwrap();
            let rhs = binomial_exact(n - 1, k - 1).unwrap() + binomial_exact(n - 1, k).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
