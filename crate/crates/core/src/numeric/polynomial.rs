use std::fmt;
use std::ops::{Add, Mul, Sub};

/// Dense univariate polynomial with real coefficients, constant term first.
///
/// Trailing zero coefficients are trimmed, so the leading coefficient is
/// nonzero unless the polynomial is identically zero.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPolynomial {
    coefficients: Vec<f64>,
}

impl RealPolynomial {
    pub fn new(mut coefficients: Vec<f64>) -> Self {
        while coefficients.last() == Some(&0.0) {
            coefficients.pop();
        }
        RealPolynomial { coefficients }
    }

    pub fn zero() -> Self {
        RealPolynomial::new(Vec::new())
    }

    pub fn constant(c: f64) -> Self {
        RealPolynomial::new(vec![c])
    }

    /// The monomial `c * y^k`.
    pub fn monomial(c: f64, k: usize) -> Self {
        let mut coefficients = vec![0.0; k + 1];
        coefficients[k] = c;
        RealPolynomial::new(coefficients)
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree, with the zero polynomial reported as degree 0.
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn eval(&self, y: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * y + c)
    }

    pub fn scale(&self, factor: f64) -> Self {
        RealPolynomial::new(self.coefficients.iter().map(|c| c * factor).collect())
    }
}

impl From<&[f64]> for RealPolynomial {
    fn from(coefficients: &[f64]) -> Self {
        RealPolynomial::new(coefficients.to_vec())
    }
}

impl Add for &RealPolynomial {
    type Output = RealPolynomial;

    fn add(self, rhs: &RealPolynomial) -> RealPolynomial {
        let len = self.coefficients.len().max(rhs.coefficients.len());
        let coefficient =
            |p: &RealPolynomial, i: usize| p.coefficients.get(i).copied().unwrap_or(0.0);
        RealPolynomial::new(
            (0..len)
                .map(|i| coefficient(self, i) + coefficient(rhs, i))
                .collect(),
        )
    }
}

impl Sub for &RealPolynomial {
    type Output = RealPolynomial;

    fn sub(self, rhs: &RealPolynomial) -> RealPolynomial {
        self + &rhs.scale(-1.0)
    }
}

impl Mul for &RealPolynomial {
    type Output = RealPolynomial;

    fn mul(self, rhs: &RealPolynomial) -> RealPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RealPolynomial::zero();
        }
        let mut out = vec![0.0; self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in rhs.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RealPolynomial::new(out)
    }
}

impl fmt::Display for RealPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coefficients.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*y")?,
                _ => write!(f, "{c}*y^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_leading_zeros() {
        let p = RealPolynomial::new(vec![1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), 1);
        assert!(RealPolynomial::new(vec![0.0, 0.0]).is_zero());
    }

    #[test]
    fn arithmetic() {
        // (1 + y)(1 - y) = 1 - y^2
        let a = RealPolynomial::new(vec![1.0, 1.0]);
        let b = RealPolynomial::new(vec![1.0, -1.0]);
        assert_eq!((&a * &b).coefficients(), &[1.0, 0.0, -1.0]);
        assert_eq!((&a + &b).coefficients(), &[2.0]);
        assert_eq!((&a - &a), RealPolynomial::zero());
        assert_eq!(RealPolynomial::monomial(3.0, 2).eval(2.0), 12.0);
    }

    #[test]
    fn horner_matches_direct_sum() {
        let p = RealPolynomial::new(vec![-1.5, -0.5, 0.5, 1.5]);
        let y: f64 = 0.7;
        let direct = -1.5 - 0.5 * y + 0.5 * y * y + 1.5 * y.powi(3);
        assert!((p.eval(y) - direct).abs() < 1e-15);
        assert_eq!(p.eval(1.0), 0.0);
    }
}
