//! Smooth critical points of a multivariate rational generating function.
//!
//! For `F = G / H` with nonnegative coefficients `a_k`, the coefficients along
//! the ray `k = n r` grow like `prod z_i^(-n r_i)` where `z > 0` is the unique
//! positive solution of
//!
//! ```text
//! H(z) = 0
//! r_l * z_j * dH/dz_j = r_j * z_l * dH/dz_l      for j = 1 .. l-1
//! ```
//!
//! Only that exponential rate is computed here. The polynomial correction is
//! reported as a descriptive string by [`polynomial_correction`].

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector};

use crate::{Error, Result};

/// Polynomial in `num_vars` variables stored as a list of monomials.
///
/// Exponent vectors are unique and no stored coefficient is zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMultivariatePolynomial {
    num_vars: usize,
    terms: Vec<(Vec<u32>, f64)>,
}

impl SparseMultivariatePolynomial {
    /// Builds a polynomial, merging repeated exponents and dropping zero coefficients.
    pub fn new(num_vars: usize, terms: impl IntoIterator<Item = (Vec<u32>, f64)>) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        let mut merged: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
        for (exponents, coefficient) in terms {
            if exponents.len() != num_vars {
                return Err(Error::DimensionMismatch {
                    expected: num_vars,
                    got: exponents.len(),
                });
            }
            *merged.entry(exponents).or_insert(0.0) += coefficient;
        }
        Ok(Self::from_map(num_vars, merged))
    }

    fn from_map(num_vars: usize, merged: BTreeMap<Vec<u32>, f64>) -> Self {
        let terms = merged.into_iter().filter(|(_, c)| *c != 0.0).collect();
        SparseMultivariatePolynomial { num_vars, terms }
    }

    pub fn constant(num_vars: usize, c: f64) -> Self {
        Self::from_map(num_vars, BTreeMap::from([(vec![0; num_vars], c)]))
    }

    /// The single variable `z_index`.
    pub fn variable(num_vars: usize, index: usize) -> Self {
        let mut exponents = vec![0; num_vars];
        exponents[index] = 1;
        Self::from_map(num_vars, BTreeMap::from([(exponents, 1.0)]))
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &[(Vec<u32>, f64)] {
        &self.terms
    }

    pub fn scale(&self, factor: f64) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c * factor));
        Self::from_map(self.num_vars, terms.collect())
    }

    /// Swaps variables so that new variable `i` is old variable `order[i]`.
    pub fn permute(&self, order: &[usize]) -> Result<Self> {
        self.check_dim(order.len())?;
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (order.iter().map(|&i| e[i]).collect(), *c));
        Ok(Self::from_map(self.num_vars, terms.collect()))
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len == self.num_vars {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.num_vars,
                got: len,
            })
        }
    }

    pub fn evaluate(&self, z: &[f64]) -> Result<f64> {
        self.check_dim(z.len())?;
        Ok(self.terms.iter().map(|(e, c)| c * monomial(z, e)).sum())
    }

    /// Exact gradient by term-wise differentiation.
    pub fn gradient(&self, z: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(z.len())?;
        let mut grad = vec![0.0; self.num_vars];
        for (e, c) in &self.terms {
            for (k, g) in grad.iter_mut().enumerate() {
                if e[k] > 0 {
                    let mut d = e.clone();
                    d[k] -= 1;
                    *g += c * e[k] as f64 * monomial(z, &d);
                }
            }
        }
        Ok(grad)
    }

    /// Exact Hessian by term-wise differentiation.
    pub fn hessian(&self, z: &[f64]) -> Result<Vec<Vec<f64>>> {
        self.check_dim(z.len())?;
        let l = self.num_vars;
        let mut hess = vec![vec![0.0; l]; l];
        for (e, c) in &self.terms {
            for j in 0..l {
                for k in 0..l {
                    let factor = if j == k {
                        e[j] as f64 * (e[j] as f64 - 1.0)
                    } else {
                        e[j] as f64 * e[k] as f64
                    };
                    if factor == 0.0 {
                        continue;
                    }
                    let mut d = e.clone();
                    d[j] -= 1;
                    d[k] -= 1;
                    hess[j][k] += c * factor * monomial(z, &d);
                }
            }
        }
        Ok(hess)
    }

    fn to_map(&self) -> BTreeMap<Vec<u32>, f64> {
        self.terms.iter().cloned().collect()
    }
}

fn monomial(z: &[f64], exponents: &[u32]) -> f64 {
    z.iter()
        .zip(exponents)
        .map(|(&zi, &k)| zi.powi(k as i32))
        .product()
}

impl Add for &SparseMultivariatePolynomial {
    type Output = SparseMultivariatePolynomial;

    fn add(self, rhs: &SparseMultivariatePolynomial) -> SparseMultivariatePolynomial {
        assert_eq!(
            self.num_vars, rhs.num_vars,
            "adding polynomials in different rings"
        );
        let mut merged = self.to_map();
        for (e, c) in &rhs.terms {
            *merged.entry(e.clone()).or_insert(0.0) += c;
        }
        SparseMultivariatePolynomial::from_map(self.num_vars, merged)
    }
}

impl Sub for &SparseMultivariatePolynomial {
    type Output = SparseMultivariatePolynomial;

    fn sub(self, rhs: &SparseMultivariatePolynomial) -> SparseMultivariatePolynomial {
        self + &rhs.scale(-1.0)
    }
}

impl Mul for &SparseMultivariatePolynomial {
    type Output = SparseMultivariatePolynomial;

    fn mul(self, rhs: &SparseMultivariatePolynomial) -> SparseMultivariatePolynomial {
        assert_eq!(
            self.num_vars, rhs.num_vars,
            "multiplying polynomials in different rings"
        );
        let mut merged = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let e: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                *merged.entry(e).or_insert(0.0) += ca * cb;
            }
        }
        SparseMultivariatePolynomial::from_map(self.num_vars, merged)
    }
}

/// Normalized growth rates `r_i` of the coefficient indices, `k_i = n r_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Direction(Vec<f64>);

impl Direction {
    pub fn new(rates: Vec<f64>) -> Result<Self> {
        if rates.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        if let Some(&bad) = rates.iter().find(|r| !(**r > 0.0) || !r.is_finite()) {
            return Err(Error::domain(
                "r_i",
                bad,
                "direction components must be positive",
            ));
        }
        Ok(Direction(rates))
    }

    pub fn rates(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Positive solution of the critical-point system for one direction.
#[derive(Debug, Clone, PartialEq)]
pub struct CriticalPoint {
    pub z: Vec<f64>,
    /// Max-norm of [`critical_system_residual`] at `z`.
    pub residual_norm: f64,
    pub direction: Direction,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonOptions {
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Step halvings allowed per iteration.
    pub max_halvings: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            tolerance: 1e-12,
            max_iterations: 200,
            max_halvings: 30,
        }
    }
}

/// Default starting point: every coordinate 0.5.
pub fn default_initial(num_vars: usize) -> Vec<f64> {
    vec![0.5; num_vars]
}

/// `[H(z), r_l z_j H_j - r_j z_l H_l for j < l]`, with exact partial derivatives.
pub fn critical_system_residual(
    h: &SparseMultivariatePolynomial,
    r: &Direction,
    z: &[f64],
) -> Result<Vec<f64>> {
    h.check_dim(z.len())?;
    h.check_dim(r.len())?;
    let grad = h.gradient(z)?;
    let l = z.len() - 1;
    let rates = r.rates();
    let mut out = Vec::with_capacity(z.len());
    out.push(h.evaluate(z)?);
    for j in 0..l {
        out.push(rates[l] * z[j] * grad[j] - rates[j] * z[l] * grad[l]);
    }
    Ok(out)
}

fn residual_jacobian(
    h: &SparseMultivariatePolynomial,
    r: &Direction,
    z: &[f64],
) -> Result<DMatrix<f64>> {
    let grad = h.gradient(z)?;
    let hess = h.hessian(z)?;
    let n = z.len();
    let l = n - 1;
    let rates = r.rates();
    let mut jac = DMatrix::zeros(n, n);
    for k in 0..n {
        jac[(0, k)] = grad[k];
    }
    for j in 0..l {
        for k in 0..n {
            let own = if j == k { grad[j] } else { 0.0 } + z[j] * hess[j][k];
            let last = if k == l { grad[l] } else { 0.0 } + z[l] * hess[l][k];
            jac[(j + 1, k)] = rates[l] * own - rates[j] * last;
        }
    }
    Ok(jac)
}

fn max_norm(v: &[f64]) -> f64 {
    v.iter().fold(
        0.0,
        |m, x| if x.is_nan() { f64::NAN } else { m.max(x.abs()) },
    )
}

/// Damped Newton iteration on [`critical_system_residual`].
///
/// A step is halved (up to `max_halvings` times) while it would leave the
/// positive orthant or fail to reduce the residual's max-norm. Fails with
/// [`Error::NonConvergence`] when no acceptable step exists or the iteration
/// budget runs out; the caller may retry from another starting point.
pub fn solve_critical_point(
    h: &SparseMultivariatePolynomial,
    r: &Direction,
    initial: &[f64],
    options: NewtonOptions,
) -> Result<CriticalPoint> {
    h.check_dim(initial.len())?;
    h.check_dim(r.len())?;
    if let Some(&bad) = initial.iter().find(|x| !(**x > 0.0)) {
        return Err(Error::domain(
            "initial",
            bad,
            "starting point must be positive",
        ));
    }
    let mut z = initial.to_vec();
    let mut residual = critical_system_residual(h, r, &z)?;
    let mut norm = max_norm(&residual);

    for iteration in 0..=options.max_iterations {
        if norm <= options.tolerance {
            return Ok(CriticalPoint {
                z,
                residual_norm: norm,
                direction: r.clone(),
                iterations: iteration,
            });
        }
        if iteration == options.max_iterations {
            break;
        }
        let jac = residual_jacobian(h, r, &z)?;
        let rhs = DVector::from_iterator(residual.len(), residual.iter().map(|v| -v));
        let Some(step) = jac.lu().solve(&rhs) else {
            return Err(Error::NonConvergence {
                iterations: iteration,
                residual: norm,
            });
        };

        let mut scale = 1.0;
        let mut accepted = None;
        for _ in 0..=options.max_halvings {
            let trial: Vec<f64> = z
                .iter()
                .zip(step.iter())
                .map(|(zi, di)| zi + scale * di)
                .collect();
            if trial.iter().all(|x| *x > 0.0 && x.is_finite()) {
                let trial_residual = critical_system_residual(h, r, &trial)?;
                let trial_norm = max_norm(&trial_residual);
                if trial_norm < norm {
                    accepted = Some((trial, trial_residual, trial_norm));
                    break;
                }
            }
            scale *= 0.5;
        }
        match accepted {
            Some((trial, trial_residual, trial_norm)) => {
                z = trial;
                residual = trial_residual;
                norm = trial_norm;
            }
            None => {
                return Err(Error::NonConvergence {
                    iterations: iteration,
                    residual: norm,
                })
            }
        }
    }
    Err(Error::NonConvergence {
        iterations: options.max_iterations,
        residual: norm,
    })
}

/// Exponential growth rate `-sum r_i log2 z_i` in bits per unit of `n`.
pub fn growth_exponent(cp: &CriticalPoint) -> f64 {
    exponent_at(cp.direction.rates(), &cp.z)
}

/// `-sum r_i log2 z_i` for an explicit point.
pub fn exponent_at(rates: &[f64], z: &[f64]) -> f64 {
    -rates
        .iter()
        .zip(z)
        .map(|(r, zi)| r * zi.log2())
        .sum::<f64>()
}

/// Order of the sub-exponential correction, `k_l^(-(l-1)/2)`, as text.
///
/// The constant (which needs the Hessian of the parametrized variety) is not computed.
pub fn polynomial_correction(num_vars: usize) -> String {
    let l = num_vars;
    if l <= 1 {
        "Theta(1)".to_string()
    } else if (l - 1).is_multiple_of(2) {
        format!("Theta(k_{l}^-{})", (l - 1) / 2)
    } else {
        format!("Theta(k_{l}^-{}/2)", l - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    /// `1 - z1 - z2`, whose coefficients are binomials.
    fn binomial_h() -> SparseMultivariatePolynomial {
        SparseMultivariatePolynomial::new(
            2,
            [(vec![0, 0], 1.0), (vec![1, 0], -1.0), (vec![0, 1], -1.0)],
        )
        .unwrap()
    }

    fn h2(p: f64) -> f64 {
        crate::numeric::entropy(p).unwrap()
    }

    #[test]
    fn construction_merges_and_drops_zeros() {
        let p = SparseMultivariatePolynomial::new(
            2,
            [
                (vec![1, 0], 1.0),
                (vec![1, 0], -1.0),
                (vec![0, 1], 2.0),
                (vec![0, 1], 1.0),
            ],
        )
        .unwrap();
        assert_eq!(p.terms(), &[(vec![0, 1], 3.0)]);
        assert!(SparseMultivariatePolynomial::new(2, [(vec![1], 1.0)]).is_err());
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(binomial_h().evaluate(&[0.5, 0.5]).unwrap(), 0.0);
        let one = SparseMultivariatePolynomial::constant(3, 1.0);
        assert_eq!(one.evaluate(&[0.3, 7.0, -2.0]).unwrap(), 1.0);
        assert!(binomial_h().evaluate(&[0.5]).is_err());
    }

    #[test]
    fn residual_examples() {
        let h = binomial_h();
        let r = Direction::new(vec![1.0, 1.0]).unwrap();
        let res = critical_system_residual(&h, &r, &[0.5, 0.5]).unwrap();
        assert_abs_diff_eq!(res[0], 0.0);
        assert_abs_diff_eq!(res[1], 0.0);
        let res = critical_system_residual(&h, &r, &[0.4, 0.4]).unwrap();
        assert_abs_diff_eq!(res[0], 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(res[1], 0.0);
        assert!(matches!(
            critical_system_residual(&h, &r, &[0.4, 0.4, 0.1]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let x = SparseMultivariatePolynomial::variable(3, 0);
        let y = SparseMultivariatePolynomial::variable(3, 1);
        let z = SparseMultivariatePolynomial::variable(3, 2);
        let one = SparseMultivariatePolynomial::constant(3, 1.0);
        let h = &one - &(&(&x * &(&y * &y)) * &(&one + &(&z * &y)));
        let p = [0.3, 0.8, 0.45];
        let grad = h.gradient(&p).unwrap();
        let hess = h.hessian(&p).unwrap();
        let eps = 1e-6;
        for k in 0..3 {
            let mut a = p;
            let mut b = p;
            a[k] += eps;
            b[k] -= eps;
            let fd = (h.evaluate(&a).unwrap() - h.evaluate(&b).unwrap()) / (2.0 * eps);
            assert_abs_diff_eq!(grad[k], fd, epsilon = 1e-8);
            let ga = h.gradient(&a).unwrap();
            let gb = h.gradient(&b).unwrap();
            for j in 0..3 {
                assert_abs_diff_eq!(hess[j][k], (ga[j] - gb[j]) / (2.0 * eps), epsilon = 1e-7);
            }
        }
    }

    #[test]
    fn binomial_critical_point() {
        let h = binomial_h();
        let r = Direction::new(vec![1.0, 1.0]).unwrap();
        let cp = solve_critical_point(&h, &r, &[0.3, 0.7], NewtonOptions::default()).unwrap();
        assert_abs_diff_eq!(cp.z[0], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(cp.z[1], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(growth_exponent(&cp), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn exponent_at_unit_point_is_zero() {
        assert_eq!(exponent_at(&[0.3, 2.0, 5.0], &[1.0, 1.0, 1.0]), 0.0);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(Direction::new(vec![1.0, 0.0]).is_err());
        assert!(Direction::new(vec![]).is_err());
        let r = Direction::new(vec![1.0, 1.0]).unwrap();
        assert!(
            solve_critical_point(&binomial_h(), &r, &[0.5, -0.1], NewtonOptions::default())
                .is_err()
        );
    }

    #[test]
    fn correction_strings() {
        assert_eq!(polynomial_correction(4), "Theta(k_4^-3/2)");
        assert_eq!(polynomial_correction(3), "Theta(k_3^-1)");
    }

    proptest! {
        #[test]
        fn binomial_direction_oracle(a in 0.05f64..5.0, b in 0.05f64..5.0) {
            let r = Direction::new(vec![a, b]).unwrap();
            let cp = solve_critical_point(&binomial_h(), &r, &default_initial(2), NewtonOptions::default()).unwrap();
            let expected = (a + b) * h2(a / (a + b));
            prop_assert!((growth_exponent(&cp) - expected).abs() < 1e-9);
            // Idempotent re-check of the returned residual.
            let res = critical_system_residual(&binomial_h(), &r, &cp.z).unwrap();
            prop_assert!(max_norm(&res) <= 1e-12);
        }

        #[test]
        fn scaling_h_leaves_the_point_unchanged(a in 0.1f64..3.0, b in 0.1f64..3.0, c in 0.2f64..5.0) {
            let r = Direction::new(vec![a, b]).unwrap();
            let h = binomial_h();
            let p = solve_critical_point(&h, &r, &default_initial(2), NewtonOptions::default()).unwrap();
            let q = solve_critical_point(&h.scale(c), &r, &default_initial(2), NewtonOptions::default()).unwrap();
            prop_assert!((p.z[0] - q.z[0]).abs() < 1e-9 && (p.z[1] - q.z[1]).abs() < 1e-9);
        }

        #[test]
        fn exponent_is_permutation_invariant(a in 0.1f64..3.0, b in 0.1f64..3.0, c in 0.1f64..3.0) {
            // 1 - z1 - z2 - z3 (multinomial coefficients)
            let h = SparseMultivariatePolynomial::new(
                3,
                [(vec![0, 0, 0], 1.0), (vec![1, 0, 0], -1.0), (vec![0, 1, 0], -1.0), (vec![0, 0, 1], -1.0)],
            ).unwrap();
            // Skew it so that the permutation matters.
            let h = &h - &SparseMultivariatePolynomial::new(3, [(vec![1, 1, 0], 0.3)]).unwrap();
            let rates = [a, b, c];
            let order = [2, 0, 1];
            let p = solve_critical_point(&h, &Direction::new(rates.to_vec()).unwrap(), &default_initial(3), NewtonOptions::default()).unwrap();
            let permuted_rates: Vec<f64> = order.iter().map(|&i| rates[i]).collect();
            let q = solve_critical_point(
                &h.permute(&order).unwrap(),
                &Direction::new(permuted_rates).unwrap(),
                &default_initial(3),
                NewtonOptions::default(),
            ).unwrap();
            prop_assert!((growth_exponent(&p) - growth_exponent(&q)).abs() < 1e-9);
            for (k, &i) in order.iter().enumerate() {
                prop_assert!((q.z[k] - p.z[i]).abs() < 1e-9);
            }
        }
    }
}
