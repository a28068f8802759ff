//! Capacity, critical point and rate bounds for cycle-constrained synthesis.
//!
//! `tau` is the per-strand cycle budget `T / n`; `delta` is the relative
//! Hamming distance. Pair counts track the combined time of both strands, so
//! the pair generating function is read in direction `(1, 2 tau, delta)`.

use crate::acsv::{self, Direction, SparseMultivariatePolynomial};
use crate::numeric::{entropy, smallest_positive_root, RealPolynomial, DEFAULT_TOLERANCE};
use crate::rate::{Flag, Rate};
use crate::{Error, Result};

/// Upper end of the root scans; every relevant root lies well inside.
pub const ROOT_SCAN_MAX: f64 = 10.0;

/// Budget at and above which every strand fits.
pub const TAU_SATURATION: f64 = 2.5;

/// Hamming radius at which a quaternary ball covers everything.
pub const DELTA_FULL: f64 = 0.75;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthesisParams {
    tau: f64,
    delta: f64,
}

impl SynthesisParams {
    pub fn new(tau: f64, delta: f64) -> Result<Self> {
        check_tau(tau)?;
        if !(0.0..=1.0).contains(&delta) {
            return Err(Error::domain("delta", delta, "must lie in [0, 1]"));
        }
        Ok(SynthesisParams { tau, delta })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }
}

fn check_tau(tau: f64) -> Result<()> {
    if !(tau > 1.0) || !tau.is_finite() {
        return Err(Error::domain(
            "tau",
            tau,
            "cycle budget per symbol must exceed 1",
        ));
    }
    Ok(())
}

fn poly(c: &[f64]) -> RealPolynomial {
    RealPolynomial::new(c.to_vec())
}

/// Capacity-achieving point `(x, y)` for `tau < 5/2`.
pub fn capacity_point(tau: f64) -> Result<(f64, f64)> {
    check_tau(tau)?;
    if tau >= TAU_SATURATION {
        return Ok((0.25, 1.0));
    }
    let cubic = poly(&[1.0 - tau, 2.0 - tau, 3.0 - tau, 4.0 - tau]);
    let y = smallest_positive_root(&cubic, ROOT_SCAN_MAX, DEFAULT_TOLERANCE)?.root;
    let x = 1.0 / (y + y * y + y.powi(3) + y.powi(4));
    Ok((x, y))
}

/// `Cap(tau)`: growth rate of strands synthesizable within `tau n` cycles.
pub fn capacity(tau: f64) -> Result<f64> {
    check_tau(tau)?;
    if tau >= TAU_SATURATION {
        return Ok(2.0);
    }
    let (x, y) = capacity_point(tau)?;
    Ok(-x.log2() - tau * y.log2())
}

/// Denominator of the pair generating function in `(x, y, z)`:
/// `1 - x y^2 (1 + y^2)((1 + y^4) + 2 z y (1 + y + y^2))`.
pub fn pair_denominator() -> SparseMultivariatePolynomial {
    let terms = [
        (vec![0, 0, 0], 1.0),
        (vec![1, 2, 0], -1.0),
        (vec![1, 6, 0], -1.0),
        (vec![1, 4, 0], -1.0),
        (vec![1, 8, 0], -1.0),
        (vec![1, 3, 1], -2.0),
        (vec![1, 4, 1], -2.0),
        (vec![1, 5, 1], -2.0),
        (vec![1, 5, 1], -2.0),
        (vec![1, 6, 1], -2.0),
        (vec![1, 7, 1], -2.0),
    ];
    SparseMultivariatePolynomial::new(3, terms).expect("exponents have three entries")
}

/// Direction `(1, 2 tau, delta)`.
pub fn pair_direction(p: &SynthesisParams) -> Result<Direction> {
    Direction::new(vec![1.0, 2.0 * p.tau(), p.delta()])
}

/// Equation for `y` at combined time density `tau_c` with denominators cleared:
///
/// ```text
/// tau_c (1 + y^2)(1 + y^4)(1 + y + y^2)
///   - 2 (1 + y + y^2)(1 + 2y^2 + 3y^4 + 4y^6)
///   - delta (1 - y^4)(1 + 2y + 4y^2 + 2y^3 + y^4)
/// ```
pub fn critical_y_polynomial(tau_c: f64, delta: f64) -> RealPolynomial {
    let a = poly(&[1.0, 0.0, 1.0]);
    let b = poly(&[1.0, 0.0, 0.0, 0.0, 1.0]);
    let c = poly(&[1.0, 1.0, 1.0]);
    let d = poly(&[1.0, 0.0, 2.0, 0.0, 3.0, 0.0, 4.0]);
    let e = poly(&[1.0, 0.0, 0.0, 0.0, -1.0]);
    let f = poly(&[1.0, 2.0, 4.0, 2.0, 1.0]);
    let lhs = (&(&a * &b) * &c).scale(tau_c);
    let rhs = &(&c * &d).scale(2.0) + &(&e * &f).scale(delta);
    &lhs - &rhs
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisCriticalPoint {
    pub x_hat: f64,
    pub y_hat: f64,
    pub z_hat: f64,
    /// `H` then the two proportionality equations at `(x, y, z)`.
    pub residuals: Vec<f64>,
}

impl SynthesisCriticalPoint {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, r| m.max(r.abs()))
    }

    /// `-log2 x - 2 tau log2 y - delta log2 z`.
    pub fn exponent(&self, p: &SynthesisParams) -> f64 {
        -self.x_hat.log2() - 2.0 * p.tau() * self.y_hat.log2() - p.delta() * self.z_hat.log2()
    }
}

fn x_hat(y: f64, delta: f64) -> f64 {
    (1.0 - delta) / (y * y * (1.0 + y * y) * (1.0 + y.powi(4)))
}

fn z_hat(y: f64, delta: f64) -> f64 {
    delta * (1.0 + y.powi(4)) / (2.0 * (1.0 - delta) * y * (1.0 + y + y * y))
}

/// Critical point of the pair generating function for `0 < delta < 1`.
pub fn critical_point(tau: f64, delta: f64) -> Result<SynthesisCriticalPoint> {
    let p = SynthesisParams::new(tau, delta)?;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::domain(
            "delta",
            delta,
            "critical point needs 0 < delta < 1",
        ));
    }
    let y = smallest_positive_root(
        &critical_y_polynomial(2.0 * tau, delta),
        ROOT_SCAN_MAX,
        DEFAULT_TOLERANCE,
    )?
    .root;
    let (x, z) = (x_hat(y, delta), z_hat(y, delta));
    let residuals =
        acsv::critical_system_residual(&pair_denominator(), &pair_direction(&p)?, &[x, y, z])?;
    Ok(SynthesisCriticalPoint {
        x_hat: x,
        y_hat: y,
        z_hat: z,
        residuals,
    })
}

/// Equation for `y_min` with denominators cleared:
///
/// ```text
/// y (1 - y^4)(y^4 + 2y^3 + 4y^2 + 2y + 1)
///   - (tau (1 + y^2)(1 + y^4) - (4y^6 + 3y^4 + 2y^2 + 1)) ((1 + y^4) + 2y (1 + y + y^2))
/// ```
pub fn y_min_polynomial(tau: f64) -> RealPolynomial {
    let y = poly(&[0.0, 1.0]);
    let left = &(&y * &poly(&[1.0, 0.0, 0.0, 0.0, -1.0])) * &poly(&[1.0, 2.0, 4.0, 2.0, 1.0]);
    let budget = &(&poly(&[1.0, 0.0, 1.0]) * &poly(&[1.0, 0.0, 0.0, 0.0, 1.0])).scale(tau)
        - &poly(&[1.0, 0.0, 2.0, 0.0, 3.0, 0.0, 4.0]);
    &left - &(&budget * &delta_denominator())
}

/// `(1 + y^4) + 2y (1 + y + y^2)`.
fn delta_denominator() -> RealPolynomial {
    poly(&[1.0, 2.0, 2.0, 2.0, 1.0])
}

/// `(delta_max, y_min)`: the radius where `z_hat` reaches 1 and the ball saturates.
pub fn delta_max(tau: f64) -> Result<(f64, f64)> {
    check_tau(tau)?;
    if tau >= TAU_SATURATION {
        return Err(Error::domain(
            "tau",
            tau,
            "delta_max is defined for 1 < tau < 5/2",
        ));
    }
    let y = smallest_positive_root(&y_min_polynomial(tau), ROOT_SCAN_MAX, DEFAULT_TOLERANCE)?.root;
    let num = 2.0 * y * (1.0 + y + y * y);
    Ok((num / delta_denominator().eval(y), y))
}

/// Upper bound on the exponent of the pair ball `T(n, delta n, tau n)`.
///
/// For `tau >= 5/2` every strand fits and the ball is the quaternary Hamming
/// ball around every strand. Below that: `Cap(tau)` at `delta = 0` (diagonal
/// pairs only), `2 Cap(tau)` from `delta_max` on, and the critical-point
/// exponent in between. The value always carries the upper-bound flag.
pub fn ball_rate_upper(tau: f64, delta: f64) -> Result<Rate> {
    let p = SynthesisParams::new(tau, delta)?;
    let rate = if tau >= TAU_SATURATION {
        if delta <= DELTA_FULL {
            Rate::plain(2.0 + hamming_ball_exponent(delta))
        } else {
            Rate::flagged(4.0, Flag::Saturated)
        }
    } else if delta == 0.0 {
        Rate::flagged(capacity(tau)?, Flag::Diagonal)
    } else if delta >= delta_max(tau)?.0 {
        Rate::flagged(2.0 * capacity(tau)?, Flag::Saturated)
    } else {
        Rate::plain(critical_point(tau, delta)?.exponent(&p))
    };
    Ok(Rate {
        flags: rate.flags.with(Flag::UpperBound),
        ..rate
    })
}

/// `H(delta) + delta log2 3` for `delta <= 3/4`, `2` beyond: the exponent of a
/// quaternary Hamming ball of radius `delta n`.
pub fn hamming_ball_exponent(delta: f64) -> f64 {
    if delta >= DELTA_FULL {
        2.0
    } else {
        entropy(delta).expect("delta validated") + delta * 3f64.log2()
    }
}

/// `2 Cap(tau) - T(tau, delta)`, floored at 0.
pub fn gv_rate(tau: f64, delta: f64) -> Result<Rate> {
    let ball = ball_rate_upper(tau, delta)?;
    Ok(Rate {
        value: 2.0 * capacity(tau)? - ball.value,
        flags: ball.flags,
    }
    .floored())
}

/// `Cap(tau) - H(delta) - delta log2 3`, floored at 0.
///
/// Past `delta = 3/4` the Hamming ball is everything and the bound is 0,
/// flagged as a boundary value.
pub fn simple_lb_rate(tau: f64, delta: f64) -> Result<Rate> {
    SynthesisParams::new(tau, delta)?;
    let cap = capacity(tau)?;
    if delta > DELTA_FULL {
        return Ok(Rate::flagged((cap - 2.0).max(0.0), Flag::Boundary));
    }
    Ok(Rate::plain(cap - hamming_ball_exponent(delta)).floored())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn capacity_anchors() {
        assert_eq!(capacity(2.5).unwrap(), 2.0);
        assert_eq!(capacity(4.0).unwrap(), 2.0);
        // y = 1 solves the cubic at tau = 5/2: 1.5 + 0.5 - 0.5 - 1.5 = 0
        let cubic = poly(&[-1.5, -0.5, 0.5, 1.5]);
        assert_eq!(cubic.eval(1.0), 0.0);
        let (x, y) = capacity_point(2.5 - 1e-12).unwrap();
        assert_abs_diff_eq!(y, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(x, 0.25, epsilon = 1e-9);
        assert_abs_diff_eq!(capacity(2.5 - 1e-12).unwrap(), 2.0, epsilon = 1e-9);
        assert!(capacity(1.0).is_err());
        assert!(capacity(0.5).is_err());
    }

    #[test]
    fn capacity_is_monotone() {
        let mut prev = 0.0;
        for k in 1..=40 {
            let c = capacity(1.0 + 0.05 * k as f64).unwrap();
            assert!(c >= prev - 1e-12 && c <= 2.0);
            prev = c;
        }
    }

    #[test]
    fn capacity_matches_word_counts() {
        let n = 200;
        for tau in [1.5, 2.0] {
            let t = (tau * n as f64) as usize;
            let count = super::super::pairs::count_words_exact(n, t);
            let empirical = crate::numeric::log2_big(&count) / n as f64;
            assert!(
                (empirical - capacity(tau).unwrap()).abs() < 0.05,
                "tau={tau}"
            );
        }
    }

    #[test]
    fn y_equation_forms_agree() {
        // 2(1 - d)(1 + y + y^2)(1 + 2y^2 + 3y^4 + 4y^6) + d (1 + y^4)(3 + 4y + 10y^2 + 6y^3 + 7y^4)
        for (tc, d) in [(4.0, 0.1), (3.0, 0.4), (4.5, 0.7)] {
            let c = poly(&[1.0, 1.0, 1.0]);
            let g = poly(&[1.0, 0.0, 2.0, 0.0, 3.0, 0.0, 4.0]);
            let b = poly(&[1.0, 0.0, 0.0, 0.0, 1.0]);
            let k = poly(&[3.0, 4.0, 10.0, 6.0, 7.0]);
            let lhs = (&(&poly(&[1.0, 0.0, 1.0]) * &b) * &c).scale(tc);
            let rhs = &(&c * &g).scale(2.0 * (1.0 - d)) + &(&b * &k).scale(d);
            let alt = &lhs - &rhs;
            for y in [0.3, 0.7, 1.1] {
                assert_abs_diff_eq!(
                    alt.eval(y),
                    critical_y_polynomial(tc, d).eval(y),
                    epsilon = 1e-11
                );
            }
        }
    }

    #[test]
    fn critical_point_residuals() {
        let cp = critical_point(2.0, 0.1).unwrap();
        assert!(cp.max_residual() <= 1e-9, "{:?}", cp.residuals);
        for tau in [1.5, 2.0] {
            let dm = delta_max(tau).unwrap().0;
            let mut delta = 0.05;
            while delta < dm {
                let cp = critical_point(tau, delta).unwrap();
                assert!(cp.max_residual() <= 1e-9, "tau={tau} delta={delta}");
                delta += 0.05;
            }
        }
        assert!(critical_point(2.0, 0.0).is_err());
        assert!(critical_point(2.0, 1.0).is_err());
        assert!(critical_point(0.9, 0.1).is_err());
    }

    #[test]
    fn critical_point_matches_newton() {
        let p = SynthesisParams::new(2.0, 0.3).unwrap();
        let cp = critical_point(2.0, 0.3).unwrap();
        let newton = acsv::solve_critical_point(
            &pair_denominator(),
            &pair_direction(&p).unwrap(),
            &[cp.x_hat * 1.1, cp.y_hat * 0.95, cp.z_hat * 1.05],
            acsv::NewtonOptions::default(),
        )
        .unwrap();
        assert_abs_diff_eq!(newton.z[0], cp.x_hat, epsilon = 1e-8);
        assert_abs_diff_eq!(newton.z[1], cp.y_hat, epsilon = 1e-8);
        assert_abs_diff_eq!(newton.z[2], cp.z_hat, epsilon = 1e-8);
    }

    #[test]
    fn small_radius_tends_to_capacity() {
        let cap = capacity(2.0).unwrap();
        let gaps: Vec<f64> = [1e-2, 1e-3, 1e-4]
            .iter()
            .map(|&d| (ball_rate_upper(2.0, d).unwrap().value - cap).abs())
            .collect();
        assert!(
            gaps[0] > gaps[1] && gaps[1] > gaps[2] && gaps[2] < 2e-3,
            "{gaps:?}"
        );
        let at_zero = ball_rate_upper(2.0, 0.0).unwrap();
        assert_eq!(at_zero.value, cap);
        assert!(at_zero.flags.contains(Flag::Diagonal));
    }

    #[test]
    fn delta_max_properties() {
        let mut prev = 0.0;
        for tau in [1.5, 1.75, 2.0, 2.25] {
            let (dm, y) = delta_max(tau).unwrap();
            assert!(dm > prev);
            prev = dm;
            assert_abs_diff_eq!(z_hat(y, dm), 1.0, epsilon = 1e-6);
            let cp = critical_point(tau, dm).unwrap();
            assert_abs_diff_eq!(cp.z_hat, 1.0, epsilon = 1e-6);
            let two_cap = 2.0 * capacity(tau).unwrap();
            let below = ball_rate_upper(tau, dm - 1e-9).unwrap().value;
            assert_abs_diff_eq!(below, two_cap, epsilon = 1e-6);
            assert_eq!(ball_rate_upper(tau, dm).unwrap().value, two_cap);
        }
        assert!(delta_max(2.5).is_err());
    }

    #[test]
    fn saturated_budget_branch() {
        assert_abs_diff_eq!(
            ball_rate_upper(3.0, 0.75).unwrap().value,
            4.0,
            epsilon = 1e-12
        );
        assert_eq!(ball_rate_upper(3.0, 0.8).unwrap().value, 4.0);
        assert_eq!(ball_rate_upper(2.5, 0.0).unwrap().value, 2.0);
        assert_abs_diff_eq!(
            ball_rate_upper(2.5, 0.75 - 1e-9).unwrap().value,
            4.0,
            epsilon = 1e-6
        );
        assert!(ball_rate_upper(2.0, 0.3)
            .unwrap()
            .flags
            .contains(Flag::UpperBound));
    }

    #[test]
    fn gv_and_lb() {
        let (dm, _) = delta_max(2.0).unwrap();
        assert_eq!(gv_rate(2.0, dm).unwrap().value, 0.0);
        assert_eq!(gv_rate(2.0, 0.9).unwrap().value, 0.0);
        assert!(gv_rate(1.5, 0.05).unwrap().value > 0.0);
        assert_eq!(
            simple_lb_rate(2.0, 0.0).unwrap().value,
            capacity(2.0).unwrap()
        );
        let expected = capacity(2.0).unwrap() - entropy(0.1).unwrap() - 0.1 * 3f64.log2();
        assert_abs_diff_eq!(
            simple_lb_rate(2.0, 0.1).unwrap().value,
            expected,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            simple_lb_rate(3.0, 0.75).unwrap().value,
            0.0,
            epsilon = 1e-12
        );
        assert_eq!(simple_lb_rate(2.0, 0.95).unwrap().value, 0.0);
        assert!(simple_lb_rate(2.0, 1.2).is_err());
        for tau in [1.5, 1.75, 2.0, 2.25, 3.0] {
            for k in 0..=100 {
                let delta = k as f64 / 100.0;
                let lb = simple_lb_rate(tau, delta).unwrap().value;
                let gv = gv_rate(tau, delta).unwrap().value;
                assert!(lb <= gv + 1e-12, "tau={tau} delta={delta}: {lb} > {gv}");
            }
        }
    }

    #[test]
    fn denominator_expands_product_form() {
        let h = pair_denominator();
        for (x, y, z) in [(0.3, 0.7, 0.2), (0.1, 1.3, 0.9)] {
            let y2 = y * y;
            let direct =
                1.0 - x * y2 * (1.0 + y2) * ((1.0 + y2 * y2) + 2.0 * z * y * (1.0 + y + y2));
            assert_abs_diff_eq!(h.evaluate(&[x, y, z]).unwrap(), direct, epsilon = 1e-14);
        }
    }
}
