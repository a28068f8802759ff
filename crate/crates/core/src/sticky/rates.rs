//! Asymptotic ball size and rate bounds for the sticky-insertion channel.
//!
//! With `r = rho n` runs and `b = beta n` insertions, two words are confusable
//! iff their run-length vectors are within L1 distance `delta n`, `delta = 2 beta`.

use crate::acsv::{self, Direction, SparseMultivariatePolynomial};
use crate::numeric::{entropy, xlog2x};
use crate::rate::{Flag, Flags, Rate};
use crate::{Error, Result};

/// Run density and insertion density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StickyParams {
    rho: f64,
    beta: f64,
}

impl StickyParams {
    pub fn new(rho: f64, beta: f64) -> Result<Self> {
        if !(rho > 0.0 && rho < 1.0) {
            return Err(Error::domain("rho", rho, "run density must lie in (0, 1)"));
        }
        if !(beta >= 0.0) || !beta.is_finite() {
            return Err(Error::domain(
                "beta",
                beta,
                "insertion density must be non-negative",
            ));
        }
        Ok(StickyParams { rho, beta })
    }

    /// Parameters from the L1 radius density `delta = 2 beta`.
    pub fn from_delta(rho: f64, delta: f64) -> Result<Self> {
        Self::new(rho, delta / 2.0)
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn delta(&self) -> f64 {
        2.0 * self.beta
    }
}

/// Denominator of the pair generating function in `(x1, x2, y, z)`:
/// `(1 - x1 x2)(1 - x1 z)(1 - x2 z) - y x1 x2 (1 - x1 x2 z^2)`.
pub fn pair_denominator() -> SparseMultivariatePolynomial {
    let var = |i| SparseMultivariatePolynomial::variable(4, i);
    let one = SparseMultivariatePolynomial::constant(4, 1.0);
    let (x1, x2, y, z) = (var(0), var(1), var(2), var(3));
    let x1x2 = &x1 * &x2;
    let left = &(&(&one - &x1x2) * &(&one - &(&x1 * &z))) * &(&one - &(&x2 * &z));
    let right = &(&y * &x1x2) * &(&one - &(&x1x2 * &(&z * &z)));
    &left - &right
}

/// Direction `(1, 1, rho, delta)` of `N(n, n, rho n, delta n)`.
pub fn pair_direction(p: &StickyParams) -> Result<Direction> {
    Direction::new(vec![1.0, 1.0, p.rho(), p.delta()])
}

/// Critical point of the pair generating function (`x1 = x2 = x`).
#[derive(Debug, Clone, PartialEq)]
pub struct StickyCriticalPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    /// Critical-system residuals at `(x, x, y, z)`: `H` then the three proportionality equations.
    pub residuals: Vec<f64>,
}

impl StickyCriticalPoint {
    pub fn coordinates(&self) -> [f64; 4] {
        [self.x, self.x, self.y, self.z]
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0, |m, r| m.max(r.abs()))
    }

    /// `-2 log2 x - rho log2 y - delta log2 z`, the exponent of `N(n, n, rho n, delta n)`.
    pub fn exponent(&self, p: &StickyParams) -> f64 {
        -2.0 * self.x.log2() - p.rho() * self.y.log2() - p.delta() * self.z.log2()
    }
}

/// Closed-form solution of the critical-point system.
///
/// ```text
/// x = sqrt(1 - 2 rho / (2 - delta))
/// z = (sqrt(rho^2 + delta^2) - rho) / (x delta)
/// y = 2 (sqrt(rho^2 + delta^2) - delta) / (2 - delta - 2 rho)
/// ```
///
/// Needs `delta > 0` and `2 - delta - 2 rho > 0`.
pub fn critical_point_closed_form(p: &StickyParams) -> Result<StickyCriticalPoint> {
    let (rho, delta) = (p.rho(), p.delta());
    if !(delta > 0.0) {
        return Err(Error::domain(
            "delta",
            delta,
            "closed form needs a positive radius",
        ));
    }
    let slack = 2.0 - delta - 2.0 * rho;
    if !(slack > 0.0) {
        return Err(Error::domain(
            "delta",
            delta,
            "closed form needs 2 - delta - 2 rho > 0",
        ));
    }
    let root = rho.hypot(delta);
    let x = (slack / (2.0 - delta)).sqrt();
    // (root - rho) / delta rewritten without the cancellation at small delta.
    let z = delta / (x * (root + rho));
    let y = 2.0 * (root - delta) / slack;
    let residuals =
        acsv::critical_system_residual(&pair_denominator(), &pair_direction(p)?, &[x, x, y, z])?;
    Ok(StickyCriticalPoint { x, y, z, residuals })
}

/// `beta_max(rho) = (1 - rho) / (2 - rho)`, where the ball rate saturates.
pub fn beta_max(rho: f64) -> Result<f64> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::domain("rho", rho, "run density must lie in (0, 1)"));
    }
    Ok((1.0 - rho) / (2.0 - rho))
}

/// Explicit ball exponent on the unsaturated branch (valid for `0 < beta < 1 - rho`).
pub fn ball_rate_formula(rho: f64, beta: f64) -> f64 {
    let delta = 2.0 * beta;
    let root = rho.hypot(delta);
    // root - rho = delta^2 / (root + rho), without cancellation at small delta
    let excess = if delta > 0.0 {
        delta * delta / (root + rho)
    } else {
        0.0
    };
    -rho + xlog2x(delta) - rho * (root - delta).log2() - xlog2_weighted(delta, excess)
        + (-1.0 + rho + beta) * (2.0 - 2.0 * rho - 2.0 * beta).log2()
        + (1.0 - beta) * (2.0 - 2.0 * beta).log2()
}

fn xlog2_weighted(w: f64, v: f64) -> f64 {
    if w == 0.0 {
        0.0
    } else {
        w * v.log2()
    }
}

/// Exponent of the total ball `|T(n, rho n, 2 beta n)|`.
///
/// Three branches: `H(rho)` at `beta = 0` (only diagonal pairs), the explicit
/// formula up to `beta_max`, and `2 H(rho)` (every pair) beyond it.
pub fn ball_rate(p: &StickyParams) -> Rate {
    let (rho, beta) = (p.rho(), p.beta());
    let h = entropy(rho).expect("rho validated");
    if beta == 0.0 {
        return Rate::flagged(h, Flag::Diagonal);
    }
    if beta > beta_max(rho).expect("rho validated") {
        return Rate::flagged(2.0 * h, Flag::Saturated);
    }
    Rate::plain(ball_rate_formula(rho, beta))
}

/// `Cap(rho) = H(rho)`: growth rate of binary words with `rho n` runs.
pub fn capacity_runs(rho: f64) -> Result<f64> {
    entropy(rho).map_err(|_| Error::domain("rho", rho, "run density must lie in [0, 1]"))
}

/// Optimized Gilbert-Varshamov bound for one insertion density.
#[derive(Debug, Clone, PartialEq)]
pub struct GvOptimum {
    pub rate: f64,
    pub rho: f64,
    /// Run density from the closed-form optimizer and the bound there.
    pub closed_form: (f64, f64),
    /// Numeric argmax over `rho` in `(0, 1)` and the bound there.
    pub numeric: (f64, f64),
    /// The other sign of the square root in the closed form; kept as a diagnostic.
    pub alternate: (f64, f64),
}

/// `2 H(rho) - T(rho, 2 beta)` for a fixed run density.
pub fn gv_objective(rho: f64, beta: f64) -> Result<f64> {
    let p = StickyParams::new(rho, beta)?;
    Ok(2.0 * entropy(rho)? - ball_rate(&p).value)
}

/// Closed-form maximizing run densities `(3(1 - beta) -+ sqrt(9 beta^2 - 2 beta + 1)) / 4`.
pub fn gv_rho_candidates(beta: f64) -> (f64, f64) {
    let root = (9.0 * beta * beta - 2.0 * beta + 1.0).sqrt();
    let base = 3.0 * (1.0 - beta);
    ((base - root) / 4.0, (base + root) / 4.0)
}

fn objective_or_zero(rho: f64, beta: f64) -> f64 {
    gv_objective(rho, beta).unwrap_or(0.0)
}

/// Grid scan over `(0, 1)` followed by golden-section refinement around the best cell.
fn numeric_argmax(beta: f64) -> (f64, f64) {
    const CELLS: usize = 4000;
    let grid = |k: usize| k as f64 / CELLS as f64;
    let best = (1..CELLS)
        .map(|k| (k, objective_or_zero(grid(k), beta)))
        .fold((1, f64::NEG_INFINITY), |best, cur| {
            if cur.1 > best.1 {
                cur
            } else {
                best
            }
        });
    let (mut a, mut b) = (
        grid(best.0 - 1).max(1e-12),
        grid(best.0 + 1).min(1.0 - 1e-12),
    );
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (objective_or_zero(c, beta), objective_or_zero(d, beta));
    while b - a > 1e-12 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective_or_zero(c, beta);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective_or_zero(d, beta);
        }
    }
    let rho = 0.5 * (a + b);
    let value = objective_or_zero(rho, beta);
    if value >= best.1 {
        (rho, value)
    } else {
        (grid(best.0), best.1)
    }
}

/// Gilbert-Varshamov lower bound on the sticky-insertion code rate,
/// optimized over the run density.
///
/// Evaluates the closed-form optimizer and a numeric argmax and keeps the better one.
pub fn gv_rate(beta: f64) -> Result<GvOptimum> {
    if !(0.0..0.5).contains(&beta) {
        return Err(Error::domain(
            "beta",
            beta,
            "GV bound is evaluated for 0 <= beta < 1/2",
        ));
    }
    let (minus, plus) = gv_rho_candidates(beta);
    let at = |rho: f64| {
        if rho > 0.0 && rho < 1.0 {
            objective_or_zero(rho, beta)
        } else {
            0.0
        }
    };
    let closed_form = (minus, at(minus));
    let alternate = (plus, at(plus));
    let numeric = numeric_argmax(beta);
    let (rho, rate) = if closed_form.1 >= numeric.1 {
        closed_form
    } else {
        numeric
    };
    Ok(GvOptimum {
        rate,
        rho,
        closed_form,
        numeric,
        alternate,
    })
}

/// Sphere-packing upper bound `(1 + 2 beta)(1 - H((1 + beta)/(1 + 2 beta)))`.
pub fn sp_rate(beta: f64) -> Result<f64> {
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(Error::domain(
            "beta",
            beta,
            "insertion density must be non-negative",
        ));
    }
    let s = 1.0 + 2.0 * beta;
    Ok(s * (1.0 - entropy((1.0 + beta) / s)?))
}

/// Lower bound from the crude ball estimate `|T| <= 2^r C(d + r - 1, r - 1)`:
/// `2 beta - 1 - (1 + 2 beta) log2((1 + 2 beta)/3) + 2 beta log2 beta`.
///
/// The optimal run density `(1 - 4 beta)/3` leaves `(0, 1)` at `beta = 1/4`;
/// from there on the optimum is the boundary value 0.
pub fn simple_lb_rate(beta: f64) -> Result<Rate> {
    if !(beta >= 0.0) || !beta.is_finite() {
        return Err(Error::domain(
            "beta",
            beta,
            "insertion density must be non-negative",
        ));
    }
    if beta >= 0.25 {
        return Ok(Rate::flagged(0.0, Flag::Boundary));
    }
    let s = 1.0 + 2.0 * beta;
    let value = 2.0 * beta - 1.0 - s * (s / 3.0).log2() + 2.0 * xlog2x(beta);
    Ok(Rate {
        value,
        flags: Flags::none(),
    }
    .floored())
}

/// Optimal run density of the crude bound, `(1 - 4 beta) / 3`.
pub fn simple_lb_rho(beta: f64) -> f64 {
    (1.0 - 4.0 * beta) / 3.0
}
