use super::RealPolynomial;
use crate::{Error, Result};

const MAX_BISECTIONS: usize = 400;

/// Initial grid of the positive-root scan has `scan_max / INITIAL_CELLS` spacing.
const INITIAL_CELLS: usize = 1024;

/// The scan stops refining once a pass would exceed this many evaluations.
const MAX_SCAN_CELLS: usize = 1 << 22;

/// A root together with the final bracket it was isolated in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketedRoot {
    pub root: f64,
    /// `|f(root)|`.
    pub residual: f64,
    pub bracket: (f64, f64),
}

/// Bisection on `[lo, hi]` until the bracket is narrower than `tol` and
/// `|f(root)| <= tol`.
///
/// When the bracket can no longer be split in floating point the residual
/// test is dropped: the root is then pinned to machine precision.
pub fn find_root_bisection<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<BracketedRoot>
where
    F: Fn(f64) -> f64,
{
    if !(tol > 0.0) || !(lo < hi) {
        return Err(Error::domain("tol", tol, "need tol > 0 and lo < hi"));
    }
    let (mut lo, mut hi) = (lo, hi);
    let (f_lo, f_hi) = (f(lo), f(hi));
    if f_lo == 0.0 {
        return Ok(BracketedRoot {
            root: lo,
            residual: 0.0,
            bracket: (lo, hi),
        });
    }
    if f_hi == 0.0 {
        return Ok(BracketedRoot {
            root: hi,
            residual: 0.0,
            bracket: (lo, hi),
        });
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::NoSignChange { lo, hi });
    }
    let lo_negative = f_lo < 0.0;

    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        let converged = (hi - lo <= tol && f_mid.abs() <= tol) || mid <= lo || mid >= hi;
        if converged || f_mid == 0.0 {
            return Ok(BracketedRoot {
                root: mid,
                residual: f_mid.abs(),
                bracket: (lo, hi),
            });
        }
        if (f_mid < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    Err(Error::NonConvergence {
        iterations: MAX_BISECTIONS,
        residual: f(mid).abs(),
    })
}

/// Smallest positive real root of `p` in `(0, scan_max]`.
///
/// Scans a uniform grid for the first sign change and bisects that cell. The
/// grid starts with `scan_max / 1024` spacing and is halved until a sign change
/// shows up, the spacing drops below `tol`, or a pass would need more than
/// 2^22 cells. Roots of even multiplicity are invisible to the scan.
pub fn smallest_positive_root(
    p: &RealPolynomial,
    scan_max: f64,
    tol: f64,
) -> Result<BracketedRoot> {
    if p.is_zero() {
        return Err(Error::domain("p", 0.0, "polynomial is identically zero"));
    }
    if !(scan_max > 0.0) || !(tol > 0.0) {
        return Err(Error::domain(
            "scan_max",
            scan_max,
            "scan_max and tol must be positive",
        ));
    }
    let mut cells = INITIAL_CELLS;
    loop {
        let step = scan_max / cells as f64;
        if let Some((mut a, mut b)) = first_sign_change(p, 0.0, step, cells) {
            // The cell may hold several roots; zoom in so bisection lands on the leftmost.
            for _ in 0..3 {
                let sub = (b - a) / INITIAL_CELLS as f64;
                if sub < tol {
                    break;
                }
                match first_sign_change(p, a, sub, INITIAL_CELLS) {
                    Some(cell) => (a, b) = cell,
                    None => break,
                }
            }
            return find_root_bisection(|y| p.eval(y), a, b, tol);
        }
        if step * 0.5 < tol || cells * 2 > MAX_SCAN_CELLS {
            return Err(Error::NoRootFound { scan_max });
        }
        cells *= 2;
    }
}

/// First cell `[a, b]` of the grid `lo, lo + step, ...` with `p(a) * p(b) <= 0`.
///
/// A grid starting at zero is evaluated just off the origin, so a root at zero
/// is never reported.
fn first_sign_change(p: &RealPolynomial, lo: f64, step: f64, cells: usize) -> Option<(f64, f64)> {
    let mut a = if lo == 0.0 { step * 1e-9 } else { lo };
    let mut f_a = p.eval(a);
    for k in 1..=cells {
        let b = lo + step * k as f64;
        let f_b = p.eval(b);
        if f_a == 0.0 || f_b == 0.0 || f_a.signum() != f_b.signum() {
            return Some((a, b));
        }
        a = b;
        f_a = f_b;
    }
    None
}
