//! Self-check suites: oracle equivalence, mass identities, critical-point
//! residuals, continuity at branch points and finite-size convergence.
//!
//! Every check reports pass or fail with a short detail line. An error inside
//! one check marks only that check as failed.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, Pow};

use crate::acsv::{self, Direction, NewtonOptions, SparseMultivariatePolynomial};
use crate::count::{Count, Log2Count};
use crate::numeric::{binomial_exact, entropy, log2_big};
use crate::report::format_g_with;
use crate::sticky::{self, pairs as sticky_pairs, StickyParams};
use crate::synthesis::{self, pairs as synthesis_pairs, PairModel};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    All,
    Sticky,
    Synthesis,
    Acsv,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Suite::All),
            "sticky" => Ok(Suite::Sticky),
            "synthesis" => Ok(Suite::Synthesis),
            "acsv" => Ok(Suite::Acsv),
            _ => Err(Error::InvalidSpec(format!("unknown suite `{s}`"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::All => "all",
            Suite::Sticky => "sticky",
            Suite::Synthesis => "synthesis",
            Suite::Acsv => "acsv",
        })
    }
}

/// Sizes and tolerance shared by the checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    /// Largest word length for the exact tables; enumeration oracles are capped lower.
    pub n_budget: usize,
    /// Residual and continuity tolerance.
    pub tolerance: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_budget: 8,
            tolerance: 1e-9,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub suite: Suite,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

type Check = fn(&VerifyConfig) -> Result<(bool, String)>;

fn checks(suite: Suite) -> Vec<(&'static str, Check)> {
    match suite {
        Suite::Acsv => vec![
            ("binomial-direction oracle", acsv_binomial_oracle as Check),
            ("sticky cross-solver", acsv_sticky_cross_solver),
            ("synthesis cross-solver", acsv_synthesis_cross_solver),
        ],
        Suite::Sticky => vec![
            ("L1 confusability vs enumeration", sticky_confusability),
            ("pair DP vs enumeration", sticky_oracle),
            ("pair mass identity", sticky_mass),
            ("closed-form residuals", sticky_residuals),
            ("explicit vs critical-point exponent", sticky_dual_route),
            ("knee continuity and stationarity", sticky_knee),
            ("GV optimizer agreement", sticky_gv_argmax),
            ("bound ordering LB <= GV <= SP", sticky_ordering),
            ("finite-n rate convergence", sticky_convergence),
        ],
        Suite::Synthesis => vec![
            ("synthesis time vs supersequence", synthesis_time_check),
            ("pair DP vs enumeration", synthesis_oracle),
            ("pair mass identity", synthesis_pair_mass),
            ("word mass identity", synthesis_word_mass),
            ("capacity anchors", synthesis_capacity),
            ("critical-point residuals", synthesis_residuals),
            ("branch continuity", synthesis_continuity),
            ("bound ordering LB <= GV", synthesis_ordering),
            ("finite-n ball below exponent", synthesis_convergence),
        ],
        Suite::All => [Suite::Acsv, Suite::Sticky, Suite::Synthesis]
            .into_iter()
            .flat_map(checks)
            .collect(),
    }
}

fn suite_of(suite: Suite, index: usize) -> Suite {
    if suite != Suite::All {
        return suite;
    }
    let acsv = checks(Suite::Acsv).len();
    let sticky = checks(Suite::Sticky).len();
    if index < acsv {
        Suite::Acsv
    } else if index < acsv + sticky {
        Suite::Sticky
    } else {
        Suite::Synthesis
    }
}

/// Runs every check of a suite in order.
pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Vec<CheckOutcome> {
    checks(suite)
        .into_iter()
        .enumerate()
        .map(|(i, (name, check))| {
            let start = Instant::now();
            let (passed, detail) = match check(config) {
                Ok(result) => result,
                Err(e) => (false, format!("error: {e}")),
            };
            CheckOutcome {
                suite: suite_of(suite, i),
                name,
                passed,
                detail,
                elapsed: start.elapsed(),
            }
        })
        .collect()
}

/// Plain-text pass/fail table.
pub fn render_report(outcomes: &[CheckOutcome]) -> String {
    let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for o in outcomes {
        out.push_str(&format!(
            "{:<4} {:<9} {:<width$}  {:>8.2}s  {}\n",
            if o.passed { "PASS" } else { "FAIL" },
            o.suite.to_string(),
            o.name,
            o.elapsed.as_secs_f64(),
            o.detail,
        ));
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    out.push_str(&format!(
        "{} checks, {} passed, {} failed\n",
        outcomes.len(),
        outcomes.len() - failed,
        failed
    ));
    out
}

fn g(v: f64) -> String {
    format_g_with(v, 4)
}

/// `0.10, 0.15, ..., 0.45`.
fn quarter_grid() -> Vec<f64> {
    (0..8).map(|k| 0.1 + 0.05 * k as f64).collect()
}

fn acsv_binomial_oracle(config: &VerifyConfig) -> Result<(bool, String)> {
    // [x^a y^b] 1/(1 - x - y) = C(a + b, a), rate (a + b) H(a / (a + b)).
    let h = &SparseMultivariatePolynomial::constant(2, 1.0)
        - &(&SparseMultivariatePolynomial::variable(2, 0)
            + &SparseMultivariatePolynomial::variable(2, 1));
    let mut worst = 0.0f64;
    for (a, b) in [(1.0, 1.0), (1.0, 3.0), (2.0, 0.5), (0.3, 0.7), (5.0, 1.0)] {
        let cp = acsv::solve_critical_point(
            &h,
            &Direction::new(vec![a, b])?,
            &acsv::default_initial(2),
            NewtonOptions::default(),
        )?;
        let expected = (a + b) * entropy(a / (a + b))?;
        worst = worst.max((acsv::growth_exponent(&cp) - expected).abs());
    }
    Ok((worst <= config.tolerance, format!("max error {}", g(worst))))
}

fn acsv_sticky_cross_solver(_: &VerifyConfig) -> Result<(bool, String)> {
    let h = sticky::pair_denominator();
    let mut worst = 0.0f64;
    for (rho, beta) in [(0.3, 0.1), (0.5, 0.125), (0.2, 0.3)] {
        let p = StickyParams::new(rho, beta)?;
        let closed = sticky::critical_point_closed_form(&p)?;
        let start: Vec<f64> = closed.coordinates().iter().map(|c| c * 1.01).collect();
        let cp = acsv::solve_critical_point(
            &h,
            &sticky::pair_direction(&p)?,
            &start,
            // Residuals bottom out near 1e-12 in double precision for this denominator.
            NewtonOptions {
                tolerance: 1e-10,
                ..NewtonOptions::default()
            },
        )?;
        for (a, b) in cp.z.iter().zip(closed.coordinates()) {
            worst = worst.max((a - b).abs());
        }
    }
    Ok((worst <= 1e-8, format!("max coordinate gap {}", g(worst))))
}

fn acsv_synthesis_cross_solver(_: &VerifyConfig) -> Result<(bool, String)> {
    let h = synthesis::pair_denominator();
    let mut worst = 0.0f64;
    for (tau, delta) in [(2.0, 0.1), (1.5, 0.3), (2.25, 0.5)] {
        let p = synthesis::SynthesisParams::new(tau, delta)?;
        let closed = synthesis::critical_point(tau, delta)?;
        let exact = [closed.x_hat, closed.y_hat, closed.z_hat];
        let start: Vec<f64> = exact.iter().map(|c| c * 0.95).collect();
        let cp = acsv::solve_critical_point(
            &h,
            &synthesis::pair_direction(&p)?,
            &start,
            NewtonOptions::default(),
        )?;
        for (a, b) in cp.z.iter().zip(exact) {
            worst = worst.max((a - b).abs());
        }
    }
    Ok((worst <= 1e-8, format!("max coordinate gap {}", g(worst))))
}

fn sticky_confusability(config: &VerifyConfig) -> Result<(bool, String)> {
    let n_max = config.n_budget.min(7) as u32;
    let mut compared = 0usize;
    for n in 1..=n_max {
        for r in 1..=n as usize {
            let space = sticky::compositions(n, r);
            for u in &space {
                for v in &space {
                    for b in 0..=2 {
                        if sticky::is_confusable(u, v, b)?
                            != sticky::confusable_bruteforce(u, v, b)?
                        {
                            return Ok((false, format!("mismatch at {u:?} {v:?} b={b}")));
                        }
                        compared += 1;
                    }
                }
            }
        }
    }
    Ok((true, format!("{compared} triples, n <= {n_max}")))
}

fn sticky_oracle(config: &VerifyConfig) -> Result<(bool, String)> {
    let n_max = config.n_budget.min(8);
    let s_max = 2 * n_max;
    let table = sticky_pairs::PairCountTable::<BigUint>::build(
        n_max,
        n_max,
        n_max,
        s_max,
        sticky_pairs::DEFAULT_ENTRY_BUDGET,
    )?;
    let mut compared = 0usize;
    for n1 in 0..=n_max {
        for n2 in 0..=n_max {
            for r in 0..=n_max {
                for s in 0..=s_max {
                    let dp = table
                        .get(n1 as i64, n2 as i64, r as i64, s as i64)
                        .expect("inside table");
                    let bf =
                        sticky_pairs::count_pairs_bruteforce(n1 as u32, n2 as u32, r, s as u64)?;
                    if dp != bf {
                        return Ok((false, format!("N({n1},{n2},{r},{s}): {dp} vs {bf}")));
                    }
                    compared += 1;
                }
            }
        }
    }
    Ok((true, format!("{compared} entries, n1, n2 <= {n_max}")))
}

/// `sum_s N(n, n, r, s) = C(n - 1, r - 1)^2` for every `n <= n_max`, `1 <= r <= n`.
pub fn sticky_mass_identity(n_max: usize) -> Result<(bool, String)> {
    let s_max = 2 * n_max.saturating_sub(1);
    let mut walk = sticky_pairs::Layers::<BigUint>::new(
        n_max,
        n_max,
        s_max,
        sticky_pairs::DEFAULT_ENTRY_BUDGET,
    )?;
    let mut compared = 0usize;
    for r in 1..=n_max {
        let slab = walk.advance();
        for n in r..=n_max {
            let total: BigUint = (0..=s_max)
                .filter_map(|s| slab.get(n, n, s))
                .fold(BigUint::default(), |acc, v| acc + v);
            let c = binomial_exact(n as i64 - 1, r as i64 - 1)?;
            if total != &c * &c {
                return Ok((false, format!("n={n} r={r}: {total} vs {}", &c * &c)));
            }
            compared += 1;
        }
    }
    Ok((true, format!("{compared} (n, r) pairs, n <= {n_max}")))
}

fn sticky_mass(config: &VerifyConfig) -> Result<(bool, String)> {
    sticky_mass_identity(config.n_budget)
}

/// Grid of `(rho, beta)` inside the closed form's domain.
fn sticky_grid() -> Vec<StickyParams> {
    let mut grid = Vec::new();
    for &rho in &quarter_grid() {
        for &beta in &quarter_grid() {
            if 2.0 - 2.0 * beta - 2.0 * rho > 0.0 {
                grid.push(StickyParams::new(rho, beta).expect("grid inside domain"));
            }
        }
    }
    grid
}

fn sticky_residuals(config: &VerifyConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    let grid = sticky_grid();
    for p in &grid {
        worst = worst.max(sticky::critical_point_closed_form(p)?.max_residual());
    }
    Ok((
        worst <= config.tolerance,
        format!("{} points, max residual {}", grid.len(), g(worst)),
    ))
}

fn sticky_dual_route(config: &VerifyConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    let grid = sticky_grid();
    for p in &grid {
        let cp = sticky::critical_point_closed_form(p)?;
        let gap = (sticky::ball_rate_formula(p.rho(), p.beta()) - cp.exponent(p)).abs();
        worst = worst.max(gap);
    }
    Ok((
        worst <= config.tolerance,
        format!("{} points, max gap {}", grid.len(), g(worst)),
    ))
}

fn sticky_knee(_: &VerifyConfig) -> Result<(bool, String)> {
    let (mut jump, mut slope) = (0.0f64, 0.0f64);
    for &rho in &quarter_grid() {
        let bm = sticky::beta_max(rho)?;
        let eps = 1e-7;
        let below = sticky::ball_rate(&StickyParams::new(rho, bm - eps)?).value;
        let above = sticky::ball_rate(&StickyParams::new(rho, bm + eps)?).value;
        jump = jump.max((below - above).abs());
        let h = 1e-6;
        let d = (sticky::ball_rate_formula(rho, bm + h) - sticky::ball_rate_formula(rho, bm - h))
            / (2.0 * h);
        slope = slope.max(d.abs());
    }
    Ok((
        jump <= 1e-6 && slope <= 1e-5,
        format!("max jump {}, max slope {}", g(jump), g(slope)),
    ))
}

fn sticky_gv_argmax(_: &VerifyConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for k in 1..=9 {
        let beta = 0.05 * k as f64;
        let best = sticky::gv_rate(beta)?;
        worst = worst.max((best.numeric.1 - best.closed_form.1).abs());
    }
    let at_zero = sticky::gv_rate(0.0)?;
    let rho_gap = (at_zero.numeric.0 - 0.5).abs();
    Ok((
        worst <= 1e-6 && rho_gap <= 1e-6,
        format!(
            "max rate gap {}, argmax at beta=0 off by {}",
            g(worst),
            g(rho_gap)
        ),
    ))
}

fn sticky_ordering(_: &VerifyConfig) -> Result<(bool, String)> {
    for k in 0..=49 {
        let beta = 0.01 * k as f64;
        let lb = sticky::simple_lb_rate(beta)?.value;
        let gv = sticky::gv_rate(beta)?.rate;
        let sp = sticky::sp_rate(beta)?;
        if !(lb <= gv && gv <= sp && gv > 0.0) {
            return Ok((false, format!("beta={beta}: lb={lb} gv={gv} sp={sp}")));
        }
    }
    Ok((true, "50 grid points on [0, 0.49]".into()))
}

/// `|log2 N(n, n, rho n, delta n) / n - T(rho, delta)|` for each `n`.
pub fn sticky_convergence_gaps(rho: f64, delta: f64, ns: &[usize]) -> Result<Vec<f64>> {
    let p = StickyParams::from_delta(rho, delta)?;
    let target = sticky::ball_rate(&p).value;
    ns.iter()
        .map(|&n| {
            let r = (rho * n as f64).floor() as i64;
            let s = (delta * n as f64).floor() as i64;
            let v = sticky_pairs::count_pairs_exact(
                n as i64,
                n as i64,
                r,
                s,
                crate::count::CountMode::Log2,
            )?;
            Ok((v.log2() / n as f64 - target).abs())
        })
        .collect()
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

/// Sizes of the finite-n convergence check.
pub const STICKY_CONVERGENCE_NS: [usize; 5] = [16, 24, 32, 40, 48];

fn sticky_convergence(_: &VerifyConfig) -> Result<(bool, String)> {
    let ns = STICKY_CONVERGENCE_NS;
    let gaps = sticky_convergence_gaps(0.5, 0.25, &ns)?;
    let last = *gaps.last().expect("five sizes");
    let text: Vec<String> = ns
        .iter()
        .zip(&gaps)
        .map(|(n, e)| format!("{n}:{}", g(*e)))
        .collect();
    // Four-variable coefficients carry an n^(-3/2) factor; what remains after it is O(1/n).
    let rest: Vec<String> = ns
        .iter()
        .zip(&gaps)
        .map(|(&n, e)| g(e - 1.5 * (n as f64).log2() / n as f64))
        .collect();
    Ok((
        strictly_decreasing(&gaps) && last <= 0.1,
        format!(
            "gaps {} (minus 1.5 log2(n)/n: {})",
            text.join(" "),
            rest.join(" ")
        ),
    ))
}

fn synthesis_time_check(config: &VerifyConfig) -> Result<(bool, String)> {
    let n_max = config.n_budget.min(6);
    let mut checked = 0usize;
    for n in 1..=n_max {
        for w in synthesis::all_strands(n) {
            let t = synthesis::synthesis_time(&w)? as usize;
            let ok = n <= t
                && t <= 4 * n
                && synthesis::producible_within(&w, t)
                && !synthesis::producible_within(&w, t - 1);
            if !ok {
                return Ok((false, format!("{w}: time {t}")));
            }
            checked += 1;
        }
    }
    Ok((true, format!("{checked} strands, n <= {n_max}")))
}

fn synthesis_oracle(config: &VerifyConfig) -> Result<(bool, String)> {
    let n_max = config.n_budget.min(5);
    let mut compared = 0usize;
    for n in 0..=n_max {
        let buckets = synthesis_pairs::pair_buckets_bruteforce(n, PairModel::Strand)?;
        let layer = synthesis_pairs::pair_layer::<BigUint>(
            n,
            PairModel::Strand,
            synthesis_pairs::DEFAULT_ENTRY_BUDGET,
        )?;
        for t in 0..=8 * n {
            for s in 0..=n {
                let bf = buckets.get(&(t as u64, s)).cloned().unwrap_or_default();
                let dp = layer.get(t, s);
                if bf != dp {
                    return Ok((false, format!("N({n},{t},{s}): {dp} vs {bf}")));
                }
                compared += 1;
            }
        }
    }
    Ok((true, format!("{compared} buckets, n <= {n_max}")))
}

/// `sum_{t, s} N(n, t, s) = 16^n` for every `n <= n_max`, both pair models.
pub fn synthesis_pair_mass_identity(n_max: usize) -> Result<(bool, String)> {
    for model in [PairModel::Strand, PairModel::CostSequence] {
        let mut layer = synthesis_pairs::PairLayer::<BigUint>::base(model);
        for n in 0..=n_max {
            if n > 0 {
                layer = layer.next();
            }
            let total = layer.total();
            if total != BigUint::from(16u32).pow(n as u32) {
                return Ok((false, format!("{model:?} n={n}: {total}")));
            }
        }
    }
    Ok((true, format!("n <= {n_max}, both pair models")))
}

fn synthesis_pair_mass(config: &VerifyConfig) -> Result<(bool, String)> {
    synthesis_pair_mass_identity((config.n_budget * 5 / 2).min(20))
}

fn synthesis_word_mass(_: &VerifyConfig) -> Result<(bool, String)> {
    for n in 0..=30usize {
        let total = crate::count::sum(&synthesis::count_words_by_time::<BigUint>(n));
        if total != BigUint::from(4u32).pow(n as u32) {
            return Ok((false, format!("n={n}: {total}")));
        }
    }
    Ok((true, "n <= 30".into()))
}

/// `log2 |S(n, <= tau n)| / n`.
pub fn empirical_capacity(tau: f64, n: usize) -> f64 {
    let count = synthesis::count_words_exact(n, (tau * n as f64).floor() as usize);
    log2_big(&count) / n as f64
}

fn synthesis_capacity(config: &VerifyConfig) -> Result<(bool, String)> {
    let at_boundary = (synthesis::capacity(2.5)? - 2.0).abs();
    let (x, y) = synthesis::capacity_point(2.5 - 1e-13)?;
    let n = 100;
    let gap = (empirical_capacity(2.0, n) - synthesis::capacity(2.0)?).abs();
    Ok((
        at_boundary <= config.tolerance
            && (y - 1.0).abs() <= 1e-9
            && (x - 0.25).abs() <= 1e-9
            && gap <= 0.1,
        format!(
            "Cap(5/2) error {}, Cap(2) vs n={n} count gap {}",
            g(at_boundary),
            g(gap)
        ),
    ))
}

/// `(tau, delta)` grid: `tau in {1.5, 2}`, `delta = 0.05, 0.10, ...` below `delta_max`.
pub fn synthesis_grid() -> Result<Vec<(f64, f64)>> {
    let mut grid = Vec::new();
    for tau in [1.5, 2.0] {
        let (dm, _) = synthesis::delta_max(tau)?;
        let mut k = 1;
        while 0.05 * k as f64 <= dm {
            grid.push((tau, 0.05 * k as f64));
            k += 1;
        }
        grid.push((tau, dm));
    }
    Ok(grid)
}

fn synthesis_residuals(config: &VerifyConfig) -> Result<(bool, String)> {
    let grid = synthesis_grid()?;
    let mut worst = 0.0f64;
    for &(tau, delta) in &grid {
        worst = worst.max(synthesis::critical_point(tau, delta)?.max_residual());
    }
    Ok((
        worst <= config.tolerance,
        format!("{} points, max residual {}", grid.len(), g(worst)),
    ))
}

fn synthesis_continuity(_: &VerifyConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for tau in [1.5, 1.75, 2.0, 2.25] {
        let (dm, _) = synthesis::delta_max(tau)?;
        let below = synthesis::ball_rate_upper(tau, dm - 1e-9)?.value;
        let at = synthesis::ball_rate_upper(tau, dm)?.value;
        worst = worst.max((below - at).abs());
    }
    for tau in [2.5, 3.0] {
        let below = synthesis::ball_rate_upper(tau, 0.75 - 1e-9)?.value;
        let above = synthesis::ball_rate_upper(tau, 0.75 + 1e-9)?.value;
        worst = worst.max((below - above).abs());
    }
    Ok((worst <= 1e-6, format!("max jump {}", g(worst))))
}

fn synthesis_ordering(_: &VerifyConfig) -> Result<(bool, String)> {
    for tau in [1.5, 2.0] {
        let (dm, _) = synthesis::delta_max(tau)?;
        for k in 0..=100 {
            let delta = k as f64 / 100.0;
            let lb = synthesis::simple_lb_rate(tau, delta)?.value;
            let gv = synthesis::gv_rate(tau, delta)?.value;
            if lb > gv || (delta >= dm && gv != 0.0) {
                return Ok((false, format!("tau={tau} delta={delta}: lb={lb} gv={gv}")));
            }
        }
    }
    Ok((true, "tau in {1.5, 2}, 101 radii each".into()))
}

/// `log2(ball) / n` for both pair models, with `t <= 2 tau n` and `s <= delta n`.
pub fn synthesis_ball_rates(tau: f64, delta: f64, n: usize) -> Result<(f64, f64)> {
    let t = (2.0 * tau * n as f64).floor() as usize;
    let s = (delta * n as f64).floor() as usize;
    let rate = |model| -> Result<f64> {
        let layer = synthesis_pairs::pair_layer::<Log2Count>(
            n,
            model,
            synthesis_pairs::DEFAULT_ENTRY_BUDGET,
        )?;
        Ok(layer.ball(t, s).log2() / n as f64)
    };
    Ok((rate(PairModel::Strand)?, rate(PairModel::CostSequence)?))
}

/// Sizes of the synthesis finite-n check.
pub const SYNTHESIS_CONVERGENCE_NS: [usize; 5] = [20, 40, 60, 80, 100];

fn synthesis_convergence(_: &VerifyConfig) -> Result<(bool, String)> {
    let (tau, delta) = (2.0, 0.3);
    let target = synthesis::ball_rate_upper(tau, delta)?.value;
    let ns = SYNTHESIS_CONVERGENCE_NS;
    let mut cost_gaps = Vec::new();
    let mut below = true;
    for &n in &ns {
        let (strand, cost) = synthesis_ball_rates(tau, delta, n)?;
        below &= strand <= target && cost <= target;
        cost_gaps.push(target - cost);
    }
    let text: Vec<String> = ns
        .iter()
        .zip(&cost_gaps)
        .map(|(n, e)| format!("{n}:{}", g(*e)))
        .collect();
    Ok((
        below && strictly_decreasing(&cost_gaps),
        format!(
            "tau=2 delta=0.3, exponent minus cost-model rate {}",
            text.join(" ")
        ),
    ))
}

/// Exact `C(n - 1, r - 1)` as used by the mass identity, exposed for callers that print it.
pub fn composition_count(n: usize, r: usize) -> BigUint {
    if r == 0 {
        return if n == 0 {
            <BigUint as One>::one()
        } else {
            BigUint::default()
        };
    }
    binomial_exact(n as i64 - 1, r as i64 - 1).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names() {
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert_eq!("acsv".parse::<Suite>().unwrap(), Suite::Acsv);
        assert!("nope".parse::<Suite>().is_err());
        assert_eq!(Suite::Synthesis.to_string(), "synthesis");
    }

    #[test]
    fn acsv_suite_passes() {
        let out = run_suite(Suite::Acsv, &VerifyConfig::default());
        assert!(out.iter().all(|o| o.passed), "{}", render_report(&out));
        assert!(render_report(&out).contains("3 checks, 3 passed, 0 failed"));
    }

    #[test]
    fn small_mass_identities() {
        assert!(sticky_mass_identity(12).unwrap().0);
        assert!(synthesis_pair_mass_identity(8).unwrap().0);
        assert_eq!(composition_count(5, 2), BigUint::from(4u32));
        assert_eq!(composition_count(0, 0), BigUint::from(1u32));
        assert_eq!(composition_count(3, 0), BigUint::default());
    }

    #[test]
    fn errors_fail_one_check_only() {
        let outcomes = run_suite(
            Suite::Sticky,
            &VerifyConfig {
                n_budget: 0,
                tolerance: 1e-9,
            },
        );
        assert_eq!(outcomes.len(), checks(Suite::Sticky).len());
    }

    #[test]
    fn suites_are_labelled_in_all() {
        let names = checks(Suite::All);
        assert_eq!(suite_of(Suite::All, 0), Suite::Acsv);
        assert_eq!(suite_of(Suite::All, names.len() - 1), Suite::Synthesis);
    }
}
