use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::numeric::entropy;
use crate::rate::Rate;
use crate::{sticky, synthesis, Error, Result};

/// Grids larger than this are evaluated in parallel.
pub const PARALLEL_THRESHOLD: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channel {
    Sticky,
    Synthesis,
}

impl Channel {
    /// Name of the swept parameter.
    pub fn sweep_param(self) -> &'static str {
        match self {
            Channel::Sticky => "beta",
            Channel::Synthesis => "delta",
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Channel::Sticky => "sticky",
            Channel::Synthesis => "synthesis",
        })
    }
}

impl FromStr for Channel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sticky" => Ok(Channel::Sticky),
            "synthesis" => Ok(Channel::Synthesis),
            _ => Err(Error::InvalidSpec(format!("unknown channel `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bound {
    Gv,
    Sp,
    Lb,
    Capacity,
}

impl Bound {
    pub fn label(self) -> &'static str {
        match self {
            Bound::Gv => "gv",
            Bound::Sp => "sp",
            Bound::Lb => "lb",
            Bound::Capacity => "capacity",
        }
    }
}

impl FromStr for Bound {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gv" => Ok(Bound::Gv),
            "sp" => Ok(Bound::Sp),
            "lb" => Ok(Bound::Lb),
            "capacity" => Ok(Bound::Capacity),
            _ => Err(Error::InvalidSpec(format!("unknown bound `{s}`"))),
        }
    }
}

/// Comma-separated bound list, e.g. `gv,sp,lb`.
pub fn parse_bounds(text: &str) -> Result<Vec<Bound>> {
    let mut bounds = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let b: Bound = part.parse()?;
        if !bounds.contains(&b) {
            bounds.push(b);
        }
    }
    if bounds.is_empty() {
        return Err(Error::InvalidSpec("no bounds requested".into()));
    }
    Ok(bounds)
}

/// Uniform grid `lo..=hi` with `steps` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl Sweep {
    pub fn new(lo: f64, hi: f64, steps: usize) -> Result<Self> {
        if steps < 2 {
            return Err(Error::InvalidSpec(format!(
                "a sweep needs at least 2 steps, got {steps}"
            )));
        }
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::InvalidSpec(format!(
                "sweep range {lo}:{hi} must be finite with lo <= hi"
            )));
        }
        Ok(Sweep { lo, hi, steps })
    }

    pub fn points(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| {
                if k + 1 == self.steps {
                    self.hi
                } else {
                    self.lo + (self.hi - self.lo) * k as f64 / last
                }
            })
            .collect()
    }
}

impl FromStr for Sweep {
    type Err = Error;

    /// `lo:hi:steps`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::InvalidSpec(format!("expected lo:hi:steps, got `{s}`"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let steps: usize = parts[2].trim().parse().map_err(|_| bad())?;
        Sweep::new(lo, hi, steps)
    }
}

/// What to compute: one channel, some bounds, fixed parameters and a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSpec {
    pub channel: Channel,
    pub bounds: Vec<Bound>,
    /// Sticky only: evaluate GV at this run density instead of optimizing over it.
    pub rho: Option<f64>,
    /// Synthesis only: cycle budget per symbol.
    pub tau: Option<f64>,
    pub sweep: Sweep,
}

impl CurveSpec {
    pub fn validate(&self) -> Result<()> {
        if self.bounds.is_empty() {
            return Err(Error::InvalidSpec("no bounds requested".into()));
        }
        if self.sweep.steps < 2 {
            return Err(Error::InvalidSpec("a sweep needs at least 2 steps".into()));
        }
        if self.sweep.lo < 0.0 {
            return Err(Error::domain(
                self.channel.sweep_param(),
                self.sweep.lo,
                "sweep must start at a non-negative value",
            ));
        }
        match self.channel {
            Channel::Sticky => {
                if self.tau.is_some() {
                    return Err(Error::InvalidSpec(
                        "--tau applies to the synthesis channel".into(),
                    ));
                }
                if let Some(rho) = self.rho {
                    sticky::StickyParams::new(rho, 0.0)?;
                }
            }
            Channel::Synthesis => {
                let tau = self.tau.ok_or_else(|| {
                    Error::InvalidSpec("the synthesis channel needs --tau".into())
                })?;
                synthesis::SynthesisParams::new(tau, 0.0)?;
                if self.rho.is_some() {
                    return Err(Error::InvalidSpec(
                        "--rho applies to the sticky channel".into(),
                    ));
                }
                if self.bounds.contains(&Bound::Sp) {
                    return Err(Error::InvalidSpec(
                        "no sphere-packing bound is available for the synthesis channel".into(),
                    ));
                }
                if self.sweep.hi > 1.0 {
                    return Err(Error::domain("delta", self.sweep.hi, "must lie in [0, 1]"));
                }
            }
        }
        Ok(())
    }

    /// One bound at one sweep value.
    pub fn evaluate(&self, bound: Bound, x: f64) -> Result<Rate> {
        match self.channel {
            Channel::Sticky => evaluate_sticky(bound, self.rho, x),
            Channel::Synthesis => {
                let tau = self.tau.expect("validated");
                evaluate_synthesis(bound, tau, x)
            }
        }
    }
}

fn evaluate_sticky(bound: Bound, rho: Option<f64>, beta: f64) -> Result<Rate> {
    match bound {
        Bound::Gv => {
            let (rho, value) = match rho {
                Some(rho) => (rho, sticky::gv_objective(rho, beta)?),
                None => {
                    let best = sticky::gv_rate(beta)?;
                    (best.rho, best.rate)
                }
            };
            let ball = sticky::ball_rate(&sticky::StickyParams::new(rho, beta)?);
            Ok(Rate {
                value,
                flags: ball.flags,
            }
            .floored())
        }
        Bound::Sp => Ok(Rate::plain(sticky::sp_rate(beta)?)),
        Bound::Lb => sticky::simple_lb_rate(beta),
        Bound::Capacity => {
            if !(beta >= 0.0) {
                return Err(Error::domain("beta", beta, "must be non-negative"));
            }
            Ok(Rate::plain(match rho {
                Some(rho) => sticky::capacity_runs(rho)?,
                None => entropy(0.5)?,
            }))
        }
    }
}

fn evaluate_synthesis(bound: Bound, tau: f64, delta: f64) -> Result<Rate> {
    match bound {
        Bound::Gv => synthesis::gv_rate(tau, delta),
        Bound::Lb => synthesis::simple_lb_rate(tau, delta),
        Bound::Capacity => {
            synthesis::SynthesisParams::new(tau, delta)?;
            Ok(Rate::plain(synthesis::capacity(tau)?))
        }
        Bound::Sp => Err(Error::InvalidSpec(
            "no sphere-packing bound is available for the synthesis channel".into(),
        )),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub x: f64,
    pub rate: Rate,
}

/// One bound along the sweep, sorted by `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct RateCurve {
    pub label: String,
    pub points: Vec<CurvePoint>,
}

/// Evaluates every requested bound on the sweep grid.
///
/// Grids above [`PARALLEL_THRESHOLD`] points are spread over the rayon pool;
/// results are collected in grid order either way.
pub fn build_curves(spec: &CurveSpec) -> Result<Vec<RateCurve>> {
    spec.validate()?;
    let xs = spec.sweep.points();
    let row = |&x: &f64| -> Result<Vec<Rate>> {
        spec.bounds.iter().map(|&b| spec.evaluate(b, x)).collect()
    };
    let rows: Vec<Vec<Rate>> = if xs.len() > PARALLEL_THRESHOLD {
        xs.par_iter().map(row).collect::<Result<_>>()?
    } else {
        xs.iter().map(row).collect::<Result<_>>()?
    };
    Ok(spec
        .bounds
        .iter()
        .enumerate()
        .map(|(i, b)| RateCurve {
            label: b.label().to_string(),
            points: xs
                .iter()
                .zip(&rows)
                .map(|(&x, r)| CurvePoint {
                    x,
                    rate: r[i].clone(),
                })
                .collect(),
        })
        .collect())
}
