//! C ABI over `gvbound`.
//!
//! Every function returns a [`GvbStatus`] and writes results through out-pointers.
//! Tables are opaque handles created by `*_new` and released by `*_free`.
//! Panics are caught at the boundary and reported as [`GvbStatus::Internal`].

#![allow(clippy::missing_safety_doc)]

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigUint;

use gvbound::count::{Count, Log2Count};
use gvbound::rate::{Flag, Flags, Rate};
use gvbound::sticky::{self, pairs::PairCountTable, StickyParams};
use gvbound::synthesis::{self, pairs::PairLayer, PairModel};
use gvbound::Error;

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GvbStatus {
    Ok = 0,
    NullPointer = 1,
    /// A parameter lies outside the domain of the routine.
    Domain = 2,
    /// Requested table exceeds the size or memory budget.
    SizeLimit = 3,
    /// Root finding or Newton iteration failed.
    NoConvergence = 4,
    InvalidArgument = 5,
    /// Output buffer too small; the required size was written.
    BufferTooSmall = 6,
    Internal = 7,
}

/// Storage of a pair-count table.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GvbCountMode {
    Exact = 0,
    Log2 = 1,
}

/// Which pairs the synthesis table counts.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GvbPairModel {
    Strand = 0,
    CostSequence = 1,
}

pub const GVB_FLAG_SATURATED: u32 = 1;
pub const GVB_FLAG_FLOORED: u32 = 2;
pub const GVB_FLAG_UPPER_BOUND: u32 = 4;
pub const GVB_FLAG_BOUNDARY: u32 = 8;
pub const GVB_FLAG_DIAGONAL: u32 = 16;

/// A rate and the bitwise OR of its `GVB_FLAG_*` bits.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GvbRate {
    pub value: f64,
    pub flags: u32,
}

fn flag_bits(flags: &Flags) -> u32 {
    flags
        .iter()
        .map(|f| match f {
            Flag::Saturated => GVB_FLAG_SATURATED,
            Flag::Floored => GVB_FLAG_FLOORED,
            Flag::UpperBound => GVB_FLAG_UPPER_BOUND,
            Flag::Boundary => GVB_FLAG_BOUNDARY,
            Flag::Diagonal => GVB_FLAG_DIAGONAL,
        })
        .fold(0, |a, b| a | b)
}

fn status_of(e: &Error) -> GvbStatus {
    match e {
        Error::Domain { .. } => GvbStatus::Domain,
        Error::SizeLimit { .. } | Error::MemoryBudget { .. } => GvbStatus::SizeLimit,
        Error::NoSignChange { .. } | Error::NoRootFound { .. } | Error::NonConvergence { .. } => {
            GvbStatus::NoConvergence
        }
        Error::DimensionMismatch { .. }
        | Error::InvalidSymbol(_)
        | Error::EmptyStrand
        | Error::InvalidComposition
        | Error::InvalidSpec(_) => GvbStatus::InvalidArgument,
        Error::Io(_) => GvbStatus::Internal,
    }
}

/// Runs `f`, maps errors and panics to status codes and stores the value.
unsafe fn guard<T>(out: *mut T, f: impl FnOnce() -> gvbound::Result<T>) -> GvbStatus {
    if out.is_null() {
        return GvbStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => {
            out.write(v);
            GvbStatus::Ok
        }
        Ok(Err(e)) => status_of(&e),
        Err(_) => GvbStatus::Internal,
    }
}

unsafe fn rate_out(out: *mut GvbRate, f: impl FnOnce() -> gvbound::Result<Rate>) -> GvbStatus {
    guard(out, || {
        f().map(|r| GvbRate {
            value: r.value,
            flags: flag_bits(&r.flags),
        })
    })
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn gvb_status_message(status: GvbStatus) -> *const c_char {
    let text: &'static CStr = match status {
        GvbStatus::Ok => c"ok",
        GvbStatus::NullPointer => c"null pointer argument",
        GvbStatus::Domain => c"parameter out of range",
        GvbStatus::SizeLimit => c"table exceeds size or memory budget",
        GvbStatus::NoConvergence => c"numerical iteration did not converge",
        GvbStatus::InvalidArgument => c"invalid argument",
        GvbStatus::BufferTooSmall => c"output buffer too small",
        GvbStatus::Internal => c"internal error",
    };
    text.as_ptr()
}

/// Sticky ball exponent at run density `rho` and insertion fraction `beta`.
#[no_mangle]
pub unsafe extern "C" fn gvb_sticky_ball_rate(rho: f64, beta: f64, out: *mut GvbRate) -> GvbStatus {
    rate_out(out, || {
        Ok(sticky::ball_rate(&StickyParams::new(rho, beta)?))
    })
}

/// Sticky GV rate optimized over the run density; the maximizer goes to `out_rho` when non-null.
#[no_mangle]
pub unsafe extern "C" fn gvb_sticky_gv_rate(
    beta: f64,
    out: *mut GvbRate,
    out_rho: *mut f64,
) -> GvbStatus {
    rate_out(out, || {
        let best = sticky::gv_rate(beta)?;
        let ball = sticky::ball_rate(&StickyParams::new(best.rho, beta)?);
        if !out_rho.is_null() {
            out_rho.write(best.rho);
        }
        Ok(Rate {
            value: best.rate,
            flags: ball.flags,
        }
        .floored())
    })
}

/// Sticky GV rate at a fixed run density.
#[no_mangle]
pub unsafe extern "C" fn gvb_sticky_gv_rate_at(
    rho: f64,
    beta: f64,
    out: *mut GvbRate,
) -> GvbStatus {
    rate_out(out, || {
        let ball = sticky::ball_rate(&StickyParams::new(rho, beta)?);
        Ok(Rate {
            value: sticky::gv_objective(rho, beta)?,
            flags: ball.flags,
        }
        .floored())
    })
}

#[no_mangle]
pub unsafe extern "C" fn gvb_sticky_sp_rate(beta: f64, out: *mut GvbRate) -> GvbStatus {
    rate_out(out, || Ok(Rate::plain(sticky::sp_rate(beta)?)))
}

#[no_mangle]
pub unsafe extern "C" fn gvb_sticky_lb_rate(beta: f64, out: *mut GvbRate) -> GvbStatus {
    rate_out(out, || sticky::simple_lb_rate(beta))
}

#[no_mangle]
pub unsafe extern "C" fn gvb_sticky_beta_max(rho: f64, out: *mut f64) -> GvbStatus {
    guard(out, || sticky::beta_max(rho))
}

#[no_mangle]
pub unsafe extern "C" fn gvb_synthesis_capacity(tau: f64, out: *mut f64) -> GvbStatus {
    guard(out, || synthesis::capacity(tau))
}

/// `delta_max(tau)`; defined for `1 < tau < 5/2`.
#[no_mangle]
pub unsafe extern "C" fn gvb_synthesis_delta_max(tau: f64, out: *mut f64) -> GvbStatus {
    guard(out, || synthesis::delta_max(tau).map(|(d, _)| d))
}

#[no_mangle]
pub unsafe extern "C" fn gvb_synthesis_ball_rate_upper(
    tau: f64,
    delta: f64,
    out: *mut GvbRate,
) -> GvbStatus {
    rate_out(out, || synthesis::ball_rate_upper(tau, delta))
}

#[no_mangle]
pub unsafe extern "C" fn gvb_synthesis_gv_rate(
    tau: f64,
    delta: f64,
    out: *mut GvbRate,
) -> GvbStatus {
    rate_out(out, || synthesis::gv_rate(tau, delta))
}

#[no_mangle]
pub unsafe extern "C" fn gvb_synthesis_lb_rate(
    tau: f64,
    delta: f64,
    out: *mut GvbRate,
) -> GvbStatus {
    rate_out(out, || synthesis::simple_lb_rate(tau, delta))
}

enum StickyStore {
    Exact(PairCountTable<BigUint>),
    Log2(PairCountTable<Log2Count>),
}

/// Sticky pair counts `N(n1, n2, r, s)` for all indices up to the table bounds.
pub struct GvbStickyTable(StickyStore);

enum SynthesisStore {
    Exact(PairLayer<BigUint>),
    Log2(PairLayer<Log2Count>),
}

/// Synthesis pair counts `N(n, t, s)` at one length `n`.
pub struct GvbSynthesisTable(SynthesisStore);

/// Writes `value` as a NUL-terminated decimal string. `needed` receives the
/// buffer size including the terminator.
unsafe fn write_decimal(
    value: &BigUint,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> GvbStatus {
    let text = value.to_str_radix(10);
    let size = text.len() + 1;
    if !needed.is_null() {
        needed.write(size);
    }
    if buf.is_null() || cap < size {
        return GvbStatus::BufferTooSmall;
    }
    std::ptr::copy_nonoverlapping(text.as_ptr().cast::<c_char>(), buf, text.len());
    buf.add(text.len()).write(0);
    GvbStatus::Ok
}

#[no_mangle]
pub unsafe extern "C" fn gvb_sticky_table_new(
    n1_max: usize,
    n2_max: usize,
    r_max: usize,
    s_max: usize,
    mode: GvbCountMode,
    out: *mut *mut GvbStickyTable,
) -> GvbStatus {
    let budget = sticky::pairs::DEFAULT_ENTRY_BUDGET;
    guard(out, || {
        let store = match mode {
            GvbCountMode::Exact => {
                StickyStore::Exact(PairCountTable::build(n1_max, n2_max, r_max, s_max, budget)?)
            }
            GvbCountMode::Log2 => {
                StickyStore::Log2(PairCountTable::build(n1_max, n2_max, r_max, s_max, budget)?)
            }
        };
        Ok(Box::into_raw(Box::new(GvbStickyTable(store))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn gvb_sticky_table_free(table: *mut GvbStickyTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

fn sticky_entry<C: Count>(
    t: &PairCountTable<C>,
    n1: usize,
    n2: usize,
    r: usize,
    s: usize,
) -> gvbound::Result<C> {
    let (a, b, c, d) = t.dims();
    if n1 > a || n2 > b || r > c || s > d {
        return Err(Error::InvalidSpec(format!(
            "index ({n1}, {n2}, {r}, {s}) outside table ({a}, {b}, {c}, {d})"
        )));
    }
    Ok(t.get(n1 as i64, n2 as i64, r as i64, s as i64)
        .expect("inside table"))
}

/// `log2 N(n1, n2, r, s)`; `-inf` when the count is zero.
#[no_mangle]
pub unsafe extern "C" fn gvb_sticky_table_log2(
    table: *const GvbStickyTable,
    n1: usize,
    n2: usize,
    r: usize,
    s: usize,
    out: *mut f64,
) -> GvbStatus {
    let Some(table) = table.as_ref() else {
        return GvbStatus::NullPointer;
    };
    guard(out, || match &table.0 {
        StickyStore::Exact(t) => sticky_entry(t, n1, n2, r, s).map(|v| v.log2()),
        StickyStore::Log2(t) => sticky_entry(t, n1, n2, r, s).map(|v| v.log2()),
    })
}

/// Exact `N(n1, n2, r, s)` as decimal text; needs an exact-mode table.
#[no_mangle]
pub unsafe extern "C" fn gvb_sticky_table_exact(
    table: *const GvbStickyTable,
    n1: usize,
    n2: usize,
    r: usize,
    s: usize,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> GvbStatus {
    let Some(table) = table.as_ref() else {
        return GvbStatus::NullPointer;
    };
    let StickyStore::Exact(t) = &table.0 else {
        return GvbStatus::InvalidArgument;
    };
    match sticky_entry(t, n1, n2, r, s) {
        Ok(v) => write_decimal(&v, buf, cap, needed),
        Err(e) => status_of(&e),
    }
}

#[no_mangle]
pub unsafe extern "C" fn gvb_synthesis_table_new(
    n: usize,
    model: GvbPairModel,
    mode: GvbCountMode,
    out: *mut *mut GvbSynthesisTable,
) -> GvbStatus {
    let model = match model {
        GvbPairModel::Strand => PairModel::Strand,
        GvbPairModel::CostSequence => PairModel::CostSequence,
    };
    let budget = synthesis::pairs::DEFAULT_ENTRY_BUDGET;
    guard(out, || {
        let store = match mode {
            GvbCountMode::Exact => {
                SynthesisStore::Exact(synthesis::pairs::pair_layer(n, model, budget)?)
            }
            GvbCountMode::Log2 => {
                SynthesisStore::Log2(synthesis::pairs::pair_layer(n, model, budget)?)
            }
        };
        Ok(Box::into_raw(Box::new(GvbSynthesisTable(store))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn gvb_synthesis_table_free(table: *mut GvbSynthesisTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// `log2` of the pairs with total time `t` differing in `s` positions, or with
/// time at most `t` and distance at most `s` when `ball` is non-zero.
#[no_mangle]
pub unsafe extern "C" fn gvb_synthesis_table_log2(
    table: *const GvbSynthesisTable,
    t: usize,
    s: usize,
    ball: u8,
    out: *mut f64,
) -> GvbStatus {
    let Some(table) = table.as_ref() else {
        return GvbStatus::NullPointer;
    };
    guard(out, || {
        Ok(match (&table.0, ball != 0) {
            (SynthesisStore::Exact(l), false) => l.get(t, s).log2(),
            (SynthesisStore::Exact(l), true) => l.ball(t, s).log2(),
            (SynthesisStore::Log2(l), false) => l.get(t, s).log2(),
            (SynthesisStore::Log2(l), true) => l.ball(t, s).log2(),
        })
    })
}

/// Exact bucket or ball count as decimal text; needs an exact-mode table.
#[no_mangle]
pub unsafe extern "C" fn gvb_synthesis_table_exact(
    table: *const GvbSynthesisTable,
    t: usize,
    s: usize,
    ball: u8,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> GvbStatus {
    let Some(table) = table.as_ref() else {
        return GvbStatus::NullPointer;
    };
    let SynthesisStore::Exact(l) = &table.0 else {
        return GvbStatus::InvalidArgument;
    };
    let v = if ball != 0 { l.ball(t, s) } else { l.get(t, s) };
    write_decimal(&v, buf, cap, needed)
}
