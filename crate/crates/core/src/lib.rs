#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Rate bounds for two constrained channels.
//!
//! The crate evaluates Gilbert-Varshamov lower bounds, a sphere-packing upper
//! bound and crude lower bounds on the asymptotic rate of codes for
//!
//! * the binary sticky-insertion channel, where words are run-length vectors
//!   compared in the L1 metric, and
//! * the quaternary DNA synthesis channel, where strands must be producible
//!   within a cycle budget on the alternating `ACGT` supersequence and are
//!   compared in the Hamming metric.
//!
//! Every ball-size exponent comes from two sources that are checked against
//! each other: exact pair-counting dynamic programs ([`sticky::pairs`],
//! [`synthesis::pairs`]) and smooth critical points of the pair generating
//! function's denominator ([`acsv`]).

pub mod acsv;
pub mod count;
mod error;
pub mod numeric;
pub mod rate;
pub mod report;
pub mod sticky;
pub mod synthesis;
pub mod verify;

pub use error::{Error, Result};
