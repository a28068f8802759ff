//! Count representations shared by the pair-counting dynamic programs.
//!
//! A table is filled either with exact big integers or with `log2` values in
//! double precision. Both implement [`Count`], so each recursion is written once.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::numeric::{log2_add, log2_big};

/// Which representation a table stores.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountMode {
    Exact,
    Log2,
}

/// Semiring of non-negative counts under addition and small-integer scaling.
pub trait Count: Clone + Send + Sync + std::fmt::Debug {
    const MODE: CountMode;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    /// `self += factor * other`.
    fn add_scaled(&mut self, other: &Self, factor: u32);
    /// `log2` of the count, `-inf` for zero.
    fn log2(&self) -> f64;
}

impl Count for BigUint {
    const MODE: CountMode = CountMode::Exact;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add_assign_ref(&mut self, other: &Self) {
        if !Zero::is_zero(other) {
            *self += other;
        }
    }

    fn add_scaled(&mut self, other: &Self, factor: u32) {
        if !Zero::is_zero(other) && factor != 0 {
            *self += other * factor;
        }
    }

    fn log2(&self) -> f64 {
        log2_big(self)
    }
}

/// A count stored as its base-2 logarithm; zero is `-inf`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Log2Count(pub f64);

impl Log2Count {
    pub fn from_count(count: f64) -> Self {
        Log2Count(count.log2())
    }
}

impl Count for Log2Count {
    const MODE: CountMode = CountMode::Log2;

    fn zero() -> Self {
        Log2Count(f64::NEG_INFINITY)
    }

    fn one() -> Self {
        Log2Count(0.0)
    }

    fn is_zero(&self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    fn add_assign_ref(&mut self, other: &Self) {
        self.0 = log2_add(self.0, other.0);
    }

    fn add_scaled(&mut self, other: &Self, factor: u32) {
        if factor != 0 {
            self.0 = log2_add(self.0, other.0 + (factor as f64).log2());
        }
    }

    fn log2(&self) -> f64 {
        self.0
    }
}

/// Pair count in either representation.
#[derive(Debug, Clone, PartialEq)]
pub enum PairValue {
    Exact(BigUint),
    Log2(f64),
}

impl PairValue {
    pub fn log2(&self) -> f64 {
        match self {
            PairValue::Exact(v) => Count::log2(v),
            PairValue::Log2(v) => *v,
        }
    }

    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            PairValue::Exact(v) => Some(v),
            PairValue::Log2(_) => None,
        }
    }
}

/// Sum of a sequence of counts.
pub fn sum<'a, C: Count + 'a>(values: impl IntoIterator<Item = &'a C>) -> C {
    values.into_iter().fold(C::zero(), |mut acc, v| {
        acc.add_assign_ref(v);
        acc
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_and_log_agree() {
        let mut exact = <BigUint as Count>::one();
        let mut log = Log2Count::one();
        for k in 1..=40u32 {
            let e = exact.clone();
            exact.add_scaled(&e, k);
            let l = log;
            log.add_scaled(&l, k);
        }
        // prod (1 + k) for k = 1..=40 = 41!
        assert!((exact.log2() - log.log2()).abs() < 1e-10);
    }

    #[test]
    fn zero_is_identity() {
        let mut a = Log2Count::zero();
        a.add_assign_ref(&Log2Count(3.0));
        assert_eq!(a, Log2Count(3.0));
        assert!(Log2Count::zero().is_zero());
        assert_eq!(Log2Count::zero().log2(), f64::NEG_INFINITY);
        let mut b = <BigUint as Count>::zero();
        b.add_scaled(&BigUint::from(7u32), 2);
        assert_eq!(b, BigUint::from(14u32));
    }
}
