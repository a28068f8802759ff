//! Pair counts `N(n1, n2, r, s)`: ordered pairs of compositions of `n1` and
//! `n2` into `r` parts at L1 distance exactly `s`.
//!
//! Removing the last run of both words gives
//!
//! ```text
//! N(n1, n2, r, s) = sum_i      N(n1-i,   n2-i,   r-1, s)
//!                 + sum_{i,j}  N(n1-i,   n2-i-j, r-1, s-j)
//!                 + sum_{i,j}  N(n1-i-j, n2-i,   r-1, s-j)        (i, j >= 1)
//! ```
//!
//! with `N(0, 0, 0, 0) = 1`. The sums are collapsed by running prefix sums
//! along the diagonals, so a whole run layer costs `O(n1 * n2 * s)`:
//!
//! ```text
//! A(n1, n2, s)  = P(n1-1, n2-1, s) + A(n1-1, n2-1, s)       P = layer r-1
//! M(n1, n2, s)  = A(n1, n2-1, s-1) + M(n1, n2-1, s-1)
//! M'(n1, n2, s) = A(n1-1, n2, s-1) + M'(n1-1, n2, s-1)
//! N = A + M + M'
//! ```

use num_bigint::BigUint;

use super::composition::{compositions, l1_distance};
pub use crate::count::PairValue;
use crate::count::{Count, CountMode, Log2Count};
use crate::numeric::binomial_exact;
use crate::{Error, Result};

/// Entries allowed per table unless the caller raises it.
pub const DEFAULT_ENTRY_BUDGET: usize = 1 << 26;

/// One run layer of the table: entries indexed by `(n1, n2, s)`.
#[derive(Debug, Clone)]
pub struct Slab<C> {
    n1_max: usize,
    n2_max: usize,
    s_max: usize,
    data: Vec<C>,
}

impl<C: Count> Slab<C> {
    fn zeros(n1_max: usize, n2_max: usize, s_max: usize) -> Self {
        let len = (n1_max + 1) * (n2_max + 1) * (s_max + 1);
        Slab {
            n1_max,
            n2_max,
            s_max,
            data: vec![C::zero(); len],
        }
    }

    #[inline]
    fn index(&self, n1: usize, n2: usize, s: usize) -> usize {
        (n1 * (self.n2_max + 1) + n2) * (self.s_max + 1) + s
    }

    /// Entry at `(n1, n2, s)`, `None` outside the slab.
    pub fn get(&self, n1: usize, n2: usize, s: usize) -> Option<&C> {
        (n1 <= self.n1_max && n2 <= self.n2_max && s <= self.s_max)
            .then(|| &self.data[self.index(n1, n2, s)])
    }

    fn at(&self, n1: usize, n2: usize, s: usize) -> &C {
        &self.data[self.index(n1, n2, s)]
    }

    fn at_mut(&mut self, n1: usize, n2: usize, s: usize) -> &mut C {
        let i = self.index(n1, n2, s);
        &mut self.data[i]
    }

    /// The `r = 0` layer: only `N(0, 0, 0, 0) = 1`.
    fn base(n1_max: usize, n2_max: usize, s_max: usize) -> Self {
        let mut slab = Self::zeros(n1_max, n2_max, s_max);
        *slab.at_mut(0, 0, 0) = C::one();
        slab
    }

    /// Layer `r` from layer `r - 1`.
    fn next(&self) -> Self {
        let (n1m, n2m, sm) = (self.n1_max, self.n2_max, self.s_max);
        let mut diag = Self::zeros(n1m, n2m, sm);
        for n1 in 1..=n1m {
            for n2 in 1..=n2m {
                for s in 0..=sm {
                    let mut v = self.at(n1 - 1, n2 - 1, s).clone();
                    v.add_assign_ref(diag.at(n1 - 1, n2 - 1, s));
                    *diag.at_mut(n1, n2, s) = v;
                }
            }
        }
        let mut longer_v = Self::zeros(n1m, n2m, sm);
        let mut longer_u = Self::zeros(n1m, n2m, sm);
        for n1 in 0..=n1m {
            for n2 in 0..=n2m {
                for s in 1..=sm {
                    if n2 >= 1 {
                        let mut v = diag.at(n1, n2 - 1, s - 1).clone();
                        v.add_assign_ref(longer_v.at(n1, n2 - 1, s - 1));
                        *longer_v.at_mut(n1, n2, s) = v;
                    }
                    if n1 >= 1 {
                        let mut v = diag.at(n1 - 1, n2, s - 1).clone();
                        v.add_assign_ref(longer_u.at(n1 - 1, n2, s - 1));
                        *longer_u.at_mut(n1, n2, s) = v;
                    }
                }
            }
        }
        for ((out, a), b) in diag.data.iter_mut().zip(&longer_v.data).zip(&longer_u.data) {
            out.add_assign_ref(a);
            out.add_assign_ref(b);
        }
        diag
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.n1_max, self.n2_max, self.s_max)
    }
}

fn check_budget(
    n1_max: usize,
    n2_max: usize,
    s_max: usize,
    slabs: usize,
    budget: usize,
) -> Result<()> {
    let requested = (n1_max + 1)
        .checked_mul(n2_max + 1)
        .and_then(|v| v.checked_mul(s_max + 1))
        .and_then(|v| v.checked_mul(slabs))
        .unwrap_or(usize::MAX);
    if requested > budget {
        return Err(Error::MemoryBudget { requested, budget });
    }
    Ok(())
}

/// Walks the run layers `r = 0, 1, 2, ...` holding only a few slabs at once.
pub struct Layers<C> {
    current: Slab<C>,
    r: usize,
}

impl<C: Count> Layers<C> {
    /// Positioned at layer `r = 0`.
    pub fn new(n1_max: usize, n2_max: usize, s_max: usize, budget: usize) -> Result<Self> {
        // Previous layer, three helper slabs and the result.
        check_budget(n1_max, n2_max, s_max, 4, budget)?;
        Ok(Layers {
            current: Slab::base(n1_max, n2_max, s_max),
            r: 0,
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn current(&self) -> &Slab<C> {
        &self.current
    }

    /// Moves to layer `r + 1`.
    pub fn advance(&mut self) -> &Slab<C> {
        self.current = self.current.next();
        self.r += 1;
        &self.current
    }

    /// Moves forward to layer `r` (no-op if already there or past it).
    pub fn seek(&mut self, r: usize) -> &Slab<C> {
        while self.r < r {
            self.advance();
        }
        &self.current
    }
}

/// All run layers `0..=r_max` of `N(n1, n2, r, s)`.
#[derive(Debug, Clone)]
pub struct PairCountTable<C> {
    layers: Vec<Slab<C>>,
}

impl<C: Count> PairCountTable<C> {
    pub fn build(
        n1_max: usize,
        n2_max: usize,
        r_max: usize,
        s_max: usize,
        budget: usize,
    ) -> Result<Self> {
        check_budget(n1_max, n2_max, s_max, r_max + 4, budget)?;
        let mut walk = Layers::new(n1_max, n2_max, s_max, usize::MAX)?;
        let mut layers = vec![walk.current().clone()];
        for _ in 0..r_max {
            layers.push(walk.advance().clone());
        }
        Ok(PairCountTable { layers })
    }

    pub fn mode(&self) -> CountMode {
        C::MODE
    }

    /// `(n1_max, n2_max, r_max, s_max)`.
    pub fn dims(&self) -> (usize, usize, usize, usize) {
        let (a, b, s) = self.layers[0].dims();
        (a, b, self.layers.len() - 1, s)
    }

    /// `N(n1, n2, r, s)`; negative indices give zero.
    pub fn get(&self, n1: i64, n2: i64, r: i64, s: i64) -> Option<C> {
        if n1 < 0 || n2 < 0 || r < 0 || s < 0 {
            return Some(C::zero());
        }
        let layer = self.layers.get(r as usize)?;
        layer.get(n1 as usize, n2 as usize, s as usize).cloned()
    }

    pub fn layer(&self, r: usize) -> Option<&Slab<C>> {
        self.layers.get(r)
    }
}

fn count_with<C: Count>(n1: usize, n2: usize, r: usize, s: usize, budget: usize) -> Result<C> {
    // Pairs at distance s need |n1 - n2| <= s <= n1 + n2 - 2r; outside that the count is zero.
    if r > n1 || r > n2 || s > n1 + n2 {
        return Ok(C::zero());
    }
    let mut walk = Layers::<C>::new(n1, n2, s, budget)?;
    Ok(walk.seek(r).at(n1, n2, s).clone())
}

fn check_nonnegative(values: &[(&'static str, i64)]) -> Result<()> {
    for &(name, v) in values {
        if v < 0 {
            return Err(Error::domain(name, v as f64, "must be non-negative"));
        }
    }
    Ok(())
}

/// `N(n1, n2, r, s)` by the run recursion.
pub fn count_pairs_exact(n1: i64, n2: i64, r: i64, s: i64, mode: CountMode) -> Result<PairValue> {
    check_nonnegative(&[("n1", n1), ("n2", n2), ("r", r), ("s", s)])?;
    let (n1, n2, r, s) = (n1 as usize, n2 as usize, r as usize, s as usize);
    Ok(match mode {
        CountMode::Exact => {
            PairValue::Exact(count_with::<BigUint>(n1, n2, r, s, DEFAULT_ENTRY_BUDGET)?)
        }
        CountMode::Log2 => {
            PairValue::Log2(count_with::<Log2Count>(n1, n2, r, s, DEFAULT_ENTRY_BUDGET)?.0)
        }
    })
}

/// Largest number of composition pairs [`count_pairs_bruteforce`] enumerates.
pub const PAIR_ENUMERATION_LIMIT: u128 = 10_000_000;

/// `N(n1, n2, r, s)` by enumerating both composition sets.
pub fn count_pairs_bruteforce(n1: u32, n2: u32, r: usize, s: u64) -> Result<BigUint> {
    let size = |n: u32| -> u128 {
        if r == 0 {
            return u128::from(n == 0);
        }
        if n == 0 || (r as u32) > n {
            return 0;
        }
        binomial_exact(n as i64 - 1, r as i64 - 1)
            .ok()
            .and_then(|b| u128::try_from(b).ok())
            .unwrap_or(u128::MAX)
    };
    let requested = size(n1).saturating_mul(size(n2));
    if requested > PAIR_ENUMERATION_LIMIT {
        return Err(Error::SizeLimit {
            requested,
            limit: PAIR_ENUMERATION_LIMIT,
        });
    }
    let (us, vs) = (compositions(n1, r), compositions(n2, r));
    let mut count = 0u64;
    for u in &us {
        for v in &vs {
            if l1_distance(u, v)? == s {
                count += 1;
            }
        }
    }
    Ok(BigUint::from(count))
}

/// Total ball size `sum_{s <= d} N(n, n, r, s)`: ordered pairs of compositions
/// of `n` into `r` parts at distance at most `d`.
pub fn total_ball_exact(n: i64, r: i64, d: i64, mode: CountMode) -> Result<PairValue> {
    check_nonnegative(&[("n", n), ("r", r), ("d", d)])?;
    let (n, r) = (n as usize, r as usize);
    if r > n {
        return Ok(match mode {
            CountMode::Exact => PairValue::Exact(BigUint::from(0u32)),
            CountMode::Log2 => PairValue::Log2(f64::NEG_INFINITY),
        });
    }
    // No two compositions are further apart than 2(n - r).
    let d = (d as usize).min(2 * (n - r));
    fn ball<C: Count>(n: usize, r: usize, d: usize) -> Result<C> {
        let mut walk = Layers::<C>::new(n, n, d, DEFAULT_ENTRY_BUDGET)?;
        let slab = walk.seek(r);
        Ok(crate::count::sum((0..=d).map(|s| slab.at(n, n, s))))
    }
    Ok(match mode {
        CountMode::Exact => PairValue::Exact(ball::<BigUint>(n, r, d)?),
        CountMode::Log2 => PairValue::Log2(ball::<Log2Count>(n, r, d)?.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(n1: i64, n2: i64, r: i64, s: i64) -> BigUint {
        count_pairs_exact(n1, n2, r, s, CountMode::Exact)
            .unwrap()
            .exact()
            .unwrap()
            .clone()
    }

    #[test]
    fn small_counts() {
        assert_eq!(exact(3, 3, 2, 0), BigUint::from(2u32));
        assert_eq!(exact(3, 3, 2, 2), BigUint::from(2u32));
        assert_eq!(exact(2, 2, 2, 0), BigUint::from(1u32));
        assert_eq!(exact(0, 0, 0, 0), BigUint::from(1u32));
        assert_eq!(exact(3, 3, 2, 1), BigUint::from(0u32));
        assert!(count_pairs_exact(-1, 2, 1, 0, CountMode::Exact).is_err());
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(
            count_pairs_bruteforce(3, 3, 2, 2).unwrap(),
            BigUint::from(2u32)
        );
        let total: BigUint = (0..=6)
            .map(|s| count_pairs_bruteforce(4, 4, 2, s).unwrap())
            .sum();
        assert_eq!(total, BigUint::from(9u32));
        assert_eq!(
            count_pairs_bruteforce(5, 4, 3, 1).unwrap(),
            exact(5, 4, 3, 1)
        );
        assert!(matches!(
            count_pairs_bruteforce(40, 40, 20, 0),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn dp_matches_enumeration() {
        let table = PairCountTable::<BigUint>::build(8, 8, 8, 14, DEFAULT_ENTRY_BUDGET).unwrap();
        for n1 in 0..=8u32 {
            for n2 in 0..=8u32 {
                for r in 0..=8usize {
                    for s in 0..=14u64 {
                        let dp = table.get(n1 as i64, n2 as i64, r as i64, s as i64).unwrap();
                        assert_eq!(
                            dp,
                            count_pairs_bruteforce(n1, n2, r, s).unwrap(),
                            "{n1} {n2} {r} {s}"
                        );
                    }
                }
            }
        }
        assert_eq!(table.get(-1, 3, 1, 0), Some(BigUint::from(0u32)));
        assert_eq!(table.dims(), (8, 8, 8, 14));
    }

    #[test]
    fn table_is_symmetric_in_the_two_words() {
        let table = PairCountTable::<BigUint>::build(12, 12, 12, 12, DEFAULT_ENTRY_BUDGET).unwrap();
        for n1 in 0..=12 {
            for n2 in 0..=12 {
                for r in 0..=12 {
                    for s in 0..=12 {
                        assert_eq!(table.get(n1, n2, r, s), table.get(n2, n1, r, s));
                    }
                }
            }
        }
    }

    #[test]
    fn ball_sizes() {
        let ball = |n, r, d| {
            total_ball_exact(n, r, d, CountMode::Exact)
                .unwrap()
                .exact()
                .unwrap()
                .clone()
        };
        assert_eq!(ball(3, 2, 2), BigUint::from(4u32));
        for (n, r) in [(5, 2), (9, 4), (12, 7)] {
            assert_eq!(ball(n, r, 0), binomial_exact(n - 1, r - 1).unwrap());
        }
        assert_eq!(ball(6, 3, 1_000_000), BigUint::from(100u32));
    }

    #[test]
    fn log_mode_tracks_exact_mode() {
        for (n, r, s) in [(20, 10, 6), (24, 7, 10), (16, 16, 0)] {
            let e = count_pairs_exact(n, n, r, s, CountMode::Exact).unwrap();
            let l = count_pairs_exact(n, n, r, s, CountMode::Log2).unwrap();
            assert!((e.log2() - l.log2()).abs() < 1e-9, "{n} {r} {s}");
        }
        let zero = count_pairs_exact(5, 5, 6, 0, CountMode::Log2).unwrap();
        assert_eq!(zero.log2(), f64::NEG_INFINITY);
    }

    #[test]
    fn budget_is_enforced() {
        let err = PairCountTable::<Log2Count>::build(100, 100, 50, 100, 1000).unwrap_err();
        assert!(matches!(err, Error::MemoryBudget { .. }));
    }
}
