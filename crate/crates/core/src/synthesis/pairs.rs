//! Word and pair counts by synthesis time.
//!
//! Every strand is determined by its sequence of step costs in `{1, 2, 3, 4}`,
//! so words of length `n` and time `t` are compositions of `t` into `n` parts
//! of size at most 4.
//!
//! For pairs the Hamming distance is not a function of the two cost sequences
//! position by position: whether the `k`-th symbols agree depends on the
//! offset `d = rank(v_{k-1}) - rank(u_{k-1}) (mod 4)`. Appending costs `(i, j)`
//! moves the offset to `d + j - i`, and the new symbols differ iff that is
//! nonzero. [`count_pairs_exact`] runs this offset-state recursion.
//!
//! [`count_cost_pairs_exact`] counts pairs of cost sequences by the Hamming
//! distance between the cost sequences themselves:
//!
//! ```text
//! N(n, t, s) = sum_i N(n-1, t-2i, s) + 2 sum_{i<j} N(n-1, t-i-j, s-1)
//! ```
//!
//! whose generating function has the closed-form critical point used for the
//! asymptotic bound. Its exponent dominates the strand count's.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use super::strand::{all_strands, hamming_distance, synthesis_time, Strand};
use crate::count::{Count, CountMode, Log2Count, PairValue};
use crate::{Error, Result};

/// Which pair statistic a table counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairModel {
    /// Pairs of strands by Hamming distance between the strands.
    Strand,
    /// Pairs of step-cost sequences by Hamming distance between the costs.
    CostSequence,
}

/// Entries allowed per layer unless the caller raises it.
pub const DEFAULT_ENTRY_BUDGET: usize = 1 << 26;

/// Largest `n` accepted by the enumeration oracle (`4^n <= 4096`).
pub const BRUTEFORCE_MAX_N: usize = 6;

/// Offsets tracked by the strand recursion; the cost model only needs one.
fn offsets(model: PairModel) -> usize {
    match model {
        PairModel::Strand => 4,
        PairModel::CostSequence => 1,
    }
}

/// `(time, new offset, differs, multiplicity)` for every transition out of offset `d`.
fn transitions(model: PairModel, d: usize) -> Vec<(usize, usize, bool, u32)> {
    let mut grouped: BTreeMap<(usize, usize, bool), u32> = BTreeMap::new();
    for i in 1..=4usize {
        for j in 1..=4usize {
            let (next, differs) = match model {
                PairModel::Strand => {
                    let e = (d + 4 + j - i) % 4;
                    (e, e != 0)
                }
                PairModel::CostSequence => (0, i != j),
            };
            *grouped.entry((i + j, next, differs)).or_default() += 1;
        }
    }
    grouped
        .into_iter()
        .map(|((t, e, diff), m)| (t, e, diff, m))
        .collect()
}

/// All pair counts for one length `n`: entries `(t, s, offset)` with `t <= 8n`, `s <= n`.
#[derive(Debug, Clone)]
pub struct PairLayer<C> {
    n: usize,
    model: PairModel,
    data: Vec<C>,
}

impl<C: Count> PairLayer<C> {
    /// The single pair of empty strands.
    pub fn base(model: PairModel) -> Self {
        let mut data = vec![C::zero(); offsets(model)];
        data[0] = C::one();
        PairLayer { n: 0, model, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn model(&self) -> PairModel {
        self.model
    }

    fn t_max(&self) -> usize {
        8 * self.n
    }

    fn index(&self, t: usize, s: usize, d: usize) -> usize {
        (t * (self.n + 1) + s) * offsets(self.model) + d
    }

    fn entries(n: usize, model: PairModel) -> usize {
        (8 * n + 1) * (n + 1) * offsets(model)
    }

    /// Layer `n + 1`.
    pub fn next(&self) -> Self {
        let n = self.n + 1;
        let k = offsets(self.model);
        let mut out = PairLayer {
            n,
            model: self.model,
            data: vec![C::zero(); Self::entries(n, self.model)],
        };
        let moves: Vec<_> = (0..k).map(|d| transitions(self.model, d)).collect();
        for t in 0..=self.t_max() {
            for s in 0..=self.n {
                for (d, moves) in moves.iter().enumerate() {
                    let value = &self.data[self.index(t, s, d)];
                    if value.is_zero() {
                        continue;
                    }
                    for &(dt, e, differs, m) in moves {
                        let at = out.index(t + dt, s + usize::from(differs), e);
                        out.data[at].add_scaled(value, m);
                    }
                }
            }
        }
        out
    }

    /// `N(n, t, s)`, summed over offsets; zero outside the layer.
    pub fn get(&self, t: usize, s: usize) -> C {
        if t > self.t_max() || s > self.n {
            return C::zero();
        }
        let k = offsets(self.model);
        let start = self.index(t, s, 0);
        crate::count::sum(&self.data[start..start + k])
    }

    /// `sum_{t' <= t, s' <= s} N(n, t', s')`.
    pub fn ball(&self, t: usize, s: usize) -> C {
        let mut acc = C::zero();
        for tt in 0..=t.min(self.t_max()) {
            for ss in 0..=s.min(self.n) {
                acc.add_assign_ref(&self.get(tt, ss));
            }
        }
        acc
    }

    /// Sum of every entry.
    pub fn total(&self) -> C {
        crate::count::sum(&self.data)
    }
}

fn check_budget(n: usize, model: PairModel, budget: usize) -> Result<()> {
    let requested = PairLayer::<Log2Count>::entries(n, model) as u128 * 2;
    if requested > budget as u128 {
        return Err(Error::MemoryBudget {
            requested: requested as usize,
            budget,
        });
    }
    Ok(())
}

/// Layer `n` of the pair recursion, keeping only two layers alive.
pub fn pair_layer<C: Count>(n: usize, model: PairModel, budget: usize) -> Result<PairLayer<C>> {
    check_budget(n, model, budget)?;
    let mut layer = PairLayer::base(model);
    while layer.n < n {
        layer = layer.next();
    }
    Ok(layer)
}

/// Every layer `0..=n_max` of `N(n, t, s)`.
#[derive(Debug, Clone)]
pub struct SynthesisCountTable<C> {
    layers: Vec<PairLayer<C>>,
}

impl<C: Count> SynthesisCountTable<C> {
    pub fn build(n_max: usize, model: PairModel, budget: usize) -> Result<Self> {
        let total: usize = (0..=n_max).map(|n| PairLayer::<C>::entries(n, model)).sum();
        if total > budget {
            return Err(Error::MemoryBudget {
                requested: total,
                budget,
            });
        }
        let mut layers = vec![PairLayer::base(model)];
        for _ in 0..n_max {
            let next = layers.last().expect("base layer").next();
            layers.push(next);
        }
        Ok(SynthesisCountTable { layers })
    }

    pub fn mode(&self) -> CountMode {
        C::MODE
    }

    /// `(n_max, t_max, s_max)`.
    pub fn dims(&self) -> (usize, usize, usize) {
        let n = self.layers.len() - 1;
        (n, 8 * n, n)
    }

    pub fn layer(&self, n: usize) -> Option<&PairLayer<C>> {
        self.layers.get(n)
    }

    /// `N(n, t, s)`; `None` if `n` is beyond the table.
    pub fn get(&self, n: usize, t: usize, s: usize) -> Option<C> {
        self.layers.get(n).map(|l| l.get(t, s))
    }
}

fn count_in<C: Count>(n: usize, t: usize, s: usize, model: PairModel) -> Result<C> {
    if t > 8 * n || s > n || t < 2 * n {
        return Ok(C::zero());
    }
    Ok(pair_layer::<C>(n, model, DEFAULT_ENTRY_BUDGET)?.get(t, s))
}

fn count_value(n: i64, t: i64, s: i64, mode: CountMode, model: PairModel) -> Result<PairValue> {
    for (name, v) in [("n", n), ("t", t), ("s", s)] {
        if v < 0 {
            return Err(Error::domain(name, v as f64, "must be non-negative"));
        }
    }
    let (n, t, s) = (n as usize, t as usize, s as usize);
    Ok(match mode {
        CountMode::Exact => PairValue::Exact(count_in::<BigUint>(n, t, s, model)?),
        CountMode::Log2 => PairValue::Log2(count_in::<Log2Count>(n, t, s, model)?.0),
    })
}

/// Ordered pairs of length-`n` strands with combined synthesis time `t` at
/// Hamming distance `s`.
pub fn count_pairs_exact(n: i64, t: i64, s: i64, mode: CountMode) -> Result<PairValue> {
    count_value(n, t, s, mode, PairModel::Strand)
}

/// Ordered pairs of length-`n` step-cost sequences with total `t` that differ in `s` positions.
pub fn count_cost_pairs_exact(n: i64, t: i64, s: i64, mode: CountMode) -> Result<PairValue> {
    count_value(n, t, s, mode, PairModel::CostSequence)
}

/// Step costs of a strand, one per symbol.
pub fn cost_sequence(w: &Strand) -> Vec<u8> {
    let mut prev = 0;
    w.ranks()
        .iter()
        .map(|&r| {
            let c = super::strand::step_cost(prev, r);
            prev = r;
            c
        })
        .collect()
}

/// `(t, s) -> count` over all pairs of length-`n` strands, by enumeration.
pub fn pair_buckets_bruteforce(
    n: usize,
    model: PairModel,
) -> Result<BTreeMap<(u64, usize), BigUint>> {
    if n > BRUTEFORCE_MAX_N {
        return Err(Error::SizeLimit {
            requested: 4u128.pow(n as u32),
            limit: 4u128.pow(BRUTEFORCE_MAX_N as u32),
        });
    }
    let words: Vec<(Strand, u64, Vec<u8>)> = all_strands(n)
        .map(|w| {
            let t = if n == 0 { 0 } else { synthesis_time(&w)? };
            let costs = cost_sequence(&w);
            Ok((w, t, costs))
        })
        .collect::<Result<_>>()?;
    let mut buckets: BTreeMap<(u64, usize), u64> = BTreeMap::new();
    for (u, tu, cu) in &words {
        for (v, tv, cv) in &words {
            let s = match model {
                PairModel::Strand => hamming_distance(u, v)?,
                PairModel::CostSequence => cu.iter().zip(cv).filter(|(a, b)| a != b).count(),
            };
            *buckets.entry((tu + tv, s)).or_default() += 1;
        }
    }
    Ok(buckets
        .into_iter()
        .map(|(k, c)| (k, BigUint::from(c)))
        .collect())
}

/// One bucket of [`pair_buckets_bruteforce`] for strand pairs.
pub fn count_pairs_bruteforce(n: usize, t: u64, s: usize) -> Result<BigUint> {
    Ok(pair_buckets_bruteforce(n, PairModel::Strand)?
        .remove(&(t, s))
        .unwrap_or_default())
}

/// Number of length-`n` strands with synthesis time exactly `t`, for `t = 0..=4n`.
pub fn count_words_by_time<C: Count>(n: usize) -> Vec<C> {
    let mut row = vec![C::one()];
    for _ in 0..n {
        let mut next = vec![C::zero(); row.len() + 4];
        for (t, value) in row.iter().enumerate() {
            if value.is_zero() {
                continue;
            }
            for i in 1..=4 {
                next[t + i].add_assign_ref(value);
            }
        }
        row = next;
    }
    row
}

/// `|S(n, <= t_max)|`: strands of length `n` synthesizable within `t_max` cycles.
pub fn count_words_exact(n: usize, t_max: usize) -> BigUint {
    let row = count_words_by_time::<BigUint>(n);
    crate::count::sum(row.iter().take(t_max + 1))
}
