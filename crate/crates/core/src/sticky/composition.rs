use std::collections::HashSet;

use crate::{Error, Result};

/// Run-length vector of a binary word: `r` positive parts summing to `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u32>,
    n: u32,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidComposition);
        }
        let n = parts.iter().sum();
        Ok(Composition { parts, n })
    }

    /// Run lengths of a binary word, e.g. `0011101` gives `(2, 3, 1, 1)`.
    pub fn from_word(word: &[u8]) -> Self {
        let mut parts: Vec<u32> = Vec::new();
        let mut prev = None;
        for &bit in word {
            if prev == Some(bit) {
                *parts.last_mut().expect("a run is open") += 1;
            } else {
                parts.push(1);
            }
            prev = Some(bit);
        }
        let n = word.len() as u32;
        Composition { parts, n }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> usize {
        self.parts.len()
    }
}

/// All compositions of `n` into exactly `r` positive parts, in lexicographic order.
pub fn compositions(n: u32, r: usize) -> Vec<Composition> {
    fn rec(remaining: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if slots == 0 {
            if remaining == 0 {
                out.push(Composition {
                    n: prefix.iter().sum(),
                    parts: prefix.clone(),
                });
            }
            return;
        }
        if remaining < slots as u32 {
            return;
        }
        for first in 1..=remaining - (slots as u32 - 1) {
            prefix.push(first);
            rec(remaining - first, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, r, &mut Vec::with_capacity(r), &mut out);
    out
}

/// `sum |u_i - v_i|`.
pub fn l1_distance(u: &Composition, v: &Composition) -> Result<u64> {
    if u.r() != v.r() {
        return Err(Error::DimensionMismatch {
            expected: u.r(),
            got: v.r(),
        });
    }
    Ok(u.parts
        .iter()
        .zip(&v.parts)
        .map(|(&a, &b)| a.abs_diff(b) as u64)
        .sum())
}

fn check_same_space(u: &Composition, v: &Composition) -> Result<()> {
    if u.r() != v.r() {
        return Err(Error::DimensionMismatch {
            expected: u.r(),
            got: v.r(),
        });
    }
    if u.n() != v.n() {
        return Err(Error::DimensionMismatch {
            expected: u.n() as usize,
            got: v.n() as usize,
        });
    }
    Ok(())
}

/// Whether `b` sticky insertions can turn `u` and `v` into a common word,
/// decided by the L1 criterion `D(u, v) <= 2b`.
pub fn is_confusable(u: &Composition, v: &Composition, b: u32) -> Result<bool> {
    check_same_space(u, v)?;
    Ok(l1_distance(u, v)? <= 2 * b as u64)
}

/// Largest number of outputs per word that [`confusable_bruteforce`] enumerates.
pub const BRUTEFORCE_LIMIT: u128 = 2_000_000;

/// Confusability by direct enumeration: every way of adding `b` unit
/// increments to `u`'s runs is compared with every way for `v`.
pub fn confusable_bruteforce(u: &Composition, v: &Composition, b: u32) -> Result<bool> {
    check_same_space(u, v)?;
    let outputs = multisets(u.r(), b);
    if outputs > BRUTEFORCE_LIMIT {
        return Err(Error::SizeLimit {
            requested: outputs,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    let from_u: HashSet<Vec<u32>> = insertions(u, b).collect();
    Ok(insertions(v, b).any(|w| from_u.contains(&w)))
}

/// Number of ways to place `b` identical increments into `r` runs.
fn multisets(r: usize, b: u32) -> u128 {
    if r == 0 {
        return u128::from(b == 0);
    }
    let (n, k) = (b as u128 + r as u128 - 1, r as u128 - 1);
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// Every word reachable from `u` by exactly `b` sticky insertions.
fn insertions(u: &Composition, b: u32) -> impl Iterator<Item = Vec<u32>> + '_ {
    let base = u.parts.clone();
    let r = u.r();
    let mut increments: Vec<Vec<u32>> = Vec::new();
    fn rec(slot: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slot + 1 == cur.len() {
            cur[slot] = left;
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[slot] = k;
            rec(slot + 1, left - k, cur, out);
        }
    }
    if r > 0 {
        rec(0, b, &mut vec![0; r], &mut increments);
    } else if b == 0 {
        increments.push(Vec::new());
    }
    increments
        .into_iter()
        .map(move |inc| base.iter().zip(&inc).map(|(a, d)| a + d).collect())
}
