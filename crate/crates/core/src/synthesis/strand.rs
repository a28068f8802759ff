use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Nucleotides in supersequence order.
pub const ALPHABET: [char; 4] = ['A', 'C', 'G', 'T'];

/// A DNA strand, stored as ranks `1..=4` for `A, C, G, T`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Strand {
    ranks: Vec<u8>,
}

impl Strand {
    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }

    /// Strand from ranks `1..=4`.
    pub fn from_ranks(ranks: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = ranks.iter().find(|&&r| !(1..=4).contains(&r)) {
            return Err(Error::InvalidSymbol(char::from(b'0' + bad.min(9))));
        }
        Ok(Strand { ranks })
    }

    pub fn ranks(&self) -> &[u8] {
        &self.ranks
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }
}

impl FromStr for Strand {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let ranks = s
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'A' => Ok(1),
                'C' => Ok(2),
                'G' => Ok(3),
                'T' => Ok(4),
                _ => Err(Error::InvalidSymbol(c)),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Strand { ranks })
    }
}

impl fmt::Display for Strand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &r in &self.ranks {
            write!(f, "{}", ALPHABET[r as usize - 1])?;
        }
        Ok(())
    }
}

/// Cycles between writing `prev` and `cur` on the alternating supersequence.
/// `prev = 0` is the virtual start, so a first symbol costs its rank.
pub fn step_cost(prev: u8, cur: u8) -> u8 {
    ((cur as i16 - prev as i16 - 1).rem_euclid(4) + 1) as u8
}

/// Cycles of `ACGTACGT...` needed to synthesize `w`.
pub fn synthesis_time(w: &Strand) -> Result<u64> {
    if w.is_empty() {
        return Err(Error::EmptyStrand);
    }
    let mut prev = 0;
    let mut total = 0u64;
    for &r in w.ranks() {
        total += step_cost(prev, r) as u64;
        prev = r;
    }
    Ok(total)
}

pub fn hamming_distance(u: &Strand, v: &Strand) -> Result<usize> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: u.len(),
            got: v.len(),
        });
    }
    Ok(u.ranks.iter().zip(&v.ranks).filter(|(a, b)| a != b).count())
}

/// First `cycles` symbols of `ACGTACGT...`.
pub fn alternating_supersequence(cycles: usize) -> Strand {
    Strand {
        ranks: (0..cycles).map(|k| (k % 4) as u8 + 1).collect(),
    }
}

/// Whether `w` is a subsequence of the first `cycles` symbols of the supersequence.
pub fn producible_within(w: &Strand, cycles: usize) -> bool {
    let sup = alternating_supersequence(cycles);
    let mut it = sup.ranks.iter();
    w.ranks.iter().all(|r| it.any(|s| s == r))
}

/// All `4^n` strands of length `n` in lexicographic order.
pub fn all_strands(n: usize) -> impl Iterator<Item = Strand> {
    let total = 4usize.pow(n as u32);
    (0..total).map(move |mut code| {
        let mut ranks = vec![0u8; n];
        for slot in ranks.iter_mut().rev() {
            *slot = (code % 4) as u8 + 1;
            code /= 4;
        }
        Strand { ranks }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Strand {
        Strand::parse(text).unwrap()
    }

    #[test]
    fn synthesis_time_examples() {
        assert_eq!(synthesis_time(&s("CTACG")).unwrap(), 7);
        assert_eq!(synthesis_time(&s("AGTA")).unwrap(), 5);
        assert_eq!(synthesis_time(&s("CTT")).unwrap(), 8);
        assert_eq!(synthesis_time(&s("TTTT")).unwrap(), 16);
        assert_eq!(synthesis_time(&s("ACGTACGT")).unwrap(), 8);
        assert!(matches!(
            synthesis_time(&s("")).unwrap_err(),
            Error::EmptyStrand
        ));
    }

    #[test]
    fn step_costs() {
        assert_eq!(step_cost(0, 1), 1);
        assert_eq!(step_cost(0, 4), 4);
        assert_eq!(step_cost(2, 4), 2);
        assert_eq!(step_cost(4, 1), 1);
        assert_eq!(step_cost(3, 3), 4);
    }

    #[test]
    fn hamming_examples() {
        assert_eq!(hamming_distance(&s("ACGT"), &s("ACGT")).unwrap(), 0);
        assert_eq!(hamming_distance(&s("ACGT"), &s("TCGA")).unwrap(), 2);
        assert_eq!(hamming_distance(&s("AAAA"), &s("CCCC")).unwrap(), 4);
        assert!(hamming_distance(&s("AC"), &s("ACG")).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!(s("acgt").to_string(), "ACGT");
        assert!(matches!(
            Strand::parse("ACXT").unwrap_err(),
            Error::InvalidSymbol('X')
        ));
        assert!(Strand::from_ranks(vec![1, 5]).is_err());
        assert_eq!(Strand::from_ranks(vec![4, 1]).unwrap().to_string(), "TA");
    }

    #[test]
    fn time_is_shortest_supersequence_prefix() {
        for n in 1..=6 {
            for w in all_strands(n) {
                let t = synthesis_time(&w).unwrap() as usize;
                assert!(n <= t && t <= 4 * n);
                assert!(producible_within(&w, t), "{w}");
                assert!(!producible_within(&w, t - 1), "{w}");
            }
        }
    }

    #[test]
    fn enumeration_order() {
        let words: Vec<String> = all_strands(2).map(|w| w.to_string()).collect();
        assert_eq!(words.len(), 16);
        assert_eq!(words[0], "AA");
        assert_eq!(words[1], "AC");
        assert_eq!(words[15], "TT");
        assert_eq!(all_strands(0).count(), 1);
    }
}
