//! Rate values tagged with how they were obtained.

use std::collections::BTreeSet;
use std::fmt;

/// Provenance of a reported rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flag {
    /// The ball-size exponent sits on its saturated branch (twice the capacity).
    Saturated,
    /// A negative bound was clamped to zero.
    Floored,
    /// The ball-size exponent is an upper bound, not an exact rate.
    UpperBound,
    /// The optimum of a crude bound sits on the boundary of the parameter range.
    Boundary,
    /// Zero-radius limit: only diagonal pairs are counted.
    Diagonal,
}

impl Flag {
    pub fn token(self) -> &'static str {
        match self {
            Flag::Saturated => "saturated",
            Flag::Floored => "floored",
            Flag::UpperBound => "upper-bound",
            Flag::Boundary => "boundary",
            Flag::Diagonal => "diagonal",
        }
    }

    pub fn from_token(token: &str) -> Option<Flag> {
        Flag::ALL.into_iter().find(|f| f.token() == token)
    }

    pub const ALL: [Flag; 5] = [
        Flag::Saturated,
        Flag::Floored,
        Flag::UpperBound,
        Flag::Boundary,
        Flag::Diagonal,
    ];
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Flags(BTreeSet<Flag>);

impl Flags {
    pub fn none() -> Self {
        Flags::default()
    }

    pub fn insert(&mut self, flag: Flag) {
        self.0.insert(flag);
    }

    pub fn with(mut self, flag: Flag) -> Self {
        self.insert(flag);
        self
    }

    pub fn contains(&self, flag: Flag) -> bool {
        self.0.contains(&flag)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Flag> + '_ {
        self.0.iter().copied()
    }

    pub fn extend(&mut self, other: &Flags) {
        self.0.extend(other.iter());
    }
}

impl fmt::Display for Flags {
    /// Semicolon-joined tokens, e.g. `saturated;floored`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens: Vec<&str> = self.iter().map(Flag::token).collect();
        f.write_str(&tokens.join(";"))
    }
}

impl std::str::FromStr for Flags {
    type Err = crate::Error;

    /// Parses the `;`-joined token list written by `Display`.
    fn from_str(s: &str) -> crate::Result<Self> {
        let mut flags = Flags::none();
        for token in s.split(';').filter(|t| !t.is_empty()) {
            let flag = Flag::from_token(token)
                .ok_or_else(|| crate::Error::InvalidSpec(format!("unknown flag `{token}`")))?;
            flags.insert(flag);
        }
        Ok(flags)
    }
}

/// A rate in bits per symbol with its provenance flags.
#[derive(Debug, Clone, PartialEq)]
pub struct Rate {
    pub value: f64,
    pub flags: Flags,
}

impl Rate {
    pub fn plain(value: f64) -> Self {
        Rate {
            value,
            flags: Flags::none(),
        }
    }

    pub fn flagged(value: f64, flag: Flag) -> Self {
        Rate {
            value,
            flags: Flags::none().with(flag),
        }
    }

    /// Clamps a negative value to zero and records it.
    pub fn floored(mut self) -> Self {
        if self.value < 0.0 {
            self.value = 0.0;
            self.flags.insert(Flag::Floored);
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_are_sorted_and_joined() {
        let flags = Flags::none().with(Flag::Floored).with(Flag::Saturated);
        assert_eq!(flags.to_string(), "saturated;floored");
        assert_eq!(Flags::none().to_string(), "");
    }

    #[test]
    fn tokens_round_trip() {
        let flags = Flags::none().with(Flag::UpperBound).with(Flag::Diagonal);
        assert_eq!(flags.to_string().parse::<Flags>().unwrap(), flags);
        assert_eq!("".parse::<Flags>().unwrap(), Flags::none());
        assert!("bogus".parse::<Flags>().is_err());
        for flag in Flag::ALL {
            assert_eq!(Flag::from_token(flag.token()), Some(flag));
        }
    }

    #[test]
    fn flooring() {
        let r = Rate::plain(-0.2).floored();
        assert_eq!(r.value, 0.0);
        assert!(r.flags.contains(Flag::Floored));
        assert!(Rate::plain(0.3).floored().flags.is_empty());
    }
}
