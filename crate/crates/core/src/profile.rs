//! Target profiles: a multiset of disjoint even cycles.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which lower bound applies to cycle lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every cycle has length at least 6.
    #[default]
    Theorem,
    /// Every cycle has length at least 4.
    Conjecture,
}

impl Mode {
    pub fn min_length(self) -> usize {
        match self {
            Mode::Theorem => 6,
            Mode::Conjecture => 4,
        }
    }
}

impl FromStr for Mode {
    type Err = ProfileError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "theorem" => Ok(Mode::Theorem),
            "conjecture" => Ok(Mode::Conjecture),
            other => Err(ProfileError::UnknownMode(other.to_string())),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Theorem => "theorem",
            Mode::Conjecture => "conjecture",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProfileError {
    #[error("profile is empty")]
    Empty,
    #[error("entry {index}: length {length} is odd")]
    Odd { index: usize, length: usize },
    #[error("entry {index}: length {length} is below the {mode} minimum of {min}")]
    TooShort {
        index: usize,
        length: usize,
        mode: Mode,
        min: usize,
    },
    #[error("cannot parse profile entry {0:?}")]
    BadEntry(String),
    #[error("unknown mode {0:?} (expected theorem or conjecture)")]
    UnknownMode(String),
    #[error("half-length s must be at least 3, got {0}")]
    HalfLengthTooSmall(usize),
    #[error("cycle count k must be at least 1")]
    ZeroCount,
}

/// Lengths `c_1 >= c_2 >= .. >= c_k` of the target cycles.
///
/// Entries are kept sorted in descending order; the last entry is the cycle
/// the packer builds last, in the remainder of the host.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleProfile {
    lengths: Vec<usize>,
    mode: Mode,
}

impl CycleProfile {
    pub fn new(lengths: &[usize], mode: Mode) -> Result<Self, ProfileError> {
        if lengths.is_empty() {
            return Err(ProfileError::Empty);
        }
        for (index, &length) in lengths.iter().enumerate() {
            if length % 2 == 1 {
                return Err(ProfileError::Odd { index, length });
            }
            if length < mode.min_length() {
                return Err(ProfileError::TooShort {
                    index,
                    length,
                    mode,
                    min: mode.min_length(),
                });
            }
        }
        let mut lengths = lengths.to_vec();
        // stable, so equal entries keep input order
        lengths.sort_by(|a, b| b.cmp(a));
        Ok(CycleProfile { lengths, mode })
    }

    /// Parses `"6,6,8"`.
    pub fn parse(text: &str, mode: Mode) -> Result<Self, ProfileError> {
        let lengths = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| ProfileError::BadEntry(t.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(&lengths, mode)
    }

    /// `k` copies of `2s`.
    pub fn wang(s: usize, k: usize) -> Result<Self, ProfileError> {
        if s < 3 {
            return Err(ProfileError::HalfLengthTooSmall(s));
        }
        if k == 0 {
            return Err(ProfileError::ZeroCount);
        }
        Self::new(&vec![2 * s; k], Mode::Theorem)
    }

    /// Sorted descending.
    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Number of cycles `k`.
    pub fn k(&self) -> usize {
        self.lengths.len()
    }

    /// Total order `n`.
    pub fn n(&self) -> usize {
        self.lengths.iter().sum()
    }

    /// `n/2 - k + 1`, the minimum degree that guarantees a packing.
    pub fn degree_threshold(&self) -> usize {
        self.n() / 2 + 1 - self.k()
    }

    /// The profile without its last (smallest) entry, or `None` for `k = 1`.
    pub fn prefix(&self) -> Option<CycleProfile> {
        if self.k() == 1 {
            None
        } else {
            Some(CycleProfile {
                lengths: self.lengths[..self.k() - 1].to_vec(),
                mode: self.mode,
            })
        }
    }
}

impl fmt::Display for CycleProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lengths.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_profile_examples() {
        let p = CycleProfile::new(&[6], Mode::Theorem).unwrap();
        assert_eq!((p.k(), p.n()), (1, 6));
        let p = CycleProfile::new(&[6, 6, 8], Mode::Theorem).unwrap();
        assert_eq!((p.k(), p.n()), (3, 20));
        assert_eq!(p.lengths(), &[8, 6, 6]);
        assert_eq!(
            CycleProfile::new(&[4, 6], Mode::Theorem),
            Err(ProfileError::TooShort {
                index: 0,
                length: 4,
                mode: Mode::Theorem,
                min: 6
            })
        );
        let p = CycleProfile::new(&[4, 6], Mode::Conjecture).unwrap();
        assert_eq!(p.n(), 10);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(CycleProfile::new(&[], Mode::Theorem), Err(ProfileError::Empty));
        assert_eq!(
            CycleProfile::new(&[6, 7], Mode::Theorem),
            Err(ProfileError::Odd { index: 1, length: 7 })
        );
        assert!(CycleProfile::new(&[2], Mode::Conjecture).is_err());
        assert!(CycleProfile::parse("6,x", Mode::Theorem).is_err());
        assert_eq!(
            CycleProfile::parse("6, 8", Mode::Theorem).unwrap().lengths(),
            &[8, 6]
        );
        assert!("other".parse::<Mode>().is_err());
        assert_eq!("conjecture".parse::<Mode>().unwrap(), Mode::Conjecture);
    }

    #[test]
    fn threshold_examples() {
        let t = |l: &[usize], m| CycleProfile::new(l, m).unwrap().degree_threshold();
        assert_eq!(t(&[6], Mode::Theorem), 3);
        assert_eq!(t(&[6, 6], Mode::Theorem), 5);
        assert_eq!(t(&[4, 6], Mode::Conjecture), 4);
    }

    #[test]
    fn wang_examples() {
        let p = CycleProfile::wang(3, 2).unwrap();
        assert_eq!(p.lengths(), &[6, 6]);
        assert_eq!(p.degree_threshold(), 5);
        assert_eq!(CycleProfile::wang(4, 1).unwrap().degree_threshold(), 4);
        assert_eq!(CycleProfile::wang(3, 1).unwrap().degree_threshold(), 3);
        assert_eq!(CycleProfile::wang(2, 1), Err(ProfileError::HalfLengthTooSmall(2)));
    }

    #[test]
    fn wang_threshold_matches_closed_form() {
        for s in 3..=10 {
            for k in 1..=10 {
                let p = CycleProfile::wang(s, k).unwrap();
                assert_eq!(p.degree_threshold(), (s - 1) * k + 1, "s={s} k={k}");
            }
        }
    }

    #[test]
    fn prefix_drops_smallest() {
        let p = CycleProfile::new(&[6, 10, 8], Mode::Theorem).unwrap();
        assert_eq!(p.prefix().unwrap().lengths(), &[10, 8]);
        assert!(CycleProfile::new(&[6], Mode::Theorem).unwrap().prefix().is_none());
    }
}
