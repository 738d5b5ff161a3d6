use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{domain, Error};

/// A finite word over the alphabet `{0, …, N−1}`.
///
/// Ordering is lexicographic with a proper prefix sorting before its
/// extensions, which is the enumeration order used throughout the crate.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(symbols: Vec<u32>) -> Self {
        Word(symbols)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[u32] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<u32> {
        self.0
    }

    pub fn first(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<u32> {
        self.0.last().copied()
    }

    /// `I|_n`, the first `n` symbols (the whole word if it is shorter).
    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n.min(self.0.len())].to_vec())
    }

    /// The word with one more symbol appended.
    pub fn child(&self, symbol: u32) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(symbol);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, symbol: u32) {
        self.0.push(symbol);
    }

    pub fn pop(&mut self) -> Option<u32> {
        self.0.pop()
    }

    /// `self ≺ other`.
    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.len() >= self.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    /// Neither word is a prefix of the other.
    pub fn incomparable(&self, other: &Word) -> bool {
        !self.is_prefix_of(other) && !other.is_prefix_of(self)
    }

    pub fn max_symbol(&self) -> Option<u32> {
        self.0.iter().copied().max()
    }
}

impl From<Vec<u32>> for Word {
    fn from(v: Vec<u32>) -> Self {
        Word(v)
    }
}

impl From<&[u32]> for Word {
    fn from(v: &[u32]) -> Self {
        Word(v.to_vec())
    }
}

/// Words over alphabets with at most ten symbols print as digit strings
/// (`"021"`); anything with a symbol ≥ 10 prints dot-prefixed (`".12.0"`).
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&s| s < 10) {
            for s in &self.0 {
                write!(f, "{s}")?;
            }
        } else {
            for s in &self.0 {
                write!(f, ".{s}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('.') {
            rest.split('.')
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| domain(alloc::format!("bad symbol {t:?} in word {s:?}")))
                })
                .collect::<Result<Vec<_>, _>>()
                .map(Word)
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| domain(alloc::format!("bad symbol {c:?} in word {s:?}")))
                })
                .collect::<Result<Vec<_>, _>>()
                .map(Word)
        }
    }
}

impl Word {
    pub fn to_label(&self) -> String {
        alloc::format!("{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn prefix_relations() {
        let a = Word::new(vec![0, 1]);
        let b = Word::new(vec![0, 1, 1]);
        let c = Word::new(vec![1]);
        assert!(a.is_prefix_of(&b));
        assert!(Word::empty().is_prefix_of(&a));
        assert!(!a.incomparable(&b));
        assert!(a.incomparable(&c));
        assert!(a < b && b < c);
    }

    #[test]
    fn labels_round_trip() {
        for w in [
            Word::empty(),
            Word::new(vec![0, 2, 1]),
            Word::new(vec![12, 0, 3]),
            Word::new(vec![10]),
        ] {
            let parsed: Word = w.to_label().parse().unwrap();
            assert_eq!(parsed, w);
        }
        assert_eq!(Word::new(vec![0, 2, 1]).to_label(), "021");
    }
}
