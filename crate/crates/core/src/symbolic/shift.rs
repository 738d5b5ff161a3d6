use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::Word;
use crate::error::{domain, Error, Result};

/// A one-sided shift of finite type on `N` symbols, given by an irreducible
/// and aperiodic 0/1 transition matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubshiftFT {
    alphabet: usize,
    transition: Vec<bool>,
}

impl SubshiftFT {
    /// Builds the subshift from the rows of its transition matrix. Entries
    /// must be 0 or 1 and some power of the matrix must be entrywise positive.
    pub fn new(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(domain("transition matrix is empty"));
        }
        let mut transition = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(domain(format!(
                    "transition row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &e in row {
                match e {
                    0 => transition.push(false),
                    1 => transition.push(true),
                    _ => return Err(domain(format!("transition entry {e} is not 0 or 1"))),
                }
            }
        }
        if !is_primitive(n, &transition) {
            return Err(Error::Structural(
                "transition matrix is not irreducible and aperiodic".into(),
            ));
        }
        Ok(SubshiftFT {
            alphabet: n,
            transition,
        })
    }

    /// The full shift on `n ≥ 1` symbols.
    pub fn full(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(domain("alphabet must be non-empty"));
        }
        Ok(SubshiftFT {
            alphabet: n,
            transition: vec![true; n * n],
        })
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn is_full(&self) -> bool {
        self.transition.iter().all(|&t| t)
    }

    /// `A_{ab} = 1`. Symbols must be in range.
    pub fn allows(&self, a: u32, b: u32) -> bool {
        self.transition[a as usize * self.alphabet + b as usize]
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.transition
            .chunks_exact(self.alphabet)
            .map(|r| r.iter().map(|&t| t as u8).collect())
            .collect()
    }

    pub fn check_symbols(&self, word: &[u32]) -> Result<()> {
        match word.iter().find(|&&s| s as usize >= self.alphabet) {
            Some(s) => Err(domain(format!(
                "symbol {s} outside alphabet of size {}",
                self.alphabet
            ))),
            None => Ok(()),
        }
    }

    /// Every adjacent pair of the word is allowed. The empty word is
    /// admissible for every subshift.
    pub fn is_admissible(&self, word: &Word) -> Result<bool> {
        self.check_symbols(word.symbols())?;
        Ok(self.admissible_slice(word.symbols()))
    }

    pub(crate) fn admissible_slice(&self, w: &[u32]) -> bool {
        w.windows(2).all(|p| self.allows(p[0], p[1]))
    }

    /// All admissible words of length `len`, in lexicographic order.
    pub fn admissible_words(&self, len: usize) -> Vec<Word> {
        let mut level = vec![Word::empty()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(level.len() * self.alphabet);
            for w in &level {
                for s in 0..self.alphabet as u32 {
                    if w.last().is_none_or(|l| self.allows(l, s)) {
                        next.push(w.child(s));
                    }
                }
            }
            level = next;
        }
        level
    }
}

/// Whether the 0/1 matrix (row-major, `n×n`) has an entrywise positive power.
///
/// A primitive matrix has `A^k > 0` for every `k ≥ (n−1)²+1`, so it suffices
/// to square until the exponent passes that bound.
pub fn is_primitive(n: usize, matrix: &[bool]) -> bool {
    if n == 0 || matrix.len() != n * n {
        return false;
    }
    let bound = (n - 1) * (n - 1) + 1;
    let words = n.div_ceil(64);
    // bit rows for fast boolean products
    let to_bits = |m: &[bool]| -> Vec<u64> {
        let mut bits = vec![0u64; n * words];
        for i in 0..n {
            for j in 0..n {
                if m[i * n + j] {
                    bits[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        bits
    };
    let mut power = to_bits(matrix);
    let mut exponent = 1usize;
    while exponent < bound {
        let mut sq = vec![0u64; n * words];
        for i in 0..n {
            for k in 0..n {
                if power[i * words + k / 64] >> (k % 64) & 1 == 1 {
                    for w in 0..words {
                        sq[i * words + w] |= power[k * words + w];
                    }
                }
            }
        }
        power = sq;
        exponent *= 2;
    }
    (0..n).all(|i| (0..n).all(|j| power[i * words + j / 64] >> (j % 64) & 1 == 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility_examples() {
        let full = SubshiftFT::full(2).unwrap();
        assert!(full.is_admissible(&Word::empty()).unwrap());
        assert!(full.is_admissible(&Word::new(vec![0, 1])).unwrap());

        let golden = SubshiftFT::new(&[vec![0, 1], vec![1, 1]]).unwrap();
        assert!(!golden.is_admissible(&Word::new(vec![0, 0])).unwrap());
        assert!(golden.is_admissible(&Word::empty()).unwrap());
        assert!(matches!(
            golden.is_admissible(&Word::new(vec![2])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn rejects_reducible_and_periodic() {
        // periodic: 0 -> 1 -> 0
        assert!(matches!(
            SubshiftFT::new(&[vec![0, 1], vec![1, 0]]),
            Err(Error::Structural(_))
        ));
        // reducible: nothing leaves symbol 1 towards 0
        assert!(matches!(
            SubshiftFT::new(&[vec![1, 1], vec![0, 1]]),
            Err(Error::Structural(_))
        ));
        assert!(matches!(
            SubshiftFT::new(&[vec![1, 2], vec![1, 1]]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn golden_mean_word_counts_are_fibonacci() {
        let golden = SubshiftFT::new(&[vec![0, 1], vec![1, 1]]).unwrap();
        let counts: Vec<usize> = (0..8).map(|n| golden.admissible_words(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 8, 13, 21, 34]);
    }
}
