use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::{SubshiftFT, Word};
use crate::error::{domain, Error, Result};

/// A potential `f(ω)` that only depends on the first `depth` symbols of `ω`.
///
/// Values are stored densely, indexed by the base-`N` value of the
/// determining block; blocks that are not admissible hold `NaN`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocallyConstantPotential {
    alphabet: usize,
    depth: usize,
    values: Vec<f64>,
}

impl LocallyConstantPotential {
    /// Builds the potential from values on the admissible words of length
    /// `depth`. Every admissible block must get exactly one finite value and
    /// no inadmissible block may appear.
    pub fn new(
        shift: &SubshiftFT,
        depth: usize,
        values: impl IntoIterator<Item = (Word, f64)>,
    ) -> Result<Self> {
        if depth == 0 {
            return Err(domain("potential depth must be at least 1"));
        }
        let n = shift.alphabet();
        let size = checked_pow(n, depth)?;
        let mut dense = vec![f64::NAN; size];
        for (w, v) in values {
            if w.len() != depth {
                return Err(domain(format!(
                    "potential word {w} has length {}, expected {depth}",
                    w.len()
                )));
            }
            if !shift.is_admissible(&w)? {
                return Err(domain(format!("potential word {w} is not admissible")));
            }
            if !v.is_finite() {
                return Err(domain(format!("potential value {v} at {w} is not finite")));
            }
            let idx = block_index(n, w.symbols());
            if !dense[idx].is_nan() {
                return Err(domain(format!("potential word {w} given twice")));
            }
            dense[idx] = v;
        }
        for w in shift.admissible_words(depth) {
            if dense[block_index(n, w.symbols())].is_nan() {
                return Err(domain(format!("potential has no value for word {w}")));
            }
        }
        Ok(LocallyConstantPotential {
            alphabet: n,
            depth,
            values: dense,
        })
    }

    /// Depth-one potential `f(ω) = values[ω₁]`.
    pub fn from_symbol_values(shift: &SubshiftFT, values: &[f64]) -> Result<Self> {
        if values.len() != shift.alphabet() {
            return Err(domain(format!(
                "{} symbol values for an alphabet of size {}",
                values.len(),
                shift.alphabet()
            )));
        }
        Self::new(
            shift,
            1,
            values
                .iter()
                .enumerate()
                .map(|(i, &v)| (Word::new(vec![i as u32]), v)),
        )
    }

    /// `f ≡ c` at depth one.
    pub fn constant(shift: &SubshiftFT, c: f64) -> Result<Self> {
        Self::from_symbol_values(shift, &vec![c; shift.alphabet()])
    }

    /// The geometric potential `f(ω) = log(1/r_{ω₁})` of a list of ratios.
    pub fn geometric(shift: &SubshiftFT, ratios: &[f64]) -> Result<Self> {
        if let Some(r) = ratios.iter().find(|&&r| !(r > 0.0 && r < 1.0)) {
            return Err(domain(format!("contraction ratio {r} outside (0,1)")));
        }
        let logs: Vec<f64> = ratios.iter().map(|&r| -r.ln()).collect();
        Self::from_symbol_values(shift, &logs)
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// `(block, value)` pairs in lexicographic order of the block.
    pub fn values(&self) -> BTreeMap<Word, f64> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_nan())
            .map(|(i, &v)| (block_word(self.alphabet, self.depth, i), v))
            .collect()
    }

    fn defined(&self) -> impl Iterator<Item = f64> + '_ {
        self.values.iter().copied().filter(|v| !v.is_nan())
    }

    pub fn min_value(&self) -> f64 {
        self.defined().fold(f64::INFINITY, f64::min)
    }

    pub fn max_value(&self) -> f64 {
        self.defined().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn is_positive(&self) -> bool {
        self.min_value() > 0.0
    }

    /// The distinct values, sorted ascending.
    pub fn distinct_values(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.defined().collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    }

    /// `f` on a sequence starting with `block` (`|block| ≥ depth`).
    pub fn eval(&self, block: &[u32]) -> Result<f64> {
        if block.len() < self.depth {
            return Err(Error::InsufficientContext {
                needed: self.depth,
                available: block.len(),
            });
        }
        if let Some(s) = block[..self.depth]
            .iter()
            .find(|&&s| s as usize >= self.alphabet)
        {
            return Err(domain(format!("symbol {s} outside alphabet")));
        }
        let v = self.values[block_index(self.alphabet, &block[..self.depth])];
        if v.is_nan() {
            return Err(domain("potential evaluated on an inadmissible block"));
        }
        Ok(v)
    }

    /// Value lookup without checks, for hot loops over admissible blocks.
    pub(crate) fn eval_index(&self, index: usize) -> f64 {
        self.values[index]
    }

    /// `S_n f(ω) = f(ω) + f(σω) + … + f(σ^{n−1}ω)` for any `ω` starting with
    /// `word`. Needs `|word| ≥ n + depth − 1`.
    pub fn birkhoff_sum(&self, word: &Word, n: usize) -> Result<f64> {
        if n == 0 {
            return Ok(0.0);
        }
        let needed = n + self.depth - 1;
        if word.len() < needed {
            return Err(Error::InsufficientContext {
                needed,
                available: word.len(),
            });
        }
        let w = word.symbols();
        let mut sum = 0.0;
        for j in 0..n {
            sum += self.eval(&w[j..])?;
        }
        Ok(sum)
    }

    /// `var_n f`: the largest difference of `f` on two sequences sharing
    /// their first `n` symbols.
    pub fn variation(&self, n: usize) -> f64 {
        if n >= self.depth {
            return 0.0;
        }
        // indices sharing the leading n symbols form contiguous runs
        let run = checked_pow(self.alphabet, self.depth - n).unwrap_or(usize::MAX);
        self.values
            .chunks(run)
            .map(|c| {
                let (lo, hi) = c
                    .iter()
                    .filter(|v| !v.is_nan())
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                        (lo.min(v), hi.max(v))
                    });
                if lo <= hi {
                    hi - lo
                } else {
                    0.0
                }
            })
            .fold(0.0, f64::max)
    }
}

pub(crate) fn checked_pow(n: usize, k: usize) -> Result<usize> {
    let mut size = 1usize;
    for _ in 0..k {
        size = size
            .checked_mul(n)
            .filter(|&s| s <= 1 << 26)
            .ok_or_else(|| domain(format!("{n}^{k} blocks is too many to tabulate")))?;
    }
    Ok(size)
}

pub(crate) fn block_index(n: usize, block: &[u32]) -> usize {
    block.iter().fold(0, |acc, &s| acc * n + s as usize)
}

pub(crate) fn block_word(n: usize, depth: usize, mut index: usize) -> Word {
    let mut v = vec![0u32; depth];
    for slot in v.iter_mut().rev() {
        *slot = (index % n) as u32;
        index /= n;
    }
    Word::new(v)
}
