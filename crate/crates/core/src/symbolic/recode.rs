use alloc::vec::Vec;

use super::{LocallyConstantPotential, SubshiftFT, Word};
use crate::error::{domain, Result};

/// The `m`-block presentation of a subshift and potential.
#[derive(Debug, Clone)]
pub struct PowerRecoding {
    pub shift: SubshiftFT,
    pub potential: LocallyConstantPotential,
    /// `blocks[i]` is the original `m`-word named by new symbol `i`.
    pub blocks: Vec<Word>,
}

impl PowerRecoding {
    /// Spells a word over the new alphabet in the original symbols.
    pub fn expand(&self, word: &Word) -> Word {
        let mut out = Vec::with_capacity(word.len() * self.blocks.first().map_or(0, Word::len));
        for &s in word.symbols() {
            out.extend_from_slice(self.blocks[s as usize].symbols());
        }
        Word::new(out)
    }
}

/// The `m`-block presentation of a subshift: the admissible `m`-words in
/// lexicographic order, with `U → V` allowed iff the last symbol of `U` may
/// precede the first of `V`.
pub fn power_shift(shift: &SubshiftFT, m: usize) -> Result<(SubshiftFT, Vec<Word>)> {
    if m < 1 {
        return Err(domain("power must be at least 1"));
    }
    let blocks = shift.admissible_words(m);
    let rows: Vec<Vec<u8>> = blocks
        .iter()
        .map(|u| {
            let last = u.last().unwrap_or(0);
            blocks
                .iter()
                .map(|v| shift.allows(last, v.first().unwrap_or(0)) as u8)
                .collect()
        })
        .collect();
    Ok((SubshiftFT::new(&rows)?, blocks))
}

/// Recodes `(Σ_A, σ, f)` as `(Σ_{A′}, σ^m, S_m f)`.
///
/// The new alphabet is that of [`power_shift`]. A depth-`k` potential becomes one of depth `1 + ⌈(k−1)/m⌉`.
pub fn power_recode(
    shift: &SubshiftFT,
    f: &LocallyConstantPotential,
    m: usize,
) -> Result<PowerRecoding> {
    if m < 1 {
        return Err(domain("power must be at least 1"));
    }
    if f.alphabet() != shift.alphabet() {
        return Err(domain("potential and subshift have different alphabets"));
    }
    let (new_shift, blocks) = power_shift(shift, m)?;

    let k = f.depth();
    let new_depth = 1 + (k - 1).div_ceil(m);
    let mut values = Vec::new();
    for w in new_shift.admissible_words(new_depth) {
        let mut spelled = Vec::with_capacity(new_depth * m);
        for &s in w.symbols() {
            spelled.extend_from_slice(blocks[s as usize].symbols());
        }
        let v = f.birkhoff_sum(&Word::new(spelled), m)?;
        values.push((w, v));
    }
    let potential = LocallyConstantPotential::new(&new_shift, new_depth, values)?;
    Ok(PowerRecoding {
        shift: new_shift,
        potential,
        blocks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::bowen_root;

    #[test]
    fn identity_for_m_one() {
        let s = SubshiftFT::new(&[alloc::vec![1, 1], alloc::vec![1, 0]]).unwrap();
        let f = LocallyConstantPotential::from_symbol_values(&s, &[0.4, 0.9]).unwrap();
        let r = power_recode(&s, &f, 1).unwrap();
        assert_eq!(r.shift, s);
        assert_eq!(r.potential, f);
    }

    #[test]
    fn constant_potential_cubed() {
        let s = SubshiftFT::full(2).unwrap();
        let f = LocallyConstantPotential::constant(&s, 2f64.ln()).unwrap();
        let r = power_recode(&s, &f, 3).unwrap();
        assert_eq!(r.shift.alphabet(), 8);
        assert!(r.shift.is_full());
        for v in r.potential.values().values() {
            assert!((v - 3.0 * 2f64.ln()).abs() < 1e-15);
        }
    }

    #[test]
    fn squared_two_three() {
        let s = SubshiftFT::full(2).unwrap();
        let f = LocallyConstantPotential::geometric(&s, &[0.5, 1.0 / 3.0]).unwrap();
        let r = power_recode(&s, &f, 2).unwrap();
        assert_eq!(r.shift.alphabet(), 4);
        let logs = [2f64.ln(), 3f64.ln()];
        for (w, v) in r.potential.values() {
            let b = r.blocks[w.symbols()[0] as usize].symbols().to_vec();
            assert!((v - logs[b[0] as usize] - logs[b[1] as usize]).abs() < 1e-15);
        }
        let t0 = bowen_root(&s, &f).unwrap();
        let t2 = bowen_root(&r.shift, &r.potential).unwrap();
        assert!((t0 - t2).abs() < 1e-9);
    }

    #[test]
    fn deep_potential_on_golden_mean() {
        let s = SubshiftFT::new(&[alloc::vec![0, 1], alloc::vec![1, 1]]).unwrap();
        let f = LocallyConstantPotential::new(
            &s,
            3,
            s.admissible_words(3).into_iter().map(|w| {
                let v = 0.5 + w.symbols().iter().map(|&x| x as f64).sum::<f64>() * 0.3;
                (w, v)
            }),
        )
        .unwrap();
        let t0 = bowen_root(&s, &f).unwrap();
        for m in 1..=3 {
            let r = power_recode(&s, &f, m).unwrap();
            assert_eq!(r.potential.depth(), 1 + 2usize.div_ceil(m));
            let t = bowen_root(&r.shift, &r.potential).unwrap();
            assert!((t - t0).abs() < 1e-9, "m = {m}: {t} vs {t0}");
        }
        assert!(power_recode(&s, &f, 0).is_err());
    }
}
