use alloc::vec;
use alloc::vec::Vec;

use super::ifs::CellMap;
use super::{Ifs, PointCloud};
use crate::error::{domain, Error, Result};
use crate::symbolic::Word;

/// Default cap on the number of emitted points.
pub const DEFAULT_POINT_BUDGET: u64 = 20_000_000;

/// Relative slack on the cut test `r_I·diam₀ ≤ δ`, so that cells whose size
/// equals `δ` in exact arithmetic are not split by rounding.
const CUT_SLACK: f64 = 1e-9;

/// `δ`-dense sample of the attractor: `φ_I(seed)` for every word with
/// `r_I·diam₀ ≤ δ < r_{I⁻}·diam₀`, in lexicographic order of `I`.
///
/// The recorded resolution is `δ·max(1, F/diam₀)` with `F` the largest
/// distance from the seed to the attractor, which bounds how far any point of
/// `K_I` is from `φ_I(seed)`.
pub fn sample_attractor(ifs: &Ifs, delta: f64, seed: &[f64]) -> Result<PointCloud> {
    sample_cell(ifs, &Word::empty(), delta, seed, DEFAULT_POINT_BUDGET)
}

/// The same sample restricted to the cell `K_I = φ_I(K)`.
pub fn sample_cell(
    ifs: &Ifs,
    cell: &Word,
    delta: f64,
    seed: &[f64],
    budget: u64,
) -> Result<PointCloud> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(domain(alloc::format!("sampling resolution {delta} must be positive")));
    }
    let d = ifs.dim();
    if seed.len() != d {
        return Err(domain("seed dimension does not match the IFS"));
    }
    let (_, diam0) = ifs.diameter_bounds();
    let (_, far) = ifs.farthest_bounds(seed);
    let cut = delta * (1.0 + CUT_SLACK);

    let root = ifs.word_map(cell)?;
    let mut out = Vec::new();
    let mut emitted = 0u64;
    let mut emit = |m: &CellMap, out: &mut Vec<f64>| -> Result<()> {
        emitted += 1;
        if emitted > budget {
            return Err(Error::Budget {
                what: "sample point",
                limit: budget,
                partial: (emitted - 1) as f64,
            });
        }
        let start = out.len();
        out.resize(start + d, 0.0);
        m.apply_into(seed, &mut out[start..]);
        Ok(())
    };

    if root.ratio * diam0 <= cut {
        emit(&root, &mut out)?;
    } else {
        // explicit stack of (map, next child to expand)
        let mut stack: Vec<(CellMap, usize)> = vec![(root, 0)];
        while let Some(top) = stack.last_mut() {
            if top.1 == ifs.len() {
                stack.pop();
                continue;
            }
            let i = top.1;
            top.1 += 1;
            let child = top.0.then(&ifs.maps()[i]);
            if child.ratio * diam0 <= cut {
                emit(&child, &mut out)?;
            } else {
                stack.push((child, 0));
            }
        }
    }
    let scale = if diam0 > 0.0 { (far / diam0).max(1.0) } else { 1.0 };
    let resolution = if diam0 > 0.0 {
        delta * scale
    } else {
        delta.max(far)
    };
    PointCloud::new(d, out, resolution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Similarity;

    fn cantor() -> Ifs {
        Ifs::on_line(&[(1.0 / 3.0, 0.0), (1.0 / 3.0, 2.0 / 3.0)]).unwrap()
    }

    fn sierpinski() -> Ifs {
        Ifs::new(
            [[0.0, 0.0], [0.5, 0.0], [0.25, 0.75f64.sqrt() / 2.0]]
                .iter()
                .map(|t| Similarity::scaling(0.5, t.to_vec()).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn cut_rule_counts() {
        let c = sample_attractor(&cantor(), 1.0 / 27.0, &[0.0]).unwrap();
        assert_eq!(c.len(), 8);
        let expected: Vec<f64> = (0..8)
            .map(|w: u32| (0..3).map(|k| ((w >> (2 - k)) & 1) as f64 * 2.0 / 3f64.powi(k + 1)).sum())
            .collect();
        for (p, e) in c.points().zip(&expected) {
            assert!((p[0] - e).abs() < 1e-15);
        }
        assert_eq!(sample_attractor(&cantor(), 2.0, &[0.0]).unwrap().len(), 1);
        let s = sample_attractor(&sierpinski(), 2f64.powi(-10), &[0.0, 0.0]).unwrap();
        assert_eq!(s.len(), 59049);
        assert_eq!(sample_attractor(&sierpinski(), 0.5, &[0.0, 0.0]).unwrap().len(), 3);
        assert!(sample_attractor(&cantor(), 0.0, &[0.0]).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let r = sample_cell(&cantor(), &Word::empty(), 1e-4, &[0.0], 100);
        assert!(matches!(r, Err(Error::Budget { limit: 100, .. })));
    }

    #[test]
    fn resolution_accounts_for_the_seed() {
        let c = sample_attractor(&cantor(), 0.01, &[0.5]).unwrap();
        assert_eq!(c.resolution(), 0.01);
        let c = sample_attractor(&cantor(), 0.01, &[3.0]).unwrap();
        assert!((c.resolution() - 0.03).abs() < 1e-12);
    }
}
