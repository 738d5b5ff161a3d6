use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::potential::block_index;
use super::{LocallyConstantPotential, SubshiftFT};
use crate::error::{domain, Error, Result};

const POWER_TOLERANCE: f64 = 1e-13;
const MAX_POWER_STEPS: usize = 200_000;

/// The weighted transition graph on admissible `k`-blocks of a depth-`k`
/// potential. The edge `W → W′` (with `W′` the shift of `W` by one symbol)
/// carries `f(W)`, so that `p(−tf)` is the log spectral radius of the matrix
/// with entries `e^{−t f(W)}`.
#[derive(Debug, Clone)]
pub struct TransferMatrix {
    states: usize,
    // CSR rows: successors of each state
    offsets: Vec<usize>,
    targets: Vec<usize>,
    row_value: Vec<f64>,
    min_value: f64,
}

impl TransferMatrix {
    pub fn new(shift: &SubshiftFT, f: &LocallyConstantPotential) -> Result<Self> {
        if f.alphabet() != shift.alphabet() {
            return Err(domain("potential and subshift have different alphabets"));
        }
        let n = shift.alphabet();
        let k = f.depth();
        let blocks = shift.admissible_words(k);
        let mut state_of = hashbrown::HashMap::with_capacity(blocks.len());
        for (i, b) in blocks.iter().enumerate() {
            state_of.insert(block_index(n, b.symbols()), i);
        }
        let mut offsets = Vec::with_capacity(blocks.len() + 1);
        let mut targets = Vec::new();
        let mut row_value = Vec::with_capacity(blocks.len());
        offsets.push(0);
        for b in &blocks {
            let w = b.symbols();
            row_value.push(f.eval(w)?);
            let last = w[k - 1];
            for s in 0..n as u32 {
                if shift.allows(last, s) {
                    let mut next: Vec<u32> = w[1..].to_vec();
                    next.push(s);
                    targets.push(state_of[&block_index(n, &next)]);
                }
            }
            offsets.push(targets.len());
        }
        let tm = TransferMatrix {
            states: blocks.len(),
            offsets,
            targets,
            row_value,
            min_value: f.min_value(),
        };
        if !tm.is_irreducible() {
            return Err(Error::Structural("block transition graph is not irreducible".into()));
        }
        Ok(tm)
    }

    pub fn states(&self) -> usize {
        self.states
    }

    fn is_irreducible(&self) -> bool {
        let reach = |forward: bool| -> usize {
            let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.states];
            for u in 0..self.states {
                for &v in &self.targets[self.offsets[u]..self.offsets[u + 1]] {
                    if forward {
                        adj[u].push(v);
                    } else {
                        adj[v].push(u);
                    }
                }
            }
            let mut seen = vec![false; self.states];
            let mut stack = vec![0];
            seen[0] = true;
            let mut count = 1;
            while let Some(u) = stack.pop() {
                for &v in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        count += 1;
                        stack.push(v);
                    }
                }
            }
            count
        };
        reach(true) == self.states && reach(false) == self.states
    }

    /// `p(−tf)`.
    ///
    /// Power iteration on the shifted weights `e^{−t(f−f_min)}`, stopped once
    /// the Collatz–Wielandt bounds `min (Mv)_i/v_i ≤ λ ≤ max (Mv)_i/v_i` agree
    /// to a relative `1e−13`.
    pub fn pressure(&self, t: f64) -> f64 {
        let weight: Vec<f64> = self
            .row_value
            .iter()
            .map(|&v| (-t * (v - self.min_value)).exp())
            .collect();
        let mut v = vec![1.0; self.states];
        let mut w = vec![0.0; self.states];
        let mut estimate = 1.0;
        for _ in 0..MAX_POWER_STEPS {
            for u in 0..self.states {
                let s: f64 = self.targets[self.offsets[u]..self.offsets[u + 1]]
                    .iter()
                    .map(|&j| v[j])
                    .sum();
                w[u] = weight[u] * s;
            }
            let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
            for (wi, vi) in w.iter().zip(&v) {
                let q = wi / vi;
                lo = lo.min(q);
                hi = hi.max(q);
            }
            estimate = (lo * hi).sqrt();
            let scale = w.iter().fold(0.0f64, |m, &x| m.max(x));
            for (vi, wi) in v.iter_mut().zip(&w) {
                // keep every entry strictly positive so the ratios stay defined
                *vi = (wi / scale).max(f64::MIN_POSITIVE);
            }
            if hi - lo <= POWER_TOLERANCE * hi {
                break;
            }
        }
        estimate.ln() - t * self.min_value
    }

    /// The zero of `t ↦ p(−tf)`. Requires `f > 0`.
    pub fn bowen_root(&self) -> Result<f64> {
        if !(self.min_value > 0.0) {
            return Err(domain("potential must be strictly positive for a pressure root"));
        }
        let p0 = self.pressure(0.0);
        if p0 <= 0.0 {
            return Ok(0.0);
        }
        let mut lo = 0.0;
        let mut hi = 1.0;
        while self.pressure(hi) >= 0.0 {
            lo = hi;
            hi *= 2.0;
        }
        while hi - lo > 1e-14 * hi {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.pressure(mid) >= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let (plo, phi) = (self.pressure(lo), self.pressure(hi));
        let root = if plo > -phi { hi } else { lo };
        let residual = self.pressure(root).abs();
        if residual > 1e-10 {
            return Err(Error::Precondition(alloc::format!(
                "pressure root did not converge (|p| = {residual:e})"
            )));
        }
        Ok(root)
    }
}

/// `p(−tf)`, the topological pressure of `−tf` on the subshift.
pub fn pressure(shift: &SubshiftFT, f: &LocallyConstantPotential, t: f64) -> Result<f64> {
    Ok(TransferMatrix::new(shift, f)?.pressure(t))
}

/// The unique `t*` with `p(−t*f) = 0`, by bracket doubling from `T = 1` and
/// bisection.
pub fn bowen_root(shift: &SubshiftFT, f: &LocallyConstantPotential) -> Result<f64> {
    if !f.is_positive() {
        return Err(domain("potential must be strictly positive for a pressure root"));
    }
    TransferMatrix::new(shift, f)?.bowen_root()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::Word;

    fn bisect(mut lo: f64, mut hi: f64, g: impl Fn(f64) -> f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn pressure_examples() {
        let s3 = SubshiftFT::full(3).unwrap();
        let zero = LocallyConstantPotential::constant(&s3, 0.0).unwrap();
        assert!((pressure(&s3, &zero, 2.7).unwrap() - 3f64.ln()).abs() < 1e-13);
        let log2 = LocallyConstantPotential::constant(&s3, 2f64.ln()).unwrap();
        assert!((pressure(&s3, &log2, 1.0).unwrap() - 1.5f64.ln()).abs() < 1e-13);

        let s2 = SubshiftFT::full(2).unwrap();
        let f = LocallyConstantPotential::geometric(&s2, &[0.5, 1.0 / 3.0]).unwrap();
        let expected = (2f64.powf(-0.5) + 3f64.powf(-0.5)).ln();
        assert!((pressure(&s2, &f, 0.5).unwrap() - expected).abs() < 1e-13);
        assert!((expected - 0.25033610016656127).abs() < 1e-15);
    }

    #[test]
    fn golden_mean_entropy() {
        let golden = SubshiftFT::new(&[vec![0, 1], vec![1, 1]]).unwrap();
        let zero = LocallyConstantPotential::constant(&golden, 0.0).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((pressure(&golden, &zero, 1.0).unwrap() - phi.ln()).abs() < 1e-13);
    }

    #[test]
    fn depth_two_matches_symbol_weights() {
        // f(ab) = g(a) written at depth two must give the same pressure
        let s2 = SubshiftFT::full(2).unwrap();
        let g = [0.3, 1.1];
        let f1 = LocallyConstantPotential::from_symbol_values(&s2, &g).unwrap();
        let f2 = LocallyConstantPotential::new(
            &s2,
            2,
            s2.admissible_words(2)
                .into_iter()
                .map(|w: Word| {
                    let v = g[w.symbols()[0] as usize];
                    (w, v)
                }),
        )
        .unwrap();
        for t in [0.0, 0.4, 1.7] {
            let a = pressure(&s2, &f1, t).unwrap();
            let b = pressure(&s2, &f2, t).unwrap();
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn bowen_root_examples() {
        let s3 = SubshiftFT::full(3).unwrap();
        let f = LocallyConstantPotential::constant(&s3, 2f64.ln()).unwrap();
        let t = bowen_root(&s3, &f).unwrap();
        assert!((t - 3f64.ln() / 2f64.ln()).abs() < 1e-9);

        let s2 = SubshiftFT::full(2).unwrap();
        let f = LocallyConstantPotential::geometric(&s2, &[0.5, 1.0 / 3.0]).unwrap();
        let oracle = bisect(0.0, 1.0, |s| 2f64.powf(-s) + 3f64.powf(-s) - 1.0);
        let t = bowen_root(&s2, &f).unwrap();
        assert!((t - oracle).abs() < 1e-10);
        assert!((t - 0.7879).abs() < 1e-4);
        assert!(pressure(&s2, &f, t).unwrap().abs() <= 1e-10);

        let f = LocallyConstantPotential::constant(&s2, 2f64.ln()).unwrap();
        assert!((bowen_root(&s2, &f).unwrap() - 1.0).abs() < 1e-12);

        let bad = LocallyConstantPotential::from_symbol_values(&s2, &[1.0, 0.0]).unwrap();
        assert!(matches!(bowen_root(&s2, &bad), Err(Error::Domain(_))));
    }

    #[test]
    fn root_needs_bracket_growth() {
        // tiny f makes the root large, so T has to double several times
        let s4 = SubshiftFT::full(4).unwrap();
        let f = LocallyConstantPotential::constant(&s4, 0.01).unwrap();
        let t = bowen_root(&s4, &f).unwrap();
        assert!((t - 4f64.ln() / 0.01).abs() < 1e-9 * t);
    }
}
