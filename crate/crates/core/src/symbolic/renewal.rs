use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::potential::block_index;
use super::{LocallyConstantPotential, SubshiftFT, Word};
use crate::asymptotics::spectral::{scan_periods, PeriodScan, PEAK_TO_MEDIAN};
use crate::error::{domain, Error, Result};

/// Default cap on visited enumeration nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Width of the trailing window of `a` used for the variation statistic:
/// one decade of `e^{−a}`.
pub const RENEWAL_WINDOW: f64 = core::f64::consts::LN_10;

/// A monotone nonnegative kernel `G` on `[0, ∞)`.
#[derive(Debug, Clone, Copy)]
pub enum Kernel {
    /// `G ≡ 1`.
    Unit,
    /// `G(t) = e^{−rate·t}`, `rate ≥ 0`.
    Exponential { rate: f64 },
    /// Any other kernel. The caller vouches for monotonicity and sign.
    Custom(fn(f64) -> f64),
}

impl Kernel {
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            Kernel::Unit => 1.0,
            Kernel::Exponential { rate } => (-rate * t).exp(),
            Kernel::Custom(g) => g(t),
        }
    }
}

/// Data for the renewal sum `N_G(a, L)`.
#[derive(Debug, Clone)]
pub struct RenewalSpec {
    shift: SubshiftFT,
    f: LocallyConstantPotential,
    g: LocallyConstantPotential,
    kernel: Kernel,
    anchor: Word,
    node_budget: u64,
}

impl RenewalSpec {
    /// `anchor` is a finite prefix of the address `L`. It has to be long
    /// enough to determine `f(L)` and `g(L)`.
    pub fn new(
        shift: SubshiftFT,
        f: LocallyConstantPotential,
        g: LocallyConstantPotential,
        kernel: Kernel,
        anchor: Word,
    ) -> Result<Self> {
        if f.alphabet() != shift.alphabet() || g.alphabet() != shift.alphabet() {
            return Err(domain("potentials and subshift have different alphabets"));
        }
        if !f.is_positive() {
            return Err(domain("renewal potential f must be strictly positive"));
        }
        if g.min_value() < 0.0 {
            return Err(domain("renewal weight g must be nonnegative"));
        }
        if !(g.max_value() > 0.0) {
            return Err(domain("renewal weight g is identically zero"));
        }
        if let Kernel::Exponential { rate } = kernel {
            if !(rate >= 0.0) {
                return Err(domain(format!("kernel rate {rate} is negative")));
            }
        }
        let needed = f.depth().max(g.depth());
        if anchor.len() < needed {
            return Err(Error::InsufficientContext {
                needed,
                available: anchor.len(),
            });
        }
        if !shift.is_admissible(&anchor)? {
            return Err(domain(format!("anchor {anchor} is not admissible")));
        }
        Ok(RenewalSpec {
            shift,
            f,
            g,
            kernel,
            anchor,
            node_budget: DEFAULT_NODE_BUDGET,
        })
    }

    /// `g ≡ 1`, `G ≡ 1`, and the lexicographically first admissible anchor.
    pub fn counting(shift: SubshiftFT, f: LocallyConstantPotential) -> Result<Self> {
        let g = LocallyConstantPotential::constant(&shift, 1.0)?;
        let anchor = shift
            .admissible_words(f.depth())
            .into_iter()
            .next()
            .ok_or_else(|| domain("subshift has no admissible words"))?;
        Self::new(shift, f, g, Kernel::Unit, anchor)
    }

    pub fn with_node_budget(mut self, budget: u64) -> Self {
        self.node_budget = budget;
        self
    }

    pub fn node_budget(&self) -> u64 {
        self.node_budget
    }

    pub fn shift(&self) -> &SubshiftFT {
        &self.shift
    }

    pub fn potential(&self) -> &LocallyConstantPotential {
        &self.f
    }

    pub fn anchor(&self) -> &Word {
        &self.anchor
    }
}

/// Result of one enumeration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenewalCount {
    pub value: f64,
    /// Words `I` with `(a, I) ∈ P(L)`.
    pub words: u64,
    /// Nodes visited by the depth-first search.
    pub nodes: u64,
}

/// A rescaled series `e^{−aδ} N_G(a)` with its trailing-window summary.
#[derive(Debug, Clone)]
pub struct RenewalSeries {
    pub delta: f64,
    pub points: Vec<(f64, f64)>,
    /// `[a_lo, a_hi]` of the trailing window, when it holds two or more points.
    pub window: Option<(f64, f64)>,
    /// `(max − min)/mean` over the window.
    pub relative_variation: Option<f64>,
    /// Dominant period in `a` over the whole series, if any.
    pub period: Option<f64>,
    pub spectrum: Option<PeriodScan>,
    pub nodes: u64,
}

struct Enumerator<'a> {
    spec: &'a RenewalSpec,
    f_anchor: f64,
    a_max: f64,
    nodes: u64,
    // the word IL, stored reversed so prepending is a push
    rev: Vec<u32>,
}

impl Enumerator<'_> {
    fn block(&self, depth: usize) -> usize {
        let n = self.spec.shift.alphabet();
        self.rev[self.rev.len() - depth..]
            .iter()
            .rev()
            .fold(0usize, |acc, &s| acc * n + s as usize)
    }

    /// Visits every `I` with `S_{|I|}f(IL) ≤ a_max` in prepend order and
    /// hands `(S_{|I|+1}f(IL), g(IL))` to `visit`.
    fn run(&mut self, t: f64, visit: &mut dyn FnMut(f64, f64)) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.spec.node_budget {
            return Err(Error::Budget {
                what: "renewal node",
                limit: self.spec.node_budget,
                partial: 0.0,
            });
        }
        let g = self.spec.g.eval_index(self.block(self.spec.g.depth()));
        visit(t, g);
        let head = *self.rev.last().expect("anchor is non-empty");
        for s in 0..self.spec.shift.alphabet() as u32 {
            if !self.spec.shift.allows(s, head) {
                continue;
            }
            self.rev.push(s);
            let child = self.spec.f.eval_index(self.block(self.spec.f.depth())) + t;
            if child - self.f_anchor <= self.a_max {
                self.run(child, visit)?;
            }
            self.rev.pop();
        }
        Ok(())
    }
}

fn enumerate(spec: &RenewalSpec, a_max: f64, visit: &mut dyn FnMut(f64, f64)) -> Result<u64> {
    let n = spec.shift.alphabet();
    let anchor = spec.anchor.symbols();
    let f_anchor = spec.f.eval_index(block_index(n, &anchor[..spec.f.depth()]));
    let mut e = Enumerator {
        spec,
        f_anchor,
        a_max,
        nodes: 0,
        rev: anchor.iter().rev().copied().collect(),
    };
    e.run(f_anchor, visit)?;
    Ok(e.nodes)
}

/// `N_G(a, L) = Σ g(IL)·G(S_{|I|+1}f(IL) − a)` over the words `I` whose
/// Birkhoff sums straddle `a`: `S_{|I|}f(IL) ≤ a < S_{|I|+1}f(IL)`.
///
/// Words are generated by prepending symbols to `L`. Since `f > 0` the sums
/// grow along every branch, so a branch is cut as soon as `S_{|I|}f(IL) > a`.
pub fn renewal_sum(spec: &RenewalSpec, a: f64) -> Result<RenewalCount> {
    if !(a >= 0.0) {
        return Err(domain(format!("renewal level {a} must be nonnegative")));
    }
    let mut value = 0.0;
    let mut words = 0u64;
    let f_anchor = anchor_value(spec);
    let nodes = enumerate(spec, a, &mut |t, g| {
        if t - f_anchor <= a && a < t {
            value += g * spec.kernel.eval(t - a);
            words += 1;
        }
    })
    .map_err(|e| with_partial(e, value))?;
    Ok(RenewalCount {
        value,
        words,
        nodes,
    })
}

fn anchor_value(spec: &RenewalSpec) -> f64 {
    let n = spec.shift.alphabet();
    spec.f
        .eval_index(block_index(n, &spec.anchor.symbols()[..spec.f.depth()]))
}

fn with_partial(e: Error, partial: f64) -> Error {
    match e {
        Error::Budget { what, limit, .. } => Error::Budget {
            what,
            limit,
            partial,
        },
        other => other,
    }
}

/// `e^{−aδ} N_G(a)` on an increasing grid, from a single enumeration at
/// `max a`. Each grid value equals what [`renewal_sum`] returns for it.
pub fn renewal_convergence_series(
    spec: &RenewalSpec,
    a_grid: &[f64],
    delta: f64,
) -> Result<RenewalSeries> {
    if a_grid.is_empty() {
        return Err(domain("renewal grid is empty"));
    }
    if !a_grid.windows(2).all(|w| w[0] < w[1]) {
        return Err(domain("renewal grid must be strictly increasing"));
    }
    if !(a_grid[0] >= 0.0) {
        return Err(domain("renewal levels must be nonnegative"));
    }
    let a_max = a_grid[a_grid.len() - 1];
    let f_anchor = anchor_value(spec);
    let mut acc = vec![0.0; a_grid.len()];
    let nodes = enumerate(spec, a_max, &mut |t, g| {
        let lo = a_grid.partition_point(|&a| a < t - f_anchor);
        let hi = a_grid.partition_point(|&a| a < t);
        for j in lo..hi {
            acc[j] += g * spec.kernel.eval(t - a_grid[j]);
        }
    })
    .map_err(|e| with_partial(e, acc[acc.len() - 1]))?;

    let points: Vec<(f64, f64)> = a_grid
        .iter()
        .zip(&acc)
        .map(|(&a, &n)| (a, (-a * delta).exp() * n))
        .collect();

    let tail: Vec<&(f64, f64)> = points
        .iter()
        .filter(|(a, _)| *a >= a_max - RENEWAL_WINDOW)
        .collect();
    let (window, relative_variation) = if tail.len() >= 2 {
        let (lo, hi, sum) = tail.iter().fold(
            (f64::INFINITY, f64::NEG_INFINITY, 0.0),
            |(lo, hi, sum), &&(_, y)| (lo.min(y), hi.max(y), sum + y),
        );
        let mean = sum / tail.len() as f64;
        (
            Some((tail[0].0, a_max)),
            Some(if mean > 0.0 { (hi - lo) / mean } else { 0.0 }),
        )
    } else {
        (None, None)
    };

    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
    let spectrum = scan_periods(&xs, &ys);
    let period = spectrum.as_ref().and_then(|s| s.dominant(PEAK_TO_MEDIAN));
    Ok(RenewalSeries {
        delta,
        points,
        window,
        relative_variation,
        period,
        spectrum,
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::bowen_root;

    fn constant_spec(n: usize, c: f64) -> RenewalSpec {
        let shift = SubshiftFT::full(n).unwrap();
        let f = LocallyConstantPotential::constant(&shift, c).unwrap();
        RenewalSpec::counting(shift, f).unwrap()
    }

    #[test]
    fn hand_enumerated_levels() {
        let spec = constant_spec(2, 2f64.ln());
        assert_eq!(renewal_sum(&spec, 1.0).unwrap().value, 2.0);
        assert_eq!(renewal_sum(&spec, 0.5).unwrap().value, 1.0);
    }

    #[test]
    fn zero_weight_is_rejected() {
        let shift = SubshiftFT::full(2).unwrap();
        let f = LocallyConstantPotential::constant(&shift, 1.0).unwrap();
        let g = LocallyConstantPotential::constant(&shift, 0.0).unwrap();
        let r = RenewalSpec::new(shift, f, g, Kernel::Unit, Word::new(vec![0]));
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn constant_potential_powers() {
        for (n, c) in [(2usize, 0.7), (3, 1.3)] {
            let spec = constant_spec(n, c);
            for i in 0..40 {
                let a = 0.137 * i as f64;
                if (a / c).fract().abs() < 1e-9 {
                    continue;
                }
                let expected = (n as f64).powi((a / c).floor() as i32);
                assert_eq!(renewal_sum(&spec, a).unwrap().value, expected, "a = {a}");
            }
        }
    }

    #[test]
    fn series_agrees_with_pointwise_sums() {
        let shift = SubshiftFT::full(2).unwrap();
        let f = LocallyConstantPotential::geometric(&shift, &[0.5, 1.0 / 3.0]).unwrap();
        let delta = bowen_root(&shift, &f).unwrap();
        let g = LocallyConstantPotential::from_symbol_values(&shift, &[1.0, 0.25]).unwrap();
        let spec = RenewalSpec::new(
            shift,
            f,
            g,
            Kernel::Exponential { rate: 0.3 },
            Word::new(vec![1]),
        )
        .unwrap();
        let grid: Vec<f64> = (0..30).map(|i| 0.25 * i as f64).collect();
        let series = renewal_convergence_series(&spec, &grid, delta).unwrap();
        for &(a, y) in &series.points {
            let direct = renewal_sum(&spec, a).unwrap().value;
            assert_eq!(y, (-a * delta).exp() * direct);
        }
    }

    #[test]
    fn budget_reports_partial_value() {
        let spec = constant_spec(2, 0.5).with_node_budget(100);
        match renewal_sum(&spec, 10.0) {
            Err(Error::Budget { limit, partial, .. }) => {
                assert_eq!(limit, 100);
                assert!(partial >= 0.0);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn single_point_series_has_no_verdict() {
        let spec = constant_spec(2, 2f64.ln());
        let s = renewal_convergence_series(&spec, &[3.0], 1.0).unwrap();
        assert_eq!(s.points.len(), 1);
        assert!(s.relative_variation.is_none());
        assert!(s.period.is_none());
    }
}
