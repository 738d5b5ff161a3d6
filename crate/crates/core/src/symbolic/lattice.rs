use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{domain, Result};

/// Largest denominator tried when looking for a rational ratio.
pub const DENOMINATOR_CAP: u64 = 1_000_000;
/// Tolerance on the lattice residual `|q·(v_i/v_min) − p|`, i.e. on the
/// distance of `v_i` from the candidate lattice in units of its generator.
pub const RATIO_TOLERANCE: f64 = 1e-12;

/// A continued-fraction approximant `p/q` of `value_i / value_min`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Approximant {
    pub index: usize,
    pub ratio: f64,
    pub numerator: u64,
    pub denominator: u64,
    /// `|ratio − p/q|`.
    pub error: f64,
    /// `|q·ratio − p|`.
    pub residual: f64,
}

impl Approximant {
    /// Whether the residual is within [`RATIO_TOLERANCE`], or within the
    /// rounding noise of `q·ratio` when that is larger.
    pub fn matches(&self) -> bool {
        self.residual <= residual_tolerance(self.ratio, self.denominator)
    }
}

fn residual_tolerance(ratio: f64, q: u64) -> f64 {
    RATIO_TOLERANCE.max(16.0 * f64::EPSILON * ratio * q as f64)
}

/// Outcome of the rational-ratio test.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeTest {
    pub lattice: bool,
    /// The largest `a > 0` with every value in `a·ℤ`, when lattice.
    pub generator: Option<f64>,
    /// Best approximant per value. For a non-lattice answer at least one of
    /// these misses the tolerance.
    pub approximants: Vec<Approximant>,
}

/// Decides whether the positive `values` all lie in a common lattice `a·ℤ`.
///
/// Every ratio `v_i / v_min` is expanded as a continued fraction until a
/// convergent `p/q` leaves a residual `|q·v_i/v_min − p|` within
/// [`RATIO_TOLERANCE`] or its denominator would pass [`DENOMINATOR_CAP`].
/// Ratios that only match beyond the cap count as irrational.
pub fn is_lattice(values: &[f64]) -> Result<LatticeTest> {
    if values.is_empty() {
        return Err(domain("lattice test needs at least one value"));
    }
    if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
        return Err(domain(alloc::format!("lattice test value {v} is not positive")));
    }
    let vmin = values.iter().copied().fold(f64::INFINITY, f64::min);
    let approximants: Vec<Approximant> = values
        .iter()
        .enumerate()
        .map(|(index, &v)| best_approximant(index, v / vmin))
        .collect();
    if !approximants.iter().all(Approximant::matches) {
        return Ok(LatticeTest {
            lattice: false,
            generator: None,
            approximants,
        });
    }
    let l = approximants
        .iter()
        .fold(1u64, |l, a| lcm(l, a.denominator).min(u64::MAX / 2));
    let g = approximants
        .iter()
        .map(|a| a.numerator as u128 * (l / a.denominator) as u128)
        .fold(0u128, gcd128);
    Ok(LatticeTest {
        lattice: true,
        generator: Some(vmin * g as f64 / l as f64),
        approximants,
    })
}

fn best_approximant(index: usize, ratio: f64) -> Approximant {
    // convergents h/k of the continued fraction of `ratio`
    let (mut h0, mut h1) = (1u64, ratio.floor() as u64);
    let (mut k0, mut k1) = (0u64, 1u64);
    let mut x = ratio - ratio.floor();
    let mut best = (h1, k1);
    let residual = |h: u64, k: u64| (k as f64 * ratio - h as f64).abs();
    while residual(best.0, best.1) > residual_tolerance(ratio, best.1) && x > 0.0 {
        x = 1.0 / x;
        let a = x.floor();
        x -= a;
        if a > DENOMINATOR_CAP as f64 {
            break;
        }
        let a = a as u64;
        let k2 = a * k1 + k0;
        if k2 > DENOMINATOR_CAP {
            break;
        }
        let h2 = a * h1 + h0;
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        best = (h1, k1);
    }
    Approximant {
        index,
        ratio,
        numerator: best.0,
        denominator: best.1,
        error: (ratio - best.0 as f64 / best.1 as f64).abs(),
        residual: residual(best.0, best.1),
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn gcd128(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd128(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
