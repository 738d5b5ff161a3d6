//! Least-squares sinusoid scan for irregularly sampled series.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use core::f64::consts::TAU;

/// Default dominance ratio of the peak power over the median power.
pub const PEAK_TO_MEDIAN: f64 = 5.0;

const OVERSAMPLE: f64 = 10.0;
const MIN_PERIOD_SPACINGS: f64 = 3.5;

/// Outcome of a period scan.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodScan {
    /// Period of the highest peak.
    pub period: f64,
    /// Its fraction of explained variance, in `[0, 1]`.
    pub power: f64,
    /// Median power over the scanned grid, taken as the noise floor.
    pub median_power: f64,
    /// `false` when the maximum sits on the edge of the period range, which
    /// is what a trend rather than an oscillation looks like.
    pub interior: bool,
    pub min_period: f64,
    pub max_period: f64,
}

impl PeriodScan {
    /// The peak period, if it is an interior maximum and stands `ratio` times
    /// above the noise floor.
    pub fn dominant(&self, ratio: f64) -> Option<f64> {
        (self.interior && self.power > 0.0 && self.power >= ratio * self.median_power)
            .then_some(self.period)
    }
}

/// Fraction of the variance of `y` (about its mean) explained by the best
/// fit `a·cos(ωx) + b·sin(ωx) + c`.
pub fn sinusoid_power(x: &[f64], y: &[f64], omega: f64) -> f64 {
    let n = x.len() as f64;
    let ybar = y.iter().sum::<f64>() / n;
    let (mut cbar, mut sbar) = (0.0, 0.0);
    for &xi in x {
        cbar += (omega * xi).cos();
        sbar += (omega * xi).sin();
    }
    cbar /= n;
    sbar /= n;
    let (mut cc, mut cs, mut ss, mut yc, mut ys, mut yy) = (0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    for (&xi, &yi) in x.iter().zip(y) {
        let c = (omega * xi).cos() - cbar;
        let s = (omega * xi).sin() - sbar;
        let d = yi - ybar;
        cc += c * c;
        cs += c * s;
        ss += s * s;
        yc += d * c;
        ys += d * s;
        yy += d * d;
    }
    if yy <= 0.0 {
        return 0.0;
    }
    let det = cc * ss - cs * cs;
    let explained = if det > 1e-12 * (cc * ss).max(f64::MIN_POSITIVE) {
        let a = (yc * ss - ys * cs) / det;
        let b = (ys * cc - yc * cs) / det;
        a * yc + b * ys
    } else if cc + ss > 0.0 {
        // cos and sin are collinear on the sample; fit along one of them
        let (u, uy) = if cc >= ss { (cc, yc) } else { (ss, ys) };
        uy * uy / u
    } else {
        0.0
    };
    (explained / yy).clamp(0.0, 1.0)
}

/// Scans periods from `3.5·Δx` to half the span of `x` on a frequency grid
/// oversampled tenfold, then refines the highest peak by golden-section
/// search between its grid neighbours.
///
/// Returns `None` when there are fewer than four samples or the period range
/// is empty.
pub fn scan_periods(x: &[f64], y: &[f64]) -> Option<PeriodScan> {
    let n = x.len();
    if n < 4 || y.len() != n {
        return None;
    }
    let (xmin, xmax) = x
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
    let span = xmax - xmin;
    if !(span > 0.0) {
        return None;
    }
    let spacing = span / (n - 1) as f64;
    let min_period = MIN_PERIOD_SPACINGS * spacing;
    let max_period = span / 2.0;
    if min_period >= max_period {
        return None;
    }
    let (w_lo, w_hi) = (TAU / max_period, TAU / min_period);
    let step = TAU / (span * OVERSAMPLE);
    let count = (((w_hi - w_lo) / step).ceil() as usize).max(2) + 1;
    let omegas: Vec<f64> = (0..count)
        .map(|i| w_lo + (w_hi - w_lo) * i as f64 / (count - 1) as f64)
        .collect();
    let powers: Vec<f64> = omegas.iter().map(|&w| sinusoid_power(x, y, w)).collect();

    let mut best = 0;
    for (i, &p) in powers.iter().enumerate() {
        if p > powers[best] {
            best = i;
        }
    }
    let mut sorted = powers.clone();
    sorted.sort_by(f64::total_cmp);
    let median_power = if count % 2 == 1 {
        sorted[count / 2]
    } else {
        0.5 * (sorted[count / 2 - 1] + sorted[count / 2])
    };
    let interior = best > 0 && best + 1 < count;

    let (mut omega, mut power) = (omegas[best], powers[best]);
    if interior {
        let (w, p) = golden_max(omegas[best - 1], omegas[best + 1], |w| {
            sinusoid_power(x, y, w)
        });
        if p > power {
            omega = w;
            power = p;
        }
    }
    Some(PeriodScan {
        period: TAU / omega,
        power,
        median_power,
        interior,
        min_period,
        max_period,
    })
}

fn golden_max(mut a: f64, mut b: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..60 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_a_clean_sinusoid() {
        let x: Vec<f64> = (0..200).map(|i| 0.05 * i as f64).collect();
        let y: Vec<f64> = x.iter().map(|&t| 3.0 + (TAU * t / 1.0986).sin()).collect();
        let s = scan_periods(&x, &y).unwrap();
        assert!((s.period - 1.0986).abs() < 1e-6, "{s:?}");
        assert!(s.power > 0.999);
        assert_eq!(s.dominant(PEAK_TO_MEDIAN), Some(s.period));
    }

    #[test]
    fn monotone_trend_is_not_periodic() {
        let x: Vec<f64> = (0..100).map(|i| 0.02 * i as f64).collect();
        let y: Vec<f64> = x.iter().map(|&t| 1.0 + 0.1 * t).collect();
        let s = scan_periods(&x, &y).unwrap();
        assert!(!s.interior);
        assert_eq!(s.dominant(PEAK_TO_MEDIAN), None);
    }

    #[test]
    fn constant_series_has_zero_power() {
        let x: Vec<f64> = (0..50).map(|i| i as f64).collect();
        let y = alloc::vec![2.0; 50];
        let s = scan_periods(&x, &y).unwrap();
        assert_eq!(s.power, 0.0);
        assert_eq!(s.dominant(PEAK_TO_MEDIAN), None);
        assert!(scan_periods(&x[..3], &y[..3]).is_none());
    }

    #[test]
    fn sawtooth_fundamental() {
        let p = 2f64.ln();
        let x: Vec<f64> = (0..400).map(|i| 5.0 + 0.025 * i as f64).collect();
        let y: Vec<f64> = x.iter().map(|&t| (t / p).fract()).collect();
        let s = scan_periods(&x, &y).unwrap();
        assert!((s.period - p).abs() < 0.01 * p, "{s:?}");
    }
}
