use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::curve::CountingCurve;
use super::spectral::{scan_periods, PeriodScan, PEAK_TO_MEDIAN};

/// Thresholds for [`limit_diagnostic`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitConfig {
    /// Largest window amplitude still called converging.
    pub converging_amplitude: f64,
    /// Smallest window amplitude called oscillating.
    pub oscillating_amplitude: f64,
    /// Peak power over median power needed for a dominant period.
    pub peak_to_median: f64,
    /// Width of the final window in decades of `ε`.
    pub window_decades: f64,
}

impl Default for LimitConfig {
    fn default() -> Self {
        LimitConfig {
            converging_amplitude: 0.02,
            oscillating_amplitude: 0.05,
            peak_to_median: PEAK_TO_MEDIAN,
            window_decades: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Converging,
    Oscillating,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Converging => "converging",
            Verdict::Oscillating => "oscillating",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// Behaviour of `ε^s·N(ε)` as `ε → 0` on a finite curve.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitDiagnostic {
    pub s: f64,
    /// `[ε_lo, ε_hi]` of the final window.
    pub window: (f64, f64),
    pub window_points: usize,
    /// Mean of `ε^s·N(ε)` over the window.
    pub mean: f64,
    /// `(max − min)/mean` over the window.
    pub amplitude: f64,
    /// Dominant period in `ln(1/ε)`, if any.
    pub period: Option<f64>,
    pub scan: Option<PeriodScan>,
    pub verdict: Verdict,
    pub config: LimitConfig,
}

/// Window statistics of `ε^s·N(ε)` and a least-squares period scan of the
/// mean-removed series against `ln(1/ε)` over the whole curve.
pub fn limit_diagnostic(curve: &CountingCurve, s: f64, config: &LimitConfig) -> LimitDiagnostic {
    let scaled = curve.scaled(s);
    let eps_min = scaled.last().map_or(0.0, |p| p.0);
    let cutoff = eps_min * 10f64.powf(config.window_decades) * (1.0 + 1e-12);
    let window: Vec<(f64, f64)> = scaled.iter().copied().filter(|p| p.0 <= cutoff).collect();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut sum = 0.0;
    for &(_, v) in &window {
        lo = lo.min(v);
        hi = hi.max(v);
        sum += v;
    }
    let mean = if window.is_empty() { 0.0 } else { sum / window.len() as f64 };
    let amplitude = if mean > 0.0 { (hi - lo) / mean } else { 0.0 };

    let all_mean = scaled.iter().map(|p| p.1).sum::<f64>() / scaled.len().max(1) as f64;
    let x: Vec<f64> = scaled.iter().map(|p| -p.0.ln()).collect();
    let y: Vec<f64> = scaled.iter().map(|p| p.1 - all_mean).collect();
    let scan = scan_periods(&x, &y);
    let period = scan.as_ref().and_then(|sc| sc.dominant(config.peak_to_median));

    let verdict = if amplitude < config.converging_amplitude && period.is_none() {
        Verdict::Converging
    } else if amplitude > config.oscillating_amplitude && period.is_some() {
        Verdict::Oscillating
    } else {
        Verdict::Inconclusive
    };
    LimitDiagnostic {
        s,
        window: (
            window.last().map_or(0.0, |p| p.0),
            window.first().map_or(0.0, |p| p.0),
        ),
        window_points: window.len(),
        mean,
        amplitude,
        period,
        scan,
        verdict,
        config: *config,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::CountingKind;

    fn synthetic(f: impl Fn(f64) -> f64) -> CountingCurve {
        let pts = (0..=100)
            .map(|k| {
                let e = 10f64.powf(-1.0 - 2.5 * k as f64 / 100.0);
                (e, f(e))
            })
            .collect();
        CountingCurve::from_points(CountingKind::Separated, pts).unwrap()
    }

    #[test]
    fn constant_curve_converges() {
        let d = limit_diagnostic(&synthetic(|_| 7.0), 0.0, &LimitConfig::default());
        assert_eq!(d.amplitude, 0.0);
        assert_eq!(d.verdict, Verdict::Converging);
        assert_eq!(d.window_points, 41);
    }

    #[test]
    fn log_periodic_curve_oscillates() {
        let s = 0.5;
        let p = 3f64.ln();
        let c = synthetic(|e| e.powf(-s) * (1.0 + 0.2 * (core::f64::consts::TAU * e.ln() / p).cos()));
        let d = limit_diagnostic(&c, s, &LimitConfig::default());
        assert_eq!(d.verdict, Verdict::Oscillating);
        assert!((d.period.unwrap() - p).abs() < 1e-3 * p);
        assert!((d.mean - 1.0).abs() < 0.05);
    }

    #[test]
    fn amplitude_ignores_constant_factors() {
        let c = synthetic(|e| 1.0 / e + 2.0);
        let k = CountingCurve::from_points(
            CountingKind::Separated,
            c.points.iter().map(|&(e, v)| (e, 3.5 * v)).collect(),
        )
        .unwrap();
        let (a, b) = (
            limit_diagnostic(&c, 1.0, &LimitConfig::default()),
            limit_diagnostic(&k, 1.0, &LimitConfig::default()),
        );
        assert!((a.amplitude - b.amplitude).abs() < 1e-12);
        assert_eq!(a.verdict, b.verdict);
    }
}
