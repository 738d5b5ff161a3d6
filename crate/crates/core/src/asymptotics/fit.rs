use alloc::format;

#[allow(unused_imports)]
use num_traits::Float;

use super::curve::CountingCurve;
use crate::error::{domain, Result};

/// Least-squares line `y = slope·x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_stderr: f64,
    pub points: usize,
}

/// Ordinary least squares; the standard error is zero for two points.
pub fn ols(points: &[(f64, f64)]) -> LinearFit {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for &(x, y) in points {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let rss: f64 = points
        .iter()
        .map(|&(x, y)| {
            let r = y - slope * x - intercept;
            r * r
        })
        .sum();
    let slope_stderr = if points.len() > 2 && sxx > 0.0 {
        (rss / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    LinearFit {
        slope,
        intercept,
        slope_stderr,
        points: points.len(),
    }
}

/// Minimum number of curve points for [`dimension_fit`].
pub const MIN_FIT_POINTS: usize = 10;
/// Minimum span of the fitted scales, in decades.
pub const MIN_FIT_DECADES: f64 = 1.5;

/// Slope of `ln N(ε)` against `ln(1/ε)`, with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionFit {
    pub s_hat: f64,
    pub stderr: f64,
    pub points: usize,
    pub decades: f64,
}

/// Box-counting style estimate of the Minkowski dimension from a curve.
pub fn dimension_fit(curve: &CountingCurve) -> Result<DimensionFit> {
    let pts: alloc::vec::Vec<(f64, f64)> = curve
        .points
        .iter()
        .filter(|&&(e, v)| e > 0.0 && v > 0.0)
        .map(|&(e, v)| (-e.ln(), v.ln()))
        .collect();
    if pts.len() < MIN_FIT_POINTS {
        return Err(domain(format!(
            "dimension fit needs at least {MIN_FIT_POINTS} points, got {}",
            pts.len()
        )));
    }
    let (lo, hi) = pts
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.0), b.max(p.0)));
    let decades = (hi - lo) / core::f64::consts::LN_10;
    if decades < MIN_FIT_DECADES - 1e-9 {
        return Err(domain(format!(
            "dimension fit needs {MIN_FIT_DECADES} decades of ε, got {decades:.3}"
        )));
    }
    let fit = ols(&pts);
    Ok(DimensionFit {
        s_hat: fit.slope,
        stderr: fit.slope_stderr,
        points: pts.len(),
        decades,
    })
}
