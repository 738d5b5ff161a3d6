use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::counting::{
    check_adequacy, default_voxel, minkowski_content, CountMode, CountingKind, GreedyCounter,
};
use crate::error::{domain, Result};
use crate::geometry::PointCloud;

/// Geometric scale grid from `eps_max` down to `eps_min`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleGrid {
    pub eps_max: f64,
    pub eps_min: f64,
    pub points_per_decade: f64,
}

impl ScaleGrid {
    pub fn new(eps_max: f64, eps_min: f64, points_per_decade: f64) -> Result<Self> {
        if !(eps_min > 0.0 && eps_max > eps_min && eps_max.is_finite()) {
            return Err(domain(format!(
                "scale grid needs 0 < ε_min < ε_max, got [{eps_min}, {eps_max}]"
            )));
        }
        if !(points_per_decade >= 1.0 && points_per_decade.is_finite()) {
            return Err(domain("at least one point per decade is needed"));
        }
        Ok(ScaleGrid {
            eps_max,
            eps_min,
            points_per_decade,
        })
    }

    pub fn decades(&self) -> f64 {
        (self.eps_max / self.eps_min).log10()
    }

    /// `⌈decades·points_per_decade⌉ + 1` scales with both ends exact.
    pub fn scales(&self) -> Vec<f64> {
        let steps = (self.decades() * self.points_per_decade - 1e-9).ceil().max(1.0) as usize;
        let ratio = (self.eps_min / self.eps_max).ln();
        let mut out: Vec<f64> = (0..=steps)
            .map(|k| self.eps_max * (ratio * k as f64 / steps as f64).exp())
            .collect();
        out[0] = self.eps_max;
        out[steps] = self.eps_min;
        out
    }
}

/// Where a curve came from.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveProvenance {
    pub cloud_points: usize,
    pub cloud_resolution: f64,
    pub cloud_diameter: f64,
    pub mode: CountMode,
    pub grid: Option<ScaleGrid>,
}

/// Values of one counting function along decreasing scales.
#[derive(Debug, Clone, PartialEq)]
pub struct CountingCurve {
    pub kind: CountingKind,
    /// `(ε, N(ε))` with `ε` strictly decreasing.
    pub points: Vec<(f64, f64)>,
    pub provenance: CurveProvenance,
    /// Indices `i` where `N(ε_{i+1}) < N(ε_i)`.
    pub monotonicity_violations: Vec<usize>,
}

impl CountingCurve {
    /// A curve from raw values, sorted by decreasing `ε`.
    pub fn from_points(kind: CountingKind, mut points: Vec<(f64, f64)>) -> Result<Self> {
        points.sort_by(|a, b| b.0.total_cmp(&a.0));
        if points.windows(2).any(|w| w[0].0 <= w[1].0) || points.iter().any(|p| !(p.0 > 0.0)) {
            return Err(domain("curve scales must be positive and distinct"));
        }
        let monotonicity_violations = violations(&points);
        Ok(CountingCurve {
            kind,
            points,
            provenance: CurveProvenance {
                cloud_points: 0,
                cloud_resolution: 0.0,
                cloud_diameter: 0.0,
                mode: CountMode::Greedy,
                grid: None,
            },
            monotonicity_violations,
        })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_monotone(&self) -> bool {
        self.monotonicity_violations.is_empty()
    }

    pub fn scales(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.0)
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().map(|p| p.1)
    }

    /// `(ε, ε^s·N(ε))`.
    pub fn scaled(&self, s: f64) -> Vec<(f64, f64)> {
        self.points.iter().map(|&(e, v)| (e, e.powf(s) * v)).collect()
    }
}

fn violations(points: &[(f64, f64)]) -> Vec<usize> {
    points
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[1].1 < w[0].1)
        .map(|(i, _)| i)
        .collect()
}

/// Evaluates one counting function on a geometric grid. Greedy separated
/// counts share one lexicographic sort; every scale passes the adequacy check.
pub fn counting_curve(
    cloud: &PointCloud,
    kind: CountingKind,
    mode: CountMode,
    grid: ScaleGrid,
) -> Result<CountingCurve> {
    let scales = grid.scales();
    for &e in &scales {
        check_adequacy(cloud, e)?;
    }
    let greedy = (mode == CountMode::Greedy && kind != CountingKind::Minkowski)
        .then(|| GreedyCounter::new(cloud));
    let mut points = Vec::with_capacity(scales.len());
    for &e in &scales {
        let v = match (&greedy, kind) {
            (Some(g), CountingKind::Packing) => g.count(2.0 * e) as f64,
            (Some(g), _) => g.count(e) as f64,
            (None, CountingKind::Minkowski) => minkowski_content(cloud, e, default_voxel(e))?.content,
            (None, k) => crate::counting::evaluate(k, cloud, e, mode)?,
        };
        points.push((e, v));
    }
    let monotonicity_violations = violations(&points);
    Ok(CountingCurve {
        kind,
        points,
        provenance: CurveProvenance {
            cloud_points: cloud.len(),
            cloud_resolution: cloud.resolution(),
            cloud_diameter: cloud.diameter(),
            mode,
            grid: Some(grid),
        },
        monotonicity_violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints_and_density() {
        let g = ScaleGrid::new(0.1, 1e-3, 40.0).unwrap();
        let s = g.scales();
        assert_eq!(s.len(), 81);
        assert_eq!(s[0], 0.1);
        assert_eq!(s[80], 1e-3);
        assert!(s.windows(2).all(|w| w[0] > w[1]));
        assert!(ScaleGrid::new(0.1, 0.1, 40.0).is_err());
    }

    #[test]
    fn single_point_is_constant() {
        let c = PointCloud::from_line(&[0.5], 1e-12).unwrap();
        let curve = counting_curve(
            &c,
            CountingKind::Separated,
            CountMode::Greedy,
            ScaleGrid::new(1.0, 1e-3, 10.0).unwrap(),
        )
        .unwrap();
        assert!(curve.values().all(|v| v == 1.0));
        assert!(curve.is_monotone());
    }
}
