use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::separated::check_adequacy;
use crate::error::{domain, Error, Result};
use crate::geometry::PointCloud;

/// Cap on the number of voxel columns swept by one evaluation.
pub const DEFAULT_COLUMN_BUDGET: u64 = 200_000_000;

/// Volume of the unit ball in `ℝ^d`.
pub fn unit_ball_volume(d: usize) -> f64 {
    // V_0 = 1, V_1 = 2, V_d = V_{d−2}·2π/d
    let mut v = [1.0, 2.0];
    for k in 2..=d {
        v[k % 2] *= core::f64::consts::TAU / k as f64;
    }
    v[d % 2]
}

/// `h = 2^⌊log₂(ε/20)⌋`, the default voxel edge.
pub fn default_voxel(eps: f64) -> f64 {
    2f64.powi((eps / 20.0).log2().floor() as i32)
}

/// Worst-case relative error of a voxel estimate of `|K_ε|`: the count lies
/// between `|K_{ε−√d·h/2−δ}|` and `|K_{ε+√d·h/2}|`, and `|K_{λε}| ≤ λ^d|K_ε|`
/// for `λ ≥ 1`.
pub fn voxel_error_bound(dim: usize, eps: f64, h: f64, delta: f64) -> f64 {
    let x = ((dim as f64).sqrt() * h / 2.0 + delta) / eps;
    (1.0 + x).powi(dim as i32) - 1.0
}

/// A voxel estimate of the normalised parallel volume `|K_ε|/ε^d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinkowskiEstimate {
    pub eps: f64,
    pub h: f64,
    /// Voxels whose centre lies within `ε` of the cloud.
    pub cells: u64,
    /// `cells·h^d`.
    pub volume: f64,
    /// `volume/ε^d`.
    pub content: f64,
    pub relative_error: f64,
}

/// `eM(ε, K) = |K_ε|/ε^d` from the voxels of edge `h` (anchored at the cloud's
/// bounding-box corner) whose centres are within `ε` of a cloud point.
///
/// Needs `h ≤ ε/20` and an adequate sample.
pub fn minkowski_content(cloud: &PointCloud, eps: f64, h: f64) -> Result<MinkowskiEstimate> {
    check_adequacy(cloud, eps)?;
    if !(h > 0.0 && h <= eps / 20.0) {
        return Err(domain(format!("voxel edge {h} must lie in (0, ε/20] for ε = {eps}")));
    }
    let cells = voxel_count(cloud, eps, h, DEFAULT_COLUMN_BUDGET)?;
    Ok(estimate(cloud, eps, h, cells, cloud.resolution()))
}

/// The voxel estimate for the finite cloud itself as the set, with no
/// adequacy or voxel-size precondition.
pub fn finite_minkowski_content(cloud: &PointCloud, eps: f64, h: f64) -> Result<MinkowskiEstimate> {
    if !(eps > 0.0 && h > 0.0) {
        return Err(domain("scale and voxel edge must be positive"));
    }
    let cells = voxel_count(cloud, eps, h, DEFAULT_COLUMN_BUDGET)?;
    Ok(estimate(cloud, eps, h, cells, 0.0))
}

fn estimate(cloud: &PointCloud, eps: f64, h: f64, cells: u64, delta: f64) -> MinkowskiEstimate {
    let d = cloud.dim();
    let volume = cells as f64 * h.powi(d as i32);
    MinkowskiEstimate {
        eps,
        h,
        cells,
        volume,
        content: volume / eps.powi(d as i32),
        relative_error: voxel_error_bound(d, eps, h, delta),
    }
}

/// Counts voxel centres `lo + (k + ½)h` within `ε` of some point, sweeping one
/// axis at a time and taking a union of intervals on the last one.
pub fn voxel_count(cloud: &PointCloud, eps: f64, h: f64, column_budget: u64) -> Result<u64> {
    let (lo, _) = cloud.bounding_box();
    let active: Vec<(usize, f64)> = (0..cloud.len()).map(|i| (i, eps * eps)).collect();
    let mut sweep = Sweep {
        cloud,
        lo: &lo,
        h,
        columns: 0,
        budget: column_budget,
        cells: 0,
    };
    sweep.axis(0, active)?;
    Ok(sweep.cells)
}

struct Sweep<'a> {
    cloud: &'a PointCloud,
    lo: &'a [f64],
    h: f64,
    columns: u64,
    budget: u64,
    cells: u64,
}

impl Sweep<'_> {
    fn center(&self, axis: usize, k: i64) -> f64 {
        self.lo[axis] + (k as f64 + 0.5) * self.h
    }

    /// Index range of centres inside `[a, b]` on `axis`.
    fn range(&self, axis: usize, a: f64, b: f64) -> (i64, i64) {
        let first = ((a - self.lo[axis]) / self.h - 0.5).ceil() as i64;
        let last = ((b - self.lo[axis]) / self.h - 0.5).floor() as i64;
        // guard the rounding at the ends
        let first = if self.center(axis, first - 1) >= a { first - 1 } else { first };
        let last = if self.center(axis, last + 1) <= b { last + 1 } else { last };
        (first, last)
    }

    /// `active` holds points with the squared radius left for this and the
    /// later axes.
    fn axis(&mut self, axis: usize, mut active: Vec<(usize, f64)>) -> Result<()> {
        let d = self.cloud.dim();
        let coord = |i: usize| self.cloud.point(i)[axis];
        if axis + 1 == d {
            let mut intervals: Vec<(f64, f64)> = active
                .iter()
                .map(|&(i, r2)| {
                    let w = r2.sqrt();
                    (coord(i) - w, coord(i) + w)
                })
                .collect();
            intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
            let mut cur: Option<(f64, f64)> = None;
            for (a, b) in intervals {
                match cur {
                    Some((ca, cb)) if a <= cb => cur = Some((ca, cb.max(b))),
                    Some(iv) => {
                        self.cells += self.count_in(axis, iv);
                        cur = Some((a, b));
                    }
                    None => cur = Some((a, b)),
                }
            }
            if let Some(iv) = cur {
                self.cells += self.count_in(axis, iv);
            }
            return Ok(());
        }
        active.sort_by(|a, b| coord(a.0).total_cmp(&coord(b.0)));
        let rmax = active.iter().map(|a| a.1).fold(0.0, f64::max).sqrt();
        let (amin, amax) = (
            coord(active[0].0) - rmax,
            coord(active[active.len() - 1].0) + rmax,
        );
        let (k0, k1) = self.range(axis, amin, amax);
        let mut start = 0;
        for k in k0..=k1 {
            self.columns += 1;
            if self.columns > self.budget {
                return Err(Error::Budget {
                    what: "voxel column",
                    limit: self.budget,
                    partial: self.cells as f64,
                });
            }
            let c = self.center(axis, k);
            while start < active.len() && coord(active[start].0) < c - rmax {
                start += 1;
            }
            let mut next = Vec::new();
            for &(i, r2) in &active[start..] {
                let x = coord(i);
                if x > c + rmax {
                    break;
                }
                let left = r2 - (x - c) * (x - c);
                if left >= 0.0 {
                    next.push((i, left));
                }
            }
            if !next.is_empty() {
                self.axis(axis + 1, next)?;
            }
        }
        Ok(())
    }

    fn count_in(&self, axis: usize, (a, b): (f64, f64)) -> u64 {
        let (first, last) = self.range(axis, a, b);
        (last - first + 1).max(0) as u64
    }
}

/// Outcome of [`minkowski_monotonicity_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityReport {
    pub estimates: Vec<MinkowskiEstimate>,
    /// Tolerance used between consecutive scales.
    pub tolerances: Vec<f64>,
    /// Indices `i` with `eM(ε_i) > eM(ε_{i+1})·(1 + tol_i)`.
    pub violations: Vec<usize>,
}

impl MonotonicityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn max_tolerance(&self) -> f64 {
        self.tolerances.iter().copied().fold(0.0, f64::max)
    }
}

/// Checks that `ε ↦ eM(ε)` is non-increasing along a decreasing grid, with
/// the cloud itself taken as the set.
///
/// Each voxel edge is a power of two chosen so that the rigorous pairwise
/// tolerance `((1 + x_i)/(1 − x_{i+1}))^d − 1`, with `x = √d·h/(2ε)`, stays
/// within `target_tolerance`.
pub fn minkowski_monotonicity_check(
    cloud: &PointCloud,
    eps_grid: &[f64],
    target_tolerance: f64,
) -> Result<MonotonicityReport> {
    if eps_grid.is_empty() {
        return Err(domain("scale grid is empty"));
    }
    if !eps_grid.windows(2).all(|w| w[0] > w[1]) || !(eps_grid[eps_grid.len() - 1] > 0.0) {
        return Err(domain("scale grid must be positive and strictly decreasing"));
    }
    if !(target_tolerance > 0.0) {
        return Err(domain("tolerance must be positive"));
    }
    let d = cloud.dim() as f64;
    // (1+x)/(1−x) ≤ (1+tol)^{1/d} with equal x on both sides
    let q = (1.0 + target_tolerance).powf(1.0 / d);
    let x = (q - 1.0) / (q + 1.0);
    let mut estimates = Vec::with_capacity(eps_grid.len());
    for &eps in eps_grid {
        let h = 2f64.powi((2.0 * x * eps / d.sqrt()).log2().floor() as i32);
        estimates.push(finite_minkowski_content(cloud, eps, h)?);
    }
    let mut tolerances = Vec::new();
    let mut violations = Vec::new();
    for i in 0..estimates.len().saturating_sub(1) {
        let (a, b) = (&estimates[i], &estimates[i + 1]);
        let xa = d.sqrt() * a.h / (2.0 * a.eps);
        let xb = d.sqrt() * b.h / (2.0 * b.eps);
        let tol = ((1.0 + xa) / (1.0 - xb)).powf(d) - 1.0;
        tolerances.push(tol);
        if a.content > b.content * (1.0 + tol) {
            violations.push(i);
        }
    }
    Ok(MonotonicityReport {
        estimates,
        tolerances,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ball_volumes() {
        assert_eq!(unit_ball_volume(1), 2.0);
        assert!((unit_ball_volume(2) - core::f64::consts::PI).abs() < 1e-15);
        assert!((unit_ball_volume(3) - 4.0 / 3.0 * core::f64::consts::PI).abs() < 1e-14);
    }

    #[test]
    fn segment_on_the_line() {
        let xs: Vec<f64> = (0..=10_000).map(|i| i as f64 / 10_000.0).collect();
        let c = PointCloud::from_line(&xs, 5e-5).unwrap();
        let m = minkowski_content(&c, 0.1, 0.005).unwrap();
        assert!((m.volume - 1.2).abs() < 0.02 * 1.2);
        assert!((m.content - 12.0).abs() < 0.02 * 12.0);
    }

    #[test]
    fn segment_in_the_plane_is_a_stadium() {
        let pts: Vec<Vec<f64>> = (0..=2000).map(|i| alloc::vec![i as f64 / 2000.0, 0.0]).collect();
        let c = PointCloud::from_points(&pts, 2.5e-4).unwrap();
        let h = default_voxel(0.1);
        let m = minkowski_content(&c, 0.1, h).unwrap();
        let exact = 0.2 + core::f64::consts::PI * 0.01;
        assert!((m.volume - exact).abs() <= m.relative_error * exact, "{m:?}");
        assert!((m.volume - exact).abs() < 0.02 * exact, "{m:?} {exact}");
    }

    #[test]
    fn single_point_disc() {
        let c = PointCloud::from_points(&[alloc::vec![0.3, -0.2]], 1e-6).unwrap();
        let m = minkowski_content(&c, 1.0, 0.05).unwrap();
        assert!((m.content - core::f64::consts::PI).abs() < 0.01 * core::f64::consts::PI);
        assert!(minkowski_content(&c, 1.0, 0.1).is_err());
    }
}
