use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{domain, Result};

#[inline]
pub fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[inline]
pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    dist2(a, b).sqrt()
}

#[inline]
pub fn norm(a: &[f64]) -> f64 {
    a.iter().map(|x| x * x).sum::<f64>().sqrt()
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A finite sample of a compact set in `ℝ^d`, stored row-major.
///
/// `resolution` is the density the generator guarantees: every point of the
/// represented set lies within `resolution` of some sample point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    dim: usize,
    coords: Vec<f64>,
    resolution: f64,
}

impl PointCloud {
    pub fn new(dim: usize, coords: Vec<f64>, resolution: f64) -> Result<Self> {
        if dim == 0 {
            return Err(domain("ambient dimension must be at least 1"));
        }
        if coords.is_empty() {
            return Err(domain("point cloud is empty"));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(domain(format!(
                "{} coordinates do not split into points of dimension {dim}",
                coords.len()
            )));
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(domain(format!("point {} has a non-finite coordinate", i / dim)));
        }
        if !(resolution > 0.0 && resolution.is_finite()) {
            return Err(domain(format!("resolution {resolution} must be positive")));
        }
        Ok(PointCloud {
            dim,
            coords,
            resolution,
        })
    }

    pub fn from_points(points: &[Vec<f64>], resolution: f64) -> Result<Self> {
        let dim = points.first().map_or(0, Vec::len);
        if points.iter().any(|p| p.len() != dim) {
            return Err(domain("points have different dimensions"));
        }
        Self::new(dim, points.concat(), resolution)
    }

    /// Points on a line, as a cloud in `ℝ¹`.
    pub fn from_line(xs: &[f64], resolution: f64) -> Result<Self> {
        Self::new(1, xs.to_vec(), resolution)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> core::slice::ChunksExact<'_, f64> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn with_resolution(mut self, resolution: f64) -> Result<Self> {
        if !(resolution > 0.0 && resolution.is_finite()) {
            return Err(domain(format!("resolution {resolution} must be positive")));
        }
        self.resolution = resolution;
        Ok(self)
    }

    /// The cloud restricted to the given indices, in that order.
    pub fn subset(&self, indices: &[usize]) -> Result<Self> {
        let mut coords = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            coords.extend_from_slice(self.point(i));
        }
        Self::new(self.dim, coords, self.resolution)
    }

    /// Concatenation; the resolution is the coarser of the two.
    pub fn union(&self, other: &Self) -> Result<Self> {
        if other.dim != self.dim {
            return Err(domain("cannot join clouds of different dimensions"));
        }
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&other.coords);
        Self::new(self.dim, coords, self.resolution.max(other.resolution))
    }

    /// Every point moved by `v`.
    pub fn translated(&self, v: &[f64]) -> Self {
        let mut out = self.clone();
        for p in out.coords.chunks_exact_mut(self.dim) {
            for (x, t) in p.iter_mut().zip(v) {
                *x += t;
            }
        }
        out
    }

    /// Componentwise minimum and maximum.
    pub fn bounding_box(&self) -> (Vec<f64>, Vec<f64>) {
        let mut lo = self.point(0).to_vec();
        let mut hi = lo.clone();
        for p in self.points() {
            for k in 0..self.dim {
                lo[k] = lo[k].min(p[k]);
                hi[k] = hi[k].max(p[k]);
            }
        }
        (lo, hi)
    }

    /// Diameter: exact on the line and for up to 4096 points, otherwise the
    /// bounding-box diagonal (an upper bound).
    pub fn diameter(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        if self.dim == 1 {
            return hi[0] - lo[0];
        }
        let n = self.len();
        if n > 4096 {
            return dist(&lo, &hi);
        }
        let mut best = 0.0f64;
        for i in 0..n {
            for j in i + 1..n {
                best = best.max(dist2(self.point(i), self.point(j)));
            }
        }
        best.sqrt()
    }

    /// Indices sorted lexicographically by coordinates, ties by index. This is
    /// the deterministic point order every greedy pass uses.
    pub fn lexicographic_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&a, &b| {
            let (pa, pb) = (self.point(a), self.point(b));
            pa.iter()
                .zip(pb)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(core::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        idx
    }
}
