use alloc::vec::Vec;

use hashbrown::HashMap;
#[allow(unused_imports)]
use num_traits::Float;
use smallvec::SmallVec;

use crate::geometry::PointCloud;

type CellKey = SmallVec<[i64; 4]>;

/// A uniform grid of cell size `h` with bucket lists of point indices.
///
/// Cells are keyed by `⌊(x − origin)/h⌋` and only non-empty cells are stored,
/// so memory is linear in the number of points whatever the extent.
#[derive(Debug, Clone)]
pub struct SpatialIndex {
    dim: usize,
    h: f64,
    origin: Vec<f64>,
    buckets: HashMap<CellKey, Vec<u32>>,
}

impl SpatialIndex {
    pub fn empty(dim: usize, h: f64, origin: Vec<f64>) -> Self {
        SpatialIndex {
            dim,
            h,
            origin,
            buckets: HashMap::new(),
        }
    }

    /// Every point of the cloud, bucketed.
    pub fn build(cloud: &PointCloud, h: f64) -> Self {
        let (lo, _) = cloud.bounding_box();
        let mut index = Self::empty(cloud.dim(), h, lo);
        for (i, p) in cloud.points().enumerate() {
            index.insert(i as u32, p);
        }
        index
    }

    pub fn cell_size(&self) -> f64 {
        self.h
    }

    fn key(&self, p: &[f64]) -> CellKey {
        p.iter()
            .zip(&self.origin)
            .map(|(x, o)| ((x - o) / self.h).floor() as i64)
            .collect()
    }

    pub fn insert(&mut self, index: u32, p: &[f64]) {
        let k = self.key(p);
        self.buckets.entry(k).or_default().push(index);
    }

    /// Calls `visit` on every stored index in a cell within `reach` cells of
    /// the one holding `p`. With `reach = ⌈r/h⌉` this covers all points within
    /// distance `r`; the visit order is not specified.
    pub fn for_each_near(&self, p: &[f64], reach: i64, mut visit: impl FnMut(u32) -> bool) {
        let center = self.key(p);
        let mut offset: CellKey = SmallVec::from_elem(-reach, self.dim);
        let mut key = center.clone();
        loop {
            for k in 0..self.dim {
                key[k] = center[k] + offset[k];
            }
            if let Some(bucket) = self.buckets.get(&key) {
                for &i in bucket {
                    if !visit(i) {
                        return;
                    }
                }
            }
            // odometer increment over [−reach, reach]^d
            let mut k = 0;
            loop {
                if k == self.dim {
                    return;
                }
                offset[k] += 1;
                if offset[k] <= reach {
                    break;
                }
                offset[k] = -reach;
                k += 1;
            }
        }
    }

    pub fn occupied_cells(&self) -> usize {
        self.buckets.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::dist;

    #[test]
    fn every_point_in_one_bucket_and_neighbours_are_found() {
        let pts: Vec<Vec<f64>> = (0..200)
            .map(|i| {
                let t = i as f64 * 0.731;
                alloc::vec![t.sin(), (1.3 * t).cos()]
            })
            .collect();
        let c = PointCloud::from_points(&pts, 0.01).unwrap();
        let h = 0.1;
        let idx = SpatialIndex::build(&c, h);
        let total: usize = idx.buckets.values().map(Vec::len).sum();
        assert_eq!(total, c.len());
        for i in 0..c.len() {
            let mut found = Vec::new();
            idx.for_each_near(c.point(i), 1, |j| {
                found.push(j as usize);
                true
            });
            for j in 0..c.len() {
                if dist(c.point(i), c.point(j)) <= h {
                    assert!(found.contains(&j));
                }
            }
        }
    }
}
