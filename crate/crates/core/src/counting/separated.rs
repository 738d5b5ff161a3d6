use alloc::format;
use alloc::vec::Vec;

use super::exact::{max_separated, min_cover};
use super::index::SpatialIndex;
use crate::error::{domain, Error, Result};
use crate::geometry::{dist2, PointCloud};

/// Resolutions above `ε/10` draw a warning.
pub const WARN_RATIO: f64 = 0.1;
/// Resolutions above `ε/2` are refused.
pub const REFUSE_RATIO: f64 = 0.5;

/// How the count is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountMode {
    /// Deterministic greedy pass; the production path.
    Greedy,
    /// Branch and bound, for clouds of at most [`super::EXACT_CAP`] points.
    Exact,
}

/// Checks the sample is fine enough for scale `ε`. Returns `true` when the
/// resolution is usable but above the warning threshold.
pub fn check_adequacy(cloud: &PointCloud, eps: f64) -> Result<bool> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(domain(format!("scale {eps} must be positive")));
    }
    let delta = cloud.resolution();
    if delta > REFUSE_RATIO * eps {
        return Err(Error::Inadequate {
            resolution: delta,
            scale: eps,
            limit: REFUSE_RATIO * eps,
        });
    }
    Ok(delta > WARN_RATIO * eps)
}

/// A greedy maximal `ε`-separated subset.
#[derive(Debug, Clone, PartialEq)]
pub struct Separated {
    pub count: usize,
    /// Indices into the cloud, in the order they were kept.
    pub selected: Vec<usize>,
    /// The sample resolution is above `ε/10`.
    pub coarse: bool,
}

/// Runs greedy separated passes over one cloud at many scales, sorting the
/// points once.
#[derive(Debug, Clone)]
pub struct GreedyCounter<'a> {
    cloud: &'a PointCloud,
    order: Vec<usize>,
}

impl<'a> GreedyCounter<'a> {
    pub fn new(cloud: &'a PointCloud) -> Self {
        GreedyCounter {
            cloud,
            order: cloud.lexicographic_order(),
        }
    }

    /// A counter visiting points in a caller-chosen order, which must be a
    /// permutation of the indices.
    pub fn with_order(cloud: &'a PointCloud, order: Vec<usize>) -> Result<Self> {
        let mut seen = alloc::vec![false; cloud.len()];
        if order.len() != cloud.len()
            || order.iter().any(|&i| i >= cloud.len() || core::mem::replace(&mut seen[i], true))
        {
            return Err(domain("order is not a permutation of the cloud"));
        }
        Ok(GreedyCounter { cloud, order })
    }

    pub fn cloud(&self) -> &PointCloud {
        self.cloud
    }

    /// Keeps a point iff it is more than `eps` from every point kept so far,
    /// visiting points in lexicographic order. No adequacy check.
    pub fn select(&self, eps: f64) -> Vec<usize> {
        let c = self.cloud;
        let eps2 = eps * eps;
        let mut kept = Vec::new();
        if c.dim() == 1 {
            // sorted on the line, the last kept point is the nearest kept one
            let mut last = f64::NEG_INFINITY;
            for &i in &self.order {
                let x = c.point(i)[0];
                let d = x - last;
                if kept.is_empty() || d * d > eps2 {
                    kept.push(i);
                    last = x;
                }
            }
            return kept;
        }
        let mut grid = SpatialIndex::empty(c.dim(), eps, c.bounding_box().0);
        for &i in &self.order {
            let p = c.point(i);
            let mut free = true;
            grid.for_each_near(p, 1, |j| {
                free = dist2(p, c.point(j as usize)) > eps2;
                free
            });
            if free {
                grid.insert(i as u32, p);
                kept.push(i);
            }
        }
        kept
    }

    pub fn count(&self, eps: f64) -> usize {
        self.select(eps).len()
    }
}

/// Greedy `ε`-separated set: a maximal one, hence also an `ε`-cover, so
/// `C(ε) ≤ count ≤ S(ε)`.
pub fn separated_greedy(cloud: &PointCloud, eps: f64) -> Result<Separated> {
    let coarse = check_adequacy(cloud, eps)?;
    let selected = GreedyCounter::new(cloud).select(eps);
    Ok(Separated {
        count: selected.len(),
        selected,
        coarse,
    })
}

/// `S(ε)`: the largest `ε`-separated subset size, by branch and bound.
pub fn separated_exact(cloud: &PointCloud, eps: f64) -> Result<usize> {
    check_adequacy(cloud, eps)?;
    Ok(max_separated(cloud, eps)?.len())
}

/// `S(ε)` in the requested mode.
pub fn separated_number(cloud: &PointCloud, eps: f64, mode: CountMode) -> Result<usize> {
    match mode {
        CountMode::Greedy => Ok(separated_greedy(cloud, eps)?.count),
        CountMode::Exact => separated_exact(cloud, eps),
    }
}

/// `P(ε)`: closed `ε`-balls are disjoint iff their centres are more than
/// `2ε` apart, so `P(ε) = S(2ε)`.
pub fn packing_number(cloud: &PointCloud, eps: f64, mode: CountMode) -> Result<usize> {
    check_adequacy(cloud, eps)?;
    match mode {
        CountMode::Greedy => Ok(GreedyCounter::new(cloud).count(2.0 * eps)),
        CountMode::Exact => Ok(max_separated(cloud, 2.0 * eps)?.len()),
    }
}

/// `C(ε)` with centres restricted to the cloud. Greedy mode returns the
/// greedy separated count, which is a valid cover.
pub fn covering_number(cloud: &PointCloud, eps: f64, mode: CountMode) -> Result<usize> {
    check_adequacy(cloud, eps)?;
    match mode {
        CountMode::Greedy => Ok(GreedyCounter::new(cloud).count(eps)),
        CountMode::Exact => Ok(min_cover(cloud, eps)?.len()),
    }
}
