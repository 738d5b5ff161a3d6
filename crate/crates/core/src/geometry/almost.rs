use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::point::{dist, dist2};
use super::{ConformalMap, PointCloud};
use crate::error::{domain, precondition, Result};

/// Cap on the number of point pairs examined.
pub const MAX_PAIRS: u64 = 200_000;

/// Relative distance below which two sample points are treated as equal.
pub const COINCIDENCE: f64 = 1e-9;

/// Distortion of a map on a compact set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlmostSimilarity {
    /// `√(q_max·q_min)` for the ratio field `q(x,y) = |Φx − Φy|/|x − y|`.
    pub c_k: f64,
    /// `√(q_max/q_min) ≥ 1`.
    pub deviation: f64,
    pub diameter: f64,
    /// `(deviation − 1)/diam^α`.
    pub a_hat: f64,
    pub pairs: u64,
}

/// The cloud together with the points `x ± S·diam·e_k`.
pub fn enlarge(cloud: &PointCloud, s: f64) -> Result<PointCloud> {
    if !(s >= 0.0 && s.is_finite()) {
        return Err(domain("enlargement factor must be nonnegative"));
    }
    if s == 0.0 {
        return Ok(cloud.clone());
    }
    let d = cloud.dim();
    let step = s * cloud.diameter();
    let mut coords = cloud.coords().to_vec();
    for p in cloud.points() {
        for k in 0..d {
            for sign in [-1.0, 1.0] {
                let start = coords.len();
                coords.extend_from_slice(p);
                coords[start + k] += sign * step;
            }
        }
    }
    PointCloud::new(d, coords, cloud.resolution())
}

/// Extremes of `|Φx − Φy|/|x − y|` over pairs of `sample`, visiting at most
/// [`MAX_PAIRS`] pairs at a fixed stride through the list `(0,1), (0,2), …`.
/// Pairs closer than [`COINCIDENCE`] times the bounding-box diagonal count
/// as the same point.
fn ratio_extremes(map: &ConformalMap, sample: &PointCloud) -> (f64, f64, u64) {
    let n = sample.len() as u64;
    let total = n * (n - 1) / 2;
    let stride = total.div_ceil(MAX_PAIRS).max(1);
    let d = sample.dim();
    let mut image = vec![0.0; sample.coords().len()];
    for (x, y) in sample.points().zip(image.chunks_exact_mut(d)) {
        map.apply_into(x, y);
    }
    let (lo, hi) = sample.bounding_box();
    let floor2 = (COINCIDENCE * dist(&lo, &hi)).powi(2);
    let (mut qmin, mut qmax) = (f64::INFINITY, 0.0f64);
    let mut used = 0u64;
    let (mut i, mut j) = (0u64, 1u64);
    while i + 1 < n {
        let (a, b) = (i as usize, j as usize);
        let dx2 = dist2(sample.point(a), sample.point(b));
        if dx2 > floor2 {
            let q = (dist2(&image[a * d..(a + 1) * d], &image[b * d..(b + 1) * d]) / dx2).sqrt();
            qmin = qmin.min(q);
            qmax = qmax.max(q);
            used += 1;
        }
        // advance `stride` positions in the pair list
        let mut left = stride;
        while left > 0 && i + 1 < n {
            let room = n - 1 - j;
            if left <= room {
                j += left;
                left = 0;
            } else {
                left -= room + 1;
                i += 1;
                j = i + 1;
            }
        }
    }
    (qmin, qmax, used)
}

/// Estimates `C_K` and the distortion of `map` on `K` and its
/// `S·diam(K)`-enlargement.
///
/// For affine maps the answer is exact: `C_K` is the scale and the deviation
/// is 1.
pub fn estimate_almost_similarity(
    map: &ConformalMap,
    cloud: &PointCloud,
    s: f64,
    alpha: f64,
) -> Result<AlmostSimilarity> {
    if cloud.len() < 2 {
        return Err(domain("almost-similarity estimate needs at least two points"));
    }
    let diameter = cloud.diameter();
    if let ConformalMap::Affine { scale, .. } = map {
        return Ok(AlmostSimilarity {
            c_k: *scale,
            deviation: 1.0,
            diameter,
            a_hat: 0.0,
            pairs: 0,
        });
    }
    let sample = enlarge(cloud, s)?;
    if let Some(p) = map.singular_point() {
        if sample.points().any(|x| dist(x, &p) == 0.0) {
            return Err(domain("enlarged sample meets the singular point of the map"));
        }
    }
    let (qmin, qmax, pairs) = ratio_extremes(map, &sample);
    if pairs == 0 {
        return Err(domain("all sample points coincide"));
    }
    let deviation = (qmax / qmin).sqrt().max(1.0);
    Ok(AlmostSimilarity {
        c_k: (qmax * qmin).sqrt(),
        deviation,
        diameter,
        a_hat: if diameter > 0.0 {
            (deviation - 1.0) / diameter.powf(alpha)
        } else {
            0.0
        },
        pairs,
    })
}

/// Outcome of [`almost_similarity_exponent_fit`].
#[derive(Debug, Clone, PartialEq)]
pub enum ExponentFit {
    /// `ln(dev − 1) ≈ α̂·ln diam + ln Â`.
    Fitted {
        alpha: f64,
        a: f64,
        stderr: f64,
        scales: Vec<(f64, f64)>,
    },
    /// The deviation is exactly 1 at every scale.
    ExactSimilarity,
}

/// Fits the almost-similarity exponent over nested compact sets
/// `K₁ ⊃ K₂ ⊃ …` (at least four), using the `S`-enlargement of each.
pub fn almost_similarity_exponent_fit(
    map: &ConformalMap,
    clouds: &[PointCloud],
    s: f64,
) -> Result<ExponentFit> {
    if clouds.len() < 4 {
        return Err(precondition(alloc::format!(
            "exponent fit needs at least 4 nested scales, got {}",
            clouds.len()
        )));
    }
    let mut scales = Vec::with_capacity(clouds.len());
    for c in clouds {
        let est = estimate_almost_similarity(map, c, s, 1.0)?;
        scales.push((est.diameter, est.deviation));
    }
    let usable: Vec<(f64, f64)> = scales
        .iter()
        .filter(|(d, dev)| *d > 0.0 && *dev > 1.0)
        .map(|&(d, dev)| (d.ln(), (dev - 1.0).ln()))
        .collect();
    if usable.is_empty() {
        return Ok(ExponentFit::ExactSimilarity);
    }
    if usable.len() < 2 {
        return Err(precondition("fewer than two scales show any distortion"));
    }
    let fit = crate::asymptotics::ols(&usable);
    Ok(ExponentFit::Fitted {
        alpha: fit.slope,
        a: fit.intercept.exp(),
        stderr: fit.slope_stderr,
        scales,
    })
}
