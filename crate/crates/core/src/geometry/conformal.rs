use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::point::{dist, dist2};
use super::similarity::{apply_affine, check_orthogonal, identity, transpose};
use super::PointCloud;
use crate::error::{domain, Result};

/// Default margin to the singular point, in units of the cloud resolution.
pub const DEFAULT_MARGIN_FACTOR: f64 = 10.0;

/// A conformal diffeomorphism of (part of) `ℝ^d`.
#[derive(Debug, Clone, PartialEq)]
pub enum ConformalMap {
    /// `x ↦ λ·Qx + t` with `λ > 0` and `Q` orthogonal.
    Affine {
        scale: f64,
        rotation: Vec<f64>,
        translation: Vec<f64>,
    },
    /// `x ↦ c + t²(x − c)/|x − c|²`.
    Inversion { center: Vec<f64>, radius: f64 },
    /// `z ↦ (az + b)/(cz + d)` on `ℝ² = ℂ`.
    Mobius {
        a: Complex64,
        b: Complex64,
        c: Complex64,
        d: Complex64,
    },
}

impl ConformalMap {
    pub fn affine(scale: f64, rotation: Vec<f64>, translation: Vec<f64>) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(domain(format!("affine scale {scale} must be positive")));
        }
        check_orthogonal(&rotation, translation.len())?;
        Ok(ConformalMap::Affine {
            scale,
            rotation,
            translation,
        })
    }

    pub fn identity(d: usize) -> Self {
        ConformalMap::Affine {
            scale: 1.0,
            rotation: identity(d),
            translation: vec![0.0; d],
        }
    }

    /// `x ↦ λx + t`.
    pub fn scaling(scale: f64, translation: Vec<f64>) -> Result<Self> {
        let d = translation.len();
        Self::affine(scale, identity(d), translation)
    }

    pub fn inversion(center: Vec<f64>, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(domain(format!("inversion radius {radius} must be positive")));
        }
        if center.is_empty() || center.iter().any(|c| !c.is_finite()) {
            return Err(domain("inversion centre must be a finite point"));
        }
        Ok(ConformalMap::Inversion { center, radius })
    }

    pub fn mobius(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det.norm() > 0.0) {
            return Err(domain("Möbius map needs ad − bc ≠ 0"));
        }
        Ok(ConformalMap::Mobius { a, b, c, d })
    }

    /// The ambient dimension, if the map fixes one.
    pub fn dim(&self) -> Option<usize> {
        match self {
            ConformalMap::Affine { translation, .. } => Some(translation.len()),
            ConformalMap::Inversion { center, .. } => Some(center.len()),
            ConformalMap::Mobius { .. } => Some(2),
        }
    }

    pub fn is_similarity(&self) -> bool {
        matches!(self, ConformalMap::Affine { .. })
            || matches!(self, ConformalMap::Mobius { c, .. } if c.norm() == 0.0)
    }

    /// The point where the map is undefined, if any.
    pub fn singular_point(&self) -> Option<Vec<f64>> {
        match self {
            ConformalMap::Affine { .. } => None,
            ConformalMap::Inversion { center, .. } => Some(center.clone()),
            ConformalMap::Mobius { c, d, .. } => {
                (c.norm() > 0.0).then(|| {
                    let z = -d / c;
                    vec![z.re, z.im]
                })
            }
        }
    }

    pub fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        match self {
            ConformalMap::Affine {
                scale,
                rotation,
                translation,
            } => apply_affine(*scale, rotation, translation, x, out),
            ConformalMap::Inversion { center, radius } => {
                let k = radius * radius / dist2(x, center);
                for ((o, xi), ci) in out.iter_mut().zip(x).zip(center) {
                    *o = ci + k * (xi - ci);
                }
            }
            ConformalMap::Mobius { a, b, c, d } => {
                let z = Complex64::new(x[0], x[1]);
                let w = (a * z + b) / (c * z + d);
                out[0] = w.re;
                out[1] = w.im;
            }
        }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; x.len()];
        self.apply_into(x, &mut out);
        out
    }

    /// `|λ_x|`, the conformal factor `|DΦ(x)|`.
    pub fn derivative_scale(&self, x: &[f64]) -> f64 {
        match self {
            ConformalMap::Affine { scale, .. } => *scale,
            ConformalMap::Inversion { center, radius } => radius * radius / dist2(x, center),
            ConformalMap::Mobius { a, b, c, d } => {
                let z = Complex64::new(x[0], x[1]);
                (a * d - b * c).norm() / (c * z + d).norm_sqr()
            }
        }
    }

    /// Largest conformal factor on the box `[lo, hi]`.
    pub fn max_derivative_scale(&self, lo: &[f64], hi: &[f64]) -> f64 {
        match self {
            ConformalMap::Affine { scale, .. } => *scale,
            _ => match self.singular_point() {
                None => self.derivative_scale(lo),
                Some(p) => {
                    let gap2 = dist2_to_box(&p, lo, hi);
                    match self {
                        ConformalMap::Inversion { radius, .. } => radius * radius / gap2,
                        ConformalMap::Mobius { a, b, c, d } => {
                            (a * d - b * c).norm() / (c.norm_sqr() * gap2)
                        }
                        ConformalMap::Affine { .. } => unreachable!(),
                    }
                }
            },
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            ConformalMap::Affine {
                scale,
                rotation,
                translation,
            } => {
                let d = translation.len();
                let qt = transpose(rotation, d);
                let mut t = vec![0.0; d];
                apply_affine(1.0 / scale, &qt, &vec![0.0; d], translation, &mut t);
                ConformalMap::Affine {
                    scale: 1.0 / scale,
                    rotation: qt,
                    translation: t.iter().map(|v| -v).collect(),
                }
            }
            ConformalMap::Inversion { .. } => self.clone(),
            ConformalMap::Mobius { a, b, c, d } => ConformalMap::Mobius {
                a: *d,
                b: -b,
                c: -c,
                d: *a,
            },
        }
    }
}

fn dist2_to_box(p: &[f64], lo: &[f64], hi: &[f64]) -> f64 {
    p.iter()
        .zip(lo.iter().zip(hi))
        .map(|(&x, (&l, &h))| {
            let g = (l - x).max(x - h).max(0.0);
            g * g
        })
        .sum()
}

/// Pushes the cloud through `map`.
///
/// The cloud's bounding box, widened by `margin` (default ten times the
/// resolution), must stay clear of the singular point. The image resolution
/// is `δ · sup |λ|` over that widened box, which is convex, so the bound is a
/// Lipschitz constant for every segment between the sample and the set it
/// represents.
pub fn apply_map(map: &ConformalMap, cloud: &PointCloud, margin: Option<f64>) -> Result<PointCloud> {
    let dim = cloud.dim();
    if let Some(d) = map.dim() {
        if d != dim {
            return Err(domain(format!("map acts on ℝ^{d}, cloud lives in ℝ^{dim}")));
        }
    }
    let margin = margin.unwrap_or(DEFAULT_MARGIN_FACTOR * cloud.resolution());
    if !(margin >= 0.0) {
        return Err(domain("margin must be nonnegative"));
    }
    let (mut lo, mut hi) = cloud.bounding_box();
    for k in 0..dim {
        lo[k] -= margin;
        hi[k] += margin;
    }
    if let Some(p) = map.singular_point() {
        if dist2_to_box(&p, &lo, &hi) == 0.0 {
            let nearest = (0..cloud.len())
                .min_by(|&i, &j| dist2(cloud.point(i), &p).total_cmp(&dist2(cloud.point(j), &p)))
                .unwrap_or(0);
            return Err(domain(format!(
                "singular point {:?} lies within the margin {margin} of the cloud hull; \
                 nearest is point {nearest} at distance {}",
                p,
                dist(cloud.point(nearest), &p)
            )));
        }
    }
    let mut coords = vec![0.0; cloud.coords().len()];
    for (x, y) in cloud.points().zip(coords.chunks_exact_mut(dim)) {
        map.apply_into(x, y);
    }
    let lip = map.max_derivative_scale(&lo, &hi);
    PointCloud::new(dim, coords, cloud.resolution() * lip)
}
