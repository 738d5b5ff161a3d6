#[allow(unused_imports)]
use num_traits::Float;

use super::curve::{counting_curve, CountingCurve, ScaleGrid};
use super::diagnostic::{limit_diagnostic, LimitConfig, LimitDiagnostic};
use super::fit::{dimension_fit, DimensionFit};
use crate::counting::{CountMode, CountingKind};
use crate::error::Result;
use crate::geometry::{apply_map, moran_dimension, sample_attractor, ConformalMap, Ifs, PointCloud};

/// Paired curves and diagnostics for an attractor and its image.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageInvariance {
    /// Moran root of the system, used for both diagnostics.
    pub s: f64,
    /// The image grid is the original one times this factor, the map's
    /// derivative scale at the centre of the sample's bounding box.
    pub scale_factor: f64,
    pub original: CountingCurve,
    pub image: CountingCurve,
    pub original_fit: DimensionFit,
    pub image_fit: DimensionFit,
    pub original_limit: LimitDiagnostic,
    pub image_limit: LimitDiagnostic,
}

impl ImageInvariance {
    /// `|ŝ_K − ŝ_Φ(K)| ≤ √(σ_K² + σ_Φ(K)²)`.
    pub fn fits_agree(&self) -> bool {
        let joint = self.original_fit.stderr.hypot(self.image_fit.stderr);
        (self.original_fit.s_hat - self.image_fit.s_hat).abs() <= joint
    }
}

/// Samples the attractor at resolution `delta` from the fixed point of the
/// first map, pushes the sample through `map`, and compares the two curves.
pub fn image_invariance_experiment(
    ifs: &Ifs,
    map: &ConformalMap,
    kind: CountingKind,
    mode: CountMode,
    delta: f64,
    grid: ScaleGrid,
    config: &LimitConfig,
) -> Result<ImageInvariance> {
    let s = moran_dimension(&ifs.ratios())?;
    let seed = ifs.maps()[0].fixed_point();
    let cloud = sample_attractor(ifs, delta, &seed)?;
    image_invariance_on_sample(&cloud, s, map, kind, mode, grid, config)
}

/// [`image_invariance_experiment`] on an existing sample.
pub fn image_invariance_on_sample(
    cloud: &PointCloud,
    s: f64,
    map: &ConformalMap,
    kind: CountingKind,
    mode: CountMode,
    grid: ScaleGrid,
    config: &LimitConfig,
) -> Result<ImageInvariance> {
    let image_cloud = apply_map(map, cloud, None)?;
    let (lo, hi) = cloud.bounding_box();
    let centre: alloc::vec::Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| 0.5 * (a + b)).collect();
    let scale_factor = map.derivative_scale(&centre);
    let image_grid = ScaleGrid::new(
        grid.eps_max * scale_factor,
        grid.eps_min * scale_factor,
        grid.points_per_decade,
    )?;
    let original = counting_curve(cloud, kind, mode, grid)?;
    let image = counting_curve(&image_cloud, kind, mode, image_grid)?;
    Ok(ImageInvariance {
        s,
        scale_factor,
        original_fit: dimension_fit(&original)?,
        image_fit: dimension_fit(&image)?,
        original_limit: limit_diagnostic(&original, s, config),
        image_limit: limit_diagnostic(&image, s, config),
        original,
        image,
    })
}

/// The limit diagnostic applied to `ε^s·eM(ε)`.
pub fn minkowski_measurability_experiment(
    cloud: &PointCloud,
    s: f64,
    grid: ScaleGrid,
    config: &LimitConfig,
) -> Result<(CountingCurve, LimitDiagnostic)> {
    let curve = counting_curve(cloud, CountingKind::Minkowski, CountMode::Greedy, grid)?;
    let diag = limit_diagnostic(&curve, s, config);
    Ok((curve, diag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::Verdict;

    #[test]
    fn segment_is_minkowski_measurable() {
        let xs: alloc::vec::Vec<f64> = (0..=100_000).map(|i| i as f64 / 100_000.0).collect();
        let c = PointCloud::from_line(&xs, 5e-6).unwrap();
        let grid = ScaleGrid::new(0.1, 1e-3, 20.0).unwrap();
        let (curve, d) = minkowski_measurability_experiment(&c, 1.0, grid, &LimitConfig::default()).unwrap();
        for &(e, v) in &curve.points {
            let exact = 1.0 / e + 2.0;
            assert!((v - exact).abs() < 0.03 * exact, "{e}: {v} vs {exact}");
        }
        assert!((d.mean - 1.0).abs() < 0.03);
        assert_eq!(d.verdict, Verdict::Converging, "{d:?}");
    }

    #[test]
    fn identity_map_gives_identical_curves() {
        let ifs = Ifs::on_line(&[(1.0 / 3.0, 0.0), (1.0 / 3.0, 2.0 / 3.0)]).unwrap();
        let r = image_invariance_experiment(
            &ifs,
            &ConformalMap::identity(1),
            CountingKind::Separated,
            CountMode::Greedy,
            3f64.powi(-9),
            ScaleGrid::new(0.3, 3e-3, 10.0).unwrap(),
            &LimitConfig::default(),
        )
        .unwrap();
        assert_eq!(r.scale_factor, 1.0);
        assert_eq!(r.original.points, r.image.points);
        assert!(r.fits_agree());
    }
}
