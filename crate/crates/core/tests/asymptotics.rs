use ahlfors_core::asymptotics::{
    counting_curve, dimension_fit, limit_diagnostic, CountingCurve, LimitConfig, ScaleGrid,
};
use ahlfors_core::counting::{separated_number, CountMode, CountingKind};
use ahlfors_core::geometry::{apply_map, sample_attractor, systems, ConformalMap, PointCloud};
use proptest::prelude::*;

fn synthetic(c: f64, s: f64, ripple: f64, period: f64) -> CountingCurve {
    let grid = ScaleGrid::new(0.3, 3e-4, 40.0).unwrap();
    let pts = grid
        .scales()
        .into_iter()
        .map(|e| {
            let x = -e.ln();
            (e, c * e.powf(-s) * (1.0 + ripple * (core::f64::consts::TAU * x / period).sin()))
        })
        .collect();
    CountingCurve::from_points(CountingKind::Separated, pts).unwrap()
}

#[test]
fn cantor_counts_match_cell_counts() {
    let ifs = systems::cantor();
    let cloud = sample_attractor(&ifs, 3f64.powi(-10), &[0.0]).unwrap();
    for j in 1..=8 {
        let eps = 3f64.powi(-j) * (1.0 + 1e-9);
        let cells = 2usize.pow(j as u32);
        assert_eq!(separated_number(&cloud, eps, CountMode::Greedy).unwrap(), cells, "j = {j}");
        if cells <= 64 {
            let small = sample_attractor(&ifs, 3f64.powi(-j - 1), &[0.0]).unwrap();
            assert_eq!(separated_number(&small, eps, CountMode::Exact).unwrap(), cells, "j = {j}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn power_laws_give_their_exponent(c in 0.01f64..100.0, s in 0.1f64..3.0) {
        let fit = dimension_fit(&synthetic(c, s, 0.0, 1.0)).unwrap();
        prop_assert!((fit.s_hat - s).abs() <= 1e-10, "{} vs {s}", fit.s_hat);
    }

    #[test]
    fn amplitude_ignores_constant_factors(
        s in 0.2f64..2.0,
        ripple in 0.0f64..0.3,
        period in 0.5f64..2.0,
        k in 0.001f64..1000.0,
    ) {
        let config = LimitConfig::default();
        let a = limit_diagnostic(&synthetic(1.0, s, ripple, period), s, &config);
        let b = limit_diagnostic(&synthetic(k, s, ripple, period), s, &config);
        prop_assert!((a.amplitude - b.amplitude).abs() <= 1e-12 * (1.0 + a.amplitude));
        prop_assert_eq!(a.verdict, b.verdict);
    }

    #[test]
    fn verdict_ignores_rescaled_scales(
        s in 0.2f64..2.0,
        ripple in 0.0f64..0.3,
        period in 0.5f64..2.0,
        lambda in 0.05f64..20.0,
    ) {
        let config = LimitConfig::default();
        let curve = synthetic(1.0, s, ripple, period);
        let moved = CountingCurve::from_points(
            CountingKind::Separated,
            curve.points.iter().map(|&(e, v)| (lambda * e, v)).collect(),
        )
        .unwrap();
        let a = limit_diagnostic(&curve, s, &config);
        let b = limit_diagnostic(&moved, s, &config);
        prop_assume!((a.amplitude - config.converging_amplitude).abs() > 1e-9);
        prop_assume!((a.amplitude - config.oscillating_amplitude).abs() > 1e-9);
        prop_assert_eq!(a.verdict, b.verdict);
    }

    #[test]
    fn similar_images_reparametrise_the_curve(
        pts in prop::collection::vec(prop::collection::vec(0.0f64..1.0, 2), 2..40),
        lambda in 0.2f64..5.0,
        angle in -3.2f64..3.2,
        shift in prop::collection::vec(-2.0f64..2.0, 2),
        eps in 0.05f64..0.5,
    ) {
        let cloud = PointCloud::from_points(&pts, 1e-9).unwrap();
        let rotation = vec![angle.cos(), -angle.sin(), angle.sin(), angle.cos()];
        let map = ConformalMap::affine(lambda, rotation, shift.clone()).unwrap();
        let image = apply_map(&map, &cloud, None).unwrap();
        prop_assert_eq!(
            separated_number(&image, lambda * eps, CountMode::Exact).unwrap(),
            separated_number(&cloud, eps, CountMode::Exact).unwrap()
        );

        // without rotation the greedy order is preserved, so greedy counts match too
        let scaling = ConformalMap::scaling(lambda, shift).unwrap();
        let scaled = apply_map(&scaling, &cloud, None).unwrap();
        let grid = ScaleGrid::new(0.5, 0.05, 10.0).unwrap();
        let base = counting_curve(&cloud, CountingKind::Separated, CountMode::Greedy, grid).unwrap();
        let wide = ScaleGrid::new(0.5 * lambda, 0.05 * lambda, 10.0).unwrap();
        let img = counting_curve(&scaled, CountingKind::Separated, CountMode::Greedy, wide).unwrap();
        prop_assert_eq!(base.values().collect::<Vec<_>>(), img.values().collect::<Vec<_>>());
    }
}
