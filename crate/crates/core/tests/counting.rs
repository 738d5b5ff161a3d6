use ahlfors_core::counting::{
    covering_number, finite_minkowski_content, packing_number, scale_ratio_bound,
    separated_greedy, separated_number, unit_ball_volume, CountMode,
};
use ahlfors_core::geometry::{dist, sample_attractor, systems, PointCloud};
use proptest::prelude::*;

fn cloud_strategy(n: core::ops::Range<usize>) -> impl Strategy<Value = PointCloud> {
    prop::collection::vec(prop::collection::vec(0.0f64..1.0, 2), n)
        .prop_map(|pts| PointCloud::from_points(&pts, 1e-9).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn greedy_sets_are_separated_and_covering(cloud in cloud_strategy(1..80), eps in 0.02f64..0.5) {
        let sel = separated_greedy(&cloud, eps).unwrap().selected;
        for (k, &i) in sel.iter().enumerate() {
            for &j in &sel[k + 1..] {
                prop_assert!(dist(cloud.point(i), cloud.point(j)) > eps);
            }
        }
        for p in cloud.points() {
            prop_assert!(sel.iter().any(|&i| dist(p, cloud.point(i)) <= eps));
        }
    }

    #[test]
    fn greedy_lies_between_the_exact_counts(cloud in cloud_strategy(1..30), eps in 0.05f64..0.5) {
        let greedy = separated_number(&cloud, eps, CountMode::Greedy).unwrap();
        let sep = separated_number(&cloud, eps, CountMode::Exact).unwrap();
        let cover = covering_number(&cloud, eps, CountMode::Exact).unwrap();
        prop_assert!(cover <= greedy && greedy <= sep, "{cover} {greedy} {sep}");
    }

    #[test]
    fn packing_is_separation_at_twice_the_scale(cloud in cloud_strategy(1..30), eps in 0.02f64..0.25) {
        for mode in [CountMode::Greedy, CountMode::Exact] {
            prop_assert_eq!(
                packing_number(&cloud, eps, mode).unwrap(),
                separated_number(&cloud, 2.0 * eps, mode).unwrap()
            );
        }
    }

    #[test]
    fn minkowski_volume_adds_over_far_clusters(
        a in cloud_strategy(1..12),
        b in cloud_strategy(1..12),
        eps in 0.02f64..0.2,
        gap in 0.01f64..1.0,
    ) {
        let shift = 1.0 + 2.0 * eps + gap;
        let b = b.translated(&[shift, 0.5 * gap]);
        let u = a.union(&b).unwrap();
        let h = eps / 64.0;
        let (ea, eb, eu) = (
            finite_minkowski_content(&a, eps, h).unwrap(),
            finite_minkowski_content(&b, eps, h).unwrap(),
            finite_minkowski_content(&u, eps, h).unwrap(),
        );
        let tol = eu.relative_error * (ea.volume + eb.volume + eu.volume);
        prop_assert!((eu.volume - ea.volume - eb.volume).abs() <= tol);
    }

    #[test]
    fn minkowski_content_is_sandwiched_by_counts(cloud in cloud_strategy(1..30), eps in 0.02f64..0.25) {
        let vd = unit_ball_volume(2);
        let m = finite_minkowski_content(&cloud, eps, eps / 64.0).unwrap();
        let p = packing_number(&cloud, eps, CountMode::Exact).unwrap() as f64;
        let c = covering_number(&cloud, eps, CountMode::Exact).unwrap() as f64;
        let slack = 1.0 + m.relative_error;
        prop_assert!(vd * p <= m.content * slack, "{} < V·P = {}", m.content, vd * p);
        prop_assert!(m.content <= 4.0 * vd * c * slack, "{} > 4V·C = {}", m.content, 4.0 * vd * c);
    }

    #[test]
    fn ratio_bound_is_finite_on_regular_sets(k in 3i32..6, s_off in -0.1f64..0.1) {
        let ifs = systems::cantor();
        let cloud = sample_attractor(&ifs, 3f64.powi(-9), &[0.0]).unwrap();
        let grid: Vec<f64> = (0..3 * k).map(|j| 0.3 * 2f64.powf(-(j as f64) / 3.0)).collect();
        let r = scale_ratio_bound(&cloud, ifs.similarity_dimension() + s_off, &grid).unwrap();
        prop_assert!(r.is_finite() && r >= 1.0, "{r}");
    }
}
