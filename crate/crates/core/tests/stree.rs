use ahlfors_core::geometry::{dist, sample_attractor, Ifs, OpenSet, Primitive};
use ahlfors_core::stree::{
    power_tree, pruned_mass, pruned_mass_bound, tree_from_ifs, tree_from_packing, verify_axioms,
    TreeAxiom,
};
use ahlfors_core::symbolic::Word;
use proptest::prelude::*;

/// Maps of `[0, 1]` into disjoint subintervals: ratios from `raw` scaled to
/// fill at most 90% of the interval, the rest spread as gaps.
fn line_ifs(raw: &[f64], gaps: &[f64]) -> Ifs {
    let total: f64 = raw.iter().sum();
    let ratios: Vec<f64> = raw.iter().map(|r| 0.9 * r / total).collect();
    let slack = 1.0 - ratios.iter().sum::<f64>();
    let gtotal: f64 = gaps.iter().sum();
    let mut t = 0.0;
    let mut maps = Vec::new();
    for (i, &r) in ratios.iter().enumerate() {
        t += slack * gaps[i] / gtotal;
        maps.push((r, t));
        t += r;
    }
    Ifs::on_line(&maps)
        .unwrap()
        .with_witness(
            OpenSet::new(vec![Primitive::Box {
                lo: vec![0.0],
                hi: vec![1.0],
            }])
            .unwrap(),
        )
        .unwrap()
}

fn line_ifs_strategy() -> impl Strategy<Value = Ifs> {
    (2usize..4).prop_flat_map(|n| {
        (
            prop::collection::vec(0.2f64..1.0, n),
            prop::collection::vec(0.1f64..1.0, n + 1),
        )
            .prop_map(|(r, g)| line_ifs(&r, &g))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn self_similar_trees_satisfy_the_axioms(ifs in line_ifs_strategy(), x0 in 0.05f64..0.95) {
        let t = tree_from_ifs(&ifs, &[x0], 4).unwrap();
        prop_assert_eq!(t.constants.e, 1.0);
        let r = verify_axioms(&t);
        prop_assert!(r.tree_axioms_pass(false), "{r:#?}");
        prop_assert!(r.measured.mass_defect <= 1e-12);
    }

    #[test]
    fn separation_holds_pair_by_pair(ifs in line_ifs_strategy(), x0 in 0.05f64..0.95) {
        let t = tree_from_ifs(&ifs, &[x0], 3).unwrap();
        let c = t.constants.c;
        let nodes: Vec<_> = t.nodes().collect();
        for (i, n) in &nodes {
            for (j, m) in &nodes {
                if i.is_prefix_of(j) || j.is_prefix_of(i) {
                    continue;
                }
                prop_assert!(dist(&n.x, &m.x) >= c * (n.r + m.r) * (1.0 - 1e-12), "{i} {j}");
            }
        }
        prop_assert!(verify_axioms(&t).passed(TreeAxiom::T1));
    }

    #[test]
    fn packing_trees_conserve_mass(ifs in line_ifs_strategy(), delta in 0.08f64..0.16) {
        let cloud = sample_attractor(&ifs, 1e-3, &ifs.maps()[0].fixed_point()).unwrap();
        let t = tree_from_packing(&cloud, None, delta, ifs.similarity_dimension(), 3).unwrap();
        let r = verify_axioms(&t);
        prop_assert!(r.measured.mass_defect <= 1e-9, "{}", r.measured.mass_defect);
    }

    #[test]
    fn pruned_mass_stays_under_the_bound(
        ifs in line_ifs_strategy(),
        picks in prop::collection::vec(any::<u32>(), 64),
        start in prop::collection::vec(any::<u32>(), 0..2),
        m in 0usize..4,
    ) {
        let t = tree_from_ifs(&ifs, &[0.5], 5).unwrap();
        let n = ifs.len() as u32;
        let start = Word::new(start.iter().map(|s| s % n).collect());
        let mut k = 0;
        let mut choice = |_: &Word| {
            k += 1;
            picks[k % picks.len()] % n
        };
        let mass = pruned_mass(&t, &mut choice, &start, m).unwrap();
        let bound = pruned_mass_bound(&t, &start, m).unwrap();
        prop_assert!(mass <= bound * (1.0 + 1e-12), "{mass} > {bound}");
    }

    #[test]
    fn power_tree_levels_are_base_levels(ifs in line_ifs_strategy(), m in 1usize..4) {
        let depth = 6;
        let t = tree_from_ifs(&ifs, &[0.5], depth).unwrap();
        let p = power_tree(&t, m).unwrap();
        prop_assert_eq!(p.depth(), depth / m);
        for k in 0..=depth / m {
            let mut base: Vec<(Vec<u64>, u64)> = t
                .level(m * k)
                .into_iter()
                .map(|w| {
                    let n = t.get(w).unwrap();
                    (n.x.iter().map(|v| v.to_bits()).collect(), n.r.to_bits())
                })
                .collect();
            let mut pow: Vec<(Vec<u64>, u64)> = p
                .level(k)
                .into_iter()
                .map(|w| {
                    let n = p.get(w).unwrap();
                    (n.x.iter().map(|v| v.to_bits()).collect(), n.r.to_bits())
                })
                .collect();
            base.sort();
            pow.sort();
            prop_assert_eq!(base, pow);
        }
    }
}
