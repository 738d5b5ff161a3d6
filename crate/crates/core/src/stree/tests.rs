use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::*;
use crate::geometry::{sample_attractor, systems, PointCloud};
use crate::symbolic::Word;

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

#[test]
fn cantor_tree_depth_one() {
    let t = tree_from_ifs(&systems::cantor(), &[0.5], 1).unwrap();
    assert_eq!(t.len(), 3);
    assert!((t.get(&w("0")).unwrap().x[0] - 1.0 / 6.0).abs() < 1e-15);
    assert!((t.get(&w("1")).unwrap().x[0] - 5.0 / 6.0).abs() < 1e-15);
    let k = t.constants;
    assert_eq!((k.c, k.d, k.e), (0.5, 1.0, 1.0));
    assert!((k.rho - 1.0 / 3.0).abs() < 1e-16 && (k.big_r - 1.0 / 3.0).abs() < 1e-16);
    let t0 = tree_from_ifs(&systems::cantor(), &[0.5], 0).unwrap();
    assert_eq!(t0.len(), 1);
    assert_eq!(t0.get(&Word::empty()).unwrap().r, 1.0);
    assert!(tree_from_ifs(&systems::cantor(), &[1.5], 1).is_err());
}

#[test]
fn sierpinski_tree_passes() {
    let t = tree_from_ifs(&systems::sierpinski(), &systems::sierpinski_incenter(), 4).unwrap();
    for word in t.level(2) {
        assert_eq!(t.get(word).unwrap().r, 0.25);
    }
    let r = verify_axioms(&t);
    assert!(r.tree_axioms_pass(false), "{r:?}");
    assert!(r.passed(TreeAxiom::M3));
    assert!((r.measured.e - 1.0).abs() < 1e-12);
}

#[test]
fn perturbed_radius_breaks_mass_conservation() {
    let mut t = tree_from_ifs(&systems::cantor(), &[0.5], 3).unwrap();
    let r = t.get(&w("01")).unwrap().r;
    t.set_radius(&w("01"), 1.1 * r).unwrap();
    let rep = verify_axioms(&t);
    let e = rep.entry(TreeAxiom::T3);
    assert!(!e.passed);
    assert!(e.witness.is_some());
}

#[test]
fn pruning_the_ternary_tree() {
    let t = tree_from_ifs(&systems::sierpinski(), &systems::sierpinski_incenter(), 4).unwrap();
    let root = Word::empty();
    assert!((pruned_mass(&t, &mut |_| 0, &root, 0).unwrap() - 1.0).abs() < 1e-12);
    assert!((pruned_mass(&t, &mut |_| 1, &root, 1).unwrap() - 2.0 / 3.0).abs() < 1e-12);
    let m4 = pruned_mass(&t, &mut |w| w.len() as u32 % 3, &root, 4).unwrap();
    assert!((m4 - (2.0f64 / 3.0).powi(4)).abs() < 1e-12);
    assert!(pruned_mass(&t, &mut |_| 0, &root, 5).is_err());
    assert!(pruned_mass(&t, &mut |_| 7, &root, 1).is_err());
}

#[test]
fn power_tree_blocks() {
    let t = tree_from_ifs(&systems::cantor(), &[0.5], 6).unwrap();
    assert_eq!(power_tree(&t, 1).unwrap().len(), t.len());
    let p = power_tree(&t, 2).unwrap();
    assert_eq!(p.depth(), 3);
    assert_eq!(p.shift().alphabet(), 4);
    for word in p.level(1) {
        assert!((p.get(word).unwrap().r - 1.0 / 9.0).abs() < 1e-15);
    }
    let level6: Vec<&Vec<f64>> = t.level(6).iter().map(|w| &t.get(w).unwrap().x).collect();
    let level3: Vec<&Vec<f64>> = p.level(3).iter().map(|w| &p.get(w).unwrap().x).collect();
    assert_eq!(level6, level3);

    let t = tree_from_ifs(&systems::two_three(), &[0.5], 2).unwrap();
    let p = power_tree(&t, 2).unwrap();
    let mut rs: Vec<f64> = p.level(1).iter().map(|w| p.get(w).unwrap().r).collect();
    rs.sort_by(f64::total_cmp);
    let want = [1.0 / 9.0, 1.0 / 6.0, 1.0 / 6.0, 0.25];
    for (a, b) in rs.iter().zip(want) {
        assert!((a - b).abs() < 1e-15);
    }
    let total: f64 = rs.iter().map(|r| r.powf(t.s)).sum();
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn ifs_ratio_series_is_constant() {
    let t = tree_from_ifs(&systems::two_three(), &[0.5], 5).unwrap();
    let s = ratio_limit_diagnostic(&t, 1, &w("0")).unwrap();
    assert_eq!(s.values.len(), 4);
    assert!(s.values.iter().all(|&(_, v)| (v - 1.0 / 3.0).abs() < 1e-14));
    let s = ratio_limit_diagnostic(&t, 0, &w("0101")).unwrap();
    assert_eq!(s.values.len(), 1);
    assert!(ratio_limit_diagnostic(&t, 0, &w("01010")).is_err());
}

#[test]
fn packing_tree_of_two_points() {
    let c = PointCloud::from_line(&[0.0, 1.0], 1e-12).unwrap();
    let t = tree_from_packing(&c, Some(&[0.5, 0.5]), 0.1, 1.0, 1).unwrap();
    assert_eq!(t.level(1).len(), 2);
    for word in t.level(1) {
        assert_eq!(t.get(word).unwrap().r, 0.5);
    }
    let one = PointCloud::from_line(&[0.3], 1e-12).unwrap();
    let t = tree_from_packing(&one, None, 0.1, 1.0, 4).unwrap();
    assert_eq!(t.len(), 5);
    assert!(t.nodes().all(|(_, n)| n.r == 1.0));
    assert!(tree_from_packing(&c, None, 0.2, 1.0, 1).is_err());
    assert!(tree_from_packing(&c, None, 0.1, 0.0, 1).is_err());
}

#[test]
fn packing_tree_on_cantor() {
    let ifs = systems::cantor();
    let cloud = sample_attractor(&ifs, 3f64.powi(-8), &[0.0]).unwrap();
    let delta = 0.15;
    let t = tree_from_packing(&cloud, None, delta, ifs.similarity_dimension(), 3).unwrap();
    let r = verify_axioms(&t);
    assert!(r.tree_axioms_pass(false), "{r:#?}");
    assert!(r.measured.mass_defect <= 1e-9);
    assert!(packing_displacement(&t, delta) <= 2.0 / (1.0 - delta));
}
