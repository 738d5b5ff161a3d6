use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::tree::{Node, STree, TreeConstants, TreeOrigin};
use crate::counting::SpatialIndex;
use crate::error::{domain, precondition, Result};
use crate::geometry::{check_osc, dist, dist2, Ifs, PointCloud};
use crate::symbolic::{SubshiftFT, Word};

/// The s-tree of a self-similar set: `x_I = φ_I(x₀)`, `r_I = r_{I₁}⋯r_{Iₙ}`
/// on the full shift, with `C = dist(x₀, U^c)`, `D = diam U`, `ρ = min r_i`,
/// `R = max r_i` and `E = 1` for the certified open set `U`.
pub fn tree_from_ifs(ifs: &Ifs, x0: &[f64], depth: usize) -> Result<STree> {
    let report = check_osc(ifs);
    if !report.certified() {
        return Err(precondition(format!(
            "the open set condition is not certified: {:?}",
            report.status
        )));
    }
    let u = ifs.witness().expect("certified systems carry a witness");
    if x0.len() != ifs.dim() || !u.contains(x0) {
        return Err(precondition(format!("x₀ = {x0:?} is not in the open set")));
    }
    let ratios = ifs.ratios();
    let s = ifs.similarity_dimension();
    let shift = SubshiftFT::full(ifs.len())?;
    let mut nodes = BTreeMap::new();
    let mut frontier = vec![(Word::empty(), crate::geometry::CellMap::identity(ifs.dim()))];
    nodes.insert(
        Word::empty(),
        Node {
            x: x0.to_vec(),
            r: 1.0,
        },
    );
    for _ in 0..depth {
        let mut next = Vec::with_capacity(frontier.len() * ifs.len());
        for (w, m) in &frontier {
            for (j, phi) in ifs.maps().iter().enumerate() {
                let child = m.then(phi);
                let cw = w.child(j as u32);
                nodes.insert(
                    cw.clone(),
                    Node {
                        x: child.apply(x0),
                        r: child.ratio,
                    },
                );
                next.push((cw, child));
            }
        }
        frontier = next;
    }
    let constants = TreeConstants {
        c: u.distance_to_complement(x0),
        d: u.diameter(),
        rho: ratios.iter().copied().fold(f64::INFINITY, f64::min),
        big_r: ratios.iter().copied().fold(0.0, f64::max),
        e: 1.0,
    };
    STree::new(shift, nodes, constants, s, TreeOrigin::Ifs)
}

/// Strict total order on cloud points: coordinates lexicographically, then
/// the index.
fn order(cloud: &PointCloud) -> Vec<usize> {
    cloud.lexicographic_order()
}

/// Greedy maximal packing: keeps a point iff it is more than `2r` from all
/// kept points, so the closed `r`-balls are disjoint.
fn packing(cloud: &PointCloud, ord: &[usize], r: f64) -> Vec<usize> {
    let sep = 2.0 * r;
    let mut grid = SpatialIndex::empty(cloud.dim(), sep, cloud.bounding_box().0);
    let mut kept = Vec::new();
    for &i in ord {
        let p = cloud.point(i);
        let mut free = true;
        grid.for_each_near(p, 1, |j| {
            free = dist2(p, cloud.point(kept[j as usize])) > sep * sep;
            free
        });
        if free {
            grid.insert(kept.len() as u32, p);
            kept.push(i);
        }
    }
    kept
}

/// Index of the nearest member of `set` to `p`, ties to the earlier member.
/// `set` must be `reach`-dense for the query point.
fn nearest(cloud: &PointCloud, set: &[usize], index: &SpatialIndex, p: &[f64]) -> usize {
    let mut best = (f64::INFINITY, usize::MAX);
    index.for_each_near(p, 1, |k| {
        let d = dist2(p, cloud.point(set[k as usize]));
        if (d, k as usize) < best {
            best = (d, k as usize);
        }
        true
    });
    if best.1 == usize::MAX {
        // density failed by rounding; fall back to a scan
        for (k, &i) in set.iter().enumerate() {
            let d = dist2(p, cloud.point(i));
            if (d, k) < best {
                best = (d, k);
            }
        }
    }
    best.1
}

fn index_of(cloud: &PointCloud, set: &[usize], h: f64) -> SpatialIndex {
    let mut index = SpatialIndex::empty(cloud.dim(), h, cloud.bounding_box().0);
    for (k, &i) in set.iter().enumerate() {
        index.insert(k as u32, cloud.point(i));
    }
    index
}

/// The s-tree of an s-regular sample built from maximal `δ^n`-packings.
///
/// `V₀` is the first point in the order, `V_n` a greedy maximal packing by
/// closed `δ^n`-balls in the same order, and each `y ∈ V_{n+1}` hangs below
/// its nearest point of `V_n`. Children are numbered in the point order. Each
/// cloud point is assigned to its nearest deepest-level node, and
/// `r_I = μ(M_I)^{1/s}` where `μ(M_I)` is the weight routed through `I`, so
/// `Σ_j r_{Ij}^s = r_I^s` up to rounding. Weights default to uniform.
pub fn tree_from_packing(
    cloud: &PointCloud,
    weights: Option<&[f64]>,
    delta: f64,
    s: f64,
    depth: usize,
) -> Result<STree> {
    if !(delta > 0.0 && delta < 1.0 / 6.0) {
        return Err(domain(format!("packing ratio {delta} must lie in (0, 1/6)")));
    }
    if !(s > 0.0 && s.is_finite()) {
        return Err(domain(format!("exponent {s} must be positive")));
    }
    let n = cloud.len();
    if n == 0 {
        return Err(domain("empty cloud"));
    }
    let w: Vec<f64> = match weights {
        Some(w) => {
            if w.len() != n || w.iter().any(|&x| !(x >= 0.0)) {
                return Err(domain("weights must be nonnegative, one per point"));
            }
            let total: f64 = w.iter().sum();
            if (total - 1.0).abs() > 1e-9 {
                return Err(domain(format!("weights sum to {total}, not 1")));
            }
            w.to_vec()
        }
        None => vec![1.0 / n as f64; n],
    };
    let ord = order(cloud);
    let mut levels: Vec<Vec<usize>> = vec![vec![ord[0]]];
    for k in 1..=depth {
        let r = delta.powi(k as i32);
        let v = packing(cloud, &ord, r);
        if v.is_empty() {
            return Err(domain(format!("packing level {k} is empty")));
        }
        levels.push(v);
    }

    // parent of each level-(k+1) point within level k
    let mut parent: Vec<Vec<usize>> = Vec::with_capacity(depth);
    for k in 0..depth {
        let h = 2.0 * delta.powi(k as i32);
        let index = index_of(cloud, &levels[k], h);
        parent.push(
            levels[k + 1]
                .iter()
                .map(|&y| nearest(cloud, &levels[k], &index, cloud.point(y)))
                .collect(),
        );
    }

    // words: children numbered in the order of the level (already sorted)
    let mut words: Vec<Vec<Word>> = vec![vec![Word::empty()]];
    let mut alphabet = 1usize;
    for k in 0..depth {
        let mut counts = vec![0u32; levels[k].len()];
        let mut lw = Vec::with_capacity(levels[k + 1].len());
        for &p in &parent[k] {
            let wd = words[k][p].child(counts[p]);
            counts[p] += 1;
            lw.push(wd);
        }
        if counts.contains(&0) {
            return Err(domain(format!("a level-{k} node has no successor")));
        }
        alphabet = alphabet.max(counts.iter().copied().max().unwrap_or(1) as usize);
        words.push(lw);
    }

    // route mass to the nearest leaf
    let leaves = &levels[depth];
    let index = index_of(cloud, leaves, 2.0 * delta.powi(depth as i32));
    let mut mass = vec![0.0; leaves.len()];
    for i in 0..n {
        let k = nearest(cloud, leaves, &index, cloud.point(i));
        mass[k] += w[i];
    }
    let mut level_mass = vec![mass];
    for k in (0..depth).rev() {
        let mut m = vec![0.0; levels[k].len()];
        for (c, &p) in parent[k].iter().enumerate() {
            m[p] += level_mass[0][c];
        }
        level_mass.insert(0, m);
    }
    let root_mass = level_mass[0][0];
    let mut nodes = BTreeMap::new();
    for k in 0..=depth {
        for (j, &i) in levels[k].iter().enumerate() {
            let mu = level_mass[k][j];
            if !(mu > 0.0) {
                return Err(domain(format!(
                    "node {} carries no mass; weights must be positive near it",
                    words[k][j]
                )));
            }
            nodes.insert(
                words[k][j].clone(),
                Node {
                    x: cloud.point(i).to_vec(),
                    r: (mu / root_mass).powf(1.0 / s),
                },
            );
        }
    }
    let shift = SubshiftFT::full(alphabet)?;
    let provisional = TreeConstants {
        c: 0.0,
        d: 0.0,
        rho: 0.0,
        big_r: 1.0,
        e: 1.0,
    };
    let mut tree = STree::new(shift, nodes, provisional, s, TreeOrigin::Packing { delta })?;
    let m = super::verify::measure(&tree);
    tree.constants = TreeConstants {
        c: m.c,
        d: m.d,
        rho: m.rho,
        big_r: m.big_r,
        e: m.e,
    };
    Ok(tree)
}

/// Largest `d(x_I, x_{IJ})/δ^{|I|}` over stored pairs, to compare with the
/// packing bound `2/(1 − δ)`.
pub fn packing_displacement(tree: &STree, delta: f64) -> f64 {
    let mut worst: f64 = 0.0;
    for (w, node) in tree.nodes() {
        let scale = delta.powi(w.len() as i32);
        for (_, d) in tree.descendants(w) {
            worst = worst.max(dist(&node.x, &d.x) / scale);
        }
    }
    worst
}
