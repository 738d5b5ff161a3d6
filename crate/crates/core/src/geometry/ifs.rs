use alloc::collections::BinaryHeap;
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

#[allow(unused_imports)]
use num_traits::Float;

use super::osc::OpenSet;
use super::point::dist;
use super::similarity::{compose_parts, identity, Similarity};
use crate::error::{domain, Result};
use crate::symbolic::Word;

/// An iterated function system of `N ≥ 2` contracting similarities of `ℝ^d`,
/// optionally carrying a candidate open set for the open set condition.
#[derive(Debug, Clone, PartialEq)]
pub struct Ifs {
    maps: Vec<Similarity>,
    witness: Option<OpenSet>,
}

impl Ifs {
    pub fn new(maps: Vec<Similarity>) -> Result<Self> {
        if maps.len() < 2 {
            return Err(domain("an IFS needs at least two maps"));
        }
        let d = maps[0].dim();
        if maps.iter().any(|m| m.dim() != d) {
            return Err(domain("IFS maps act on different dimensions"));
        }
        Ok(Ifs {
            maps,
            witness: None,
        })
    }

    pub fn with_witness(mut self, witness: OpenSet) -> Result<Self> {
        if witness.dim() != self.dim() {
            return Err(domain("open set and IFS have different dimensions"));
        }
        self.witness = Some(witness);
        Ok(self)
    }

    /// Maps `x ↦ r_i x + t_i` on the line.
    pub fn on_line(maps: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            maps.iter()
                .map(|&(r, t)| Similarity::scaling(r, alloc::vec![t]))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn maps(&self) -> &[Similarity] {
        &self.maps
    }

    pub fn witness(&self) -> Option<&OpenSet> {
        self.witness.as_ref()
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.maps[0].dim()
    }

    pub fn ratios(&self) -> Vec<f64> {
        self.maps.iter().map(Similarity::ratio).collect()
    }

    /// The same system with the maps reordered: new map `i` is old map
    /// `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let mut seen = alloc::vec![false; self.len()];
        for &i in order {
            if i >= self.len() || core::mem::replace(&mut seen[i], true) {
                return Err(domain("not a permutation of the maps"));
            }
        }
        if order.len() != self.len() {
            return Err(domain("not a permutation of the maps"));
        }
        Ok(Ifs {
            maps: order.iter().map(|&i| self.maps[i].clone()).collect(),
            witness: self.witness.clone(),
        })
    }

    /// `φ_I = φ_{I₁} ∘ … ∘ φ_{Iₙ}`.
    pub fn word_map(&self, word: &Word) -> Result<CellMap> {
        let mut m = CellMap::identity(self.dim());
        for &s in word.symbols() {
            let phi = self
                .maps
                .get(s as usize)
                .ok_or_else(|| domain(format!("symbol {s} outside the IFS alphabet")))?;
            m = m.then(phi);
        }
        Ok(m)
    }

    /// `s` with `Σ r_i^s = 1`.
    pub fn similarity_dimension(&self) -> f64 {
        moran_dimension(&self.ratios()).expect("IFS ratios are valid")
    }

    /// A ball `B(c, R)` with `φ_i(B) ⊆ B` for every map, hence containing the
    /// attractor. `c` is the fixed point of the first map, which lies on `K`.
    pub fn invariant_ball(&self) -> (Vec<f64>, f64) {
        let c = self.maps[0].fixed_point();
        let radius = self
            .maps
            .iter()
            .map(|m| dist(&m.apply(&c), &c) / (1.0 - m.ratio()))
            .fold(0.0, f64::max);
        (c, radius)
    }

    /// Bounds `lower ≤ diam K ≤ upper`, with `upper` within a relative
    /// `1e−12` of `lower` unless the search budget runs out first.
    pub fn diameter_bounds(&self) -> (f64, f64) {
        PairSearch::new(self).run()
    }

    /// Bounds on `sup_{y∈K} |p − y|`.
    pub fn farthest_bounds(&self, p: &[f64]) -> (f64, f64) {
        farthest(self, p)
    }
}

/// A composed similarity `φ_I`, identity included.
#[derive(Debug, Clone, PartialEq)]
pub struct CellMap {
    pub ratio: f64,
    pub rotation: Vec<f64>,
    pub translation: Vec<f64>,
}

impl CellMap {
    pub fn identity(d: usize) -> Self {
        CellMap {
            ratio: 1.0,
            rotation: identity(d),
            translation: alloc::vec![0.0; d],
        }
    }

    /// `self ∘ φ`.
    pub fn then(&self, phi: &Similarity) -> Self {
        let (ratio, rotation, translation) = compose_parts(
            self.ratio,
            &self.rotation,
            &self.translation,
            phi.ratio(),
            phi.rotation(),
            phi.translation(),
        );
        CellMap {
            ratio,
            rotation,
            translation,
        }
    }

    pub fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        super::similarity::apply_affine(self.ratio, &self.rotation, &self.translation, x, out);
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = alloc::vec![0.0; x.len()];
        self.apply_into(x, &mut out);
        out
    }
}

const RELATIVE_GAP: f64 = 1e-12;
const MAX_SPLITS: usize = 1_000_000;

struct Cell {
    map: CellMap,
    center: Vec<f64>,
    children: Option<core::ops::Range<usize>>,
}

struct Candidate {
    upper: f64,
    a: usize,
    b: usize,
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Candidate {}
impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.upper
            .total_cmp(&other.upper)
            .then(other.a.cmp(&self.a))
            .then(other.b.cmp(&self.b))
    }
}

struct PairSearch<'a> {
    ifs: &'a Ifs,
    anchor: Vec<f64>,
    radius: f64,
    cells: Vec<Cell>,
}

impl<'a> PairSearch<'a> {
    fn new(ifs: &'a Ifs) -> Self {
        let (anchor, radius) = ifs.invariant_ball();
        let root = Cell {
            map: CellMap::identity(ifs.dim()),
            center: anchor.clone(),
            children: None,
        };
        PairSearch {
            ifs,
            anchor,
            radius,
            cells: alloc::vec![root],
        }
    }

    fn children(&mut self, i: usize) -> core::ops::Range<usize> {
        if let Some(r) = self.cells[i].children.clone() {
            return r;
        }
        let start = self.cells.len();
        for phi in self.ifs.maps() {
            let map = self.cells[i].map.then(phi);
            let center = map.apply(&self.anchor);
            self.cells.push(Cell {
                map,
                center,
                children: None,
            });
        }
        let r = start..self.cells.len();
        self.cells[i].children = Some(r.clone());
        r
    }

    fn bounds(&self, a: usize, b: usize) -> (f64, f64) {
        let (ca, cb) = (&self.cells[a], &self.cells[b]);
        let d = dist(&ca.center, &cb.center);
        (d, d + (ca.map.ratio + cb.map.ratio) * self.radius)
    }

    fn run(mut self) -> (f64, f64) {
        if self.radius == 0.0 {
            return (0.0, 0.0);
        }
        let mut lower = 0.0f64;
        let mut heap = BinaryHeap::new();
        heap.push(Candidate {
            upper: 2.0 * self.radius,
            a: 0,
            b: 0,
        });
        let mut splits = 0;
        while let Some(top) = heap.pop() {
            if top.upper <= lower * (1.0 + RELATIVE_GAP) || splits >= MAX_SPLITS {
                return (lower, top.upper.max(lower * (1.0 + RELATIVE_GAP)));
            }
            splits += 1;
            let (a, b) = (top.a, top.b);
            let mut pairs = Vec::new();
            if a == b {
                let r = self.children(a);
                for i in r.clone() {
                    for j in i..r.end {
                        pairs.push((i, j));
                    }
                }
            } else if self.cells[a].map.ratio >= self.cells[b].map.ratio {
                for i in self.children(a) {
                    pairs.push((i, b));
                }
            } else {
                for j in self.children(b) {
                    pairs.push((a, j));
                }
            }
            for (i, j) in pairs {
                let (lo, hi) = self.bounds(i, j);
                lower = lower.max(lo);
                if hi > lower * (1.0 + RELATIVE_GAP) {
                    heap.push(Candidate { upper: hi, a: i, b: j });
                }
            }
        }
        (lower, lower * (1.0 + RELATIVE_GAP))
    }
}

fn farthest(ifs: &Ifs, p: &[f64]) -> (f64, f64) {
    let (anchor, radius) = ifs.invariant_ball();
    let mut cells = alloc::vec![CellMap::identity(ifs.dim())];
    let mut lower = dist(p, &anchor);
    let mut heap = BinaryHeap::new();
    heap.push(Candidate {
        upper: lower + radius,
        a: 0,
        b: 0,
    });
    let mut splits = 0;
    while let Some(top) = heap.pop() {
        if top.upper <= lower * (1.0 + RELATIVE_GAP) || splits >= MAX_SPLITS || radius == 0.0 {
            return (lower, top.upper.max(lower * (1.0 + RELATIVE_GAP)));
        }
        splits += 1;
        for phi in ifs.maps() {
            let map = cells[top.a].then(phi);
            let d = dist(p, &map.apply(&anchor));
            lower = lower.max(d);
            let hi = d + map.ratio * radius;
            cells.push(map);
            if hi > lower * (1.0 + RELATIVE_GAP) {
                heap.push(Candidate {
                    upper: hi,
                    a: cells.len() - 1,
                    b: 0,
                });
            }
        }
    }
    (lower, lower * (1.0 + RELATIVE_GAP))
}

/// The similarity dimension: the `s` with `Σ r_i^s = 1`.
pub fn moran_dimension(ratios: &[f64]) -> Result<f64> {
    if ratios.len() < 2 {
        return Err(domain("Moran equation needs at least two ratios"));
    }
    if let Some(r) = ratios.iter().find(|&&r| !(r > 0.0 && r < 1.0)) {
        return Err(domain(format!("ratio {r} outside (0,1)")));
    }
    let g = |s: f64| ratios.iter().map(|r| r.powf(s)).sum::<f64>() - 1.0;
    let mut hi = 1.0;
    while g(hi) > 0.0 {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(if g(lo).abs() <= g(hi).abs() { lo } else { hi })
}
