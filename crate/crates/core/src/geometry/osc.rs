use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;


use super::point::{dist, dot, norm};
use super::{Ifs, Similarity};
use crate::error::{domain, Result};

/// Slack allowed on containment and disjointness margins.
pub const OSC_TOLERANCE: f64 = 1e-12;

/// An open axis-aligned box or open ball.
#[derive(Debug, Clone, PartialEq)]
pub enum Primitive {
    Box { lo: Vec<f64>, hi: Vec<f64> },
    Ball { center: Vec<f64>, radius: f64 },
}

impl Primitive {
    pub fn dim(&self) -> usize {
        match self {
            Primitive::Box { lo, .. } => lo.len(),
            Primitive::Ball { center, .. } => center.len(),
        }
    }

    /// `dist(x, complement)`, zero outside.
    pub fn depth_of(&self, x: &[f64]) -> f64 {
        match self {
            Primitive::Box { lo, hi } => x
                .iter()
                .zip(lo.iter().zip(hi))
                .map(|(&v, (&l, &h))| (v - l).min(h - v))
                .fold(f64::INFINITY, f64::min)
                .max(0.0),
            Primitive::Ball { center, radius } => (radius - dist(x, center)).max(0.0),
        }
    }

    fn diameter(&self) -> f64 {
        match self {
            Primitive::Box { lo, hi } => dist(lo, hi),
            Primitive::Ball { radius, .. } => 2.0 * radius,
        }
    }

    fn image(&self, phi: &Similarity) -> Shape {
        match self {
            Primitive::Box { lo, hi } => {
                let d = lo.len();
                let center: Vec<f64> = lo.iter().zip(hi).map(|(l, h)| 0.5 * (l + h)).collect();
                let mut axes = Vec::with_capacity(d);
                let mut half = Vec::with_capacity(d);
                for k in 0..d {
                    let mut e = vec![0.0; d];
                    e[k] = 1.0;
                    let v = phi.apply_linear(&e);
                    let len = norm(&v);
                    axes.push(v.iter().map(|x| x / len).collect());
                    half.push(0.5 * (hi[k] - lo[k]) * phi.ratio());
                }
                Shape::Oriented {
                    center: phi.apply(&center),
                    axes,
                    half,
                }
            }
            Primitive::Ball { center, radius } => Shape::Sphere {
                center: phi.apply(center),
                radius: radius * phi.ratio(),
            },
        }
    }
}

/// A finite union of open primitives.
#[derive(Debug, Clone, PartialEq)]
pub struct OpenSet {
    primitives: Vec<Primitive>,
}

impl OpenSet {
    pub fn new(primitives: Vec<Primitive>) -> Result<Self> {
        let d = primitives
            .first()
            .map(Primitive::dim)
            .ok_or_else(|| domain("open set needs at least one primitive"))?;
        for p in &primitives {
            if p.dim() != d {
                return Err(domain("open-set primitives have different dimensions"));
            }
            match p {
                Primitive::Box { lo, hi } => {
                    if hi.len() != d || lo.iter().zip(hi).any(|(l, h)| !(l < h)) {
                        return Err(domain("box needs lo < hi in every coordinate"));
                    }
                }
                Primitive::Ball { radius, .. } => {
                    if !(*radius > 0.0) {
                        return Err(domain("ball radius must be positive"));
                    }
                }
            }
        }
        Ok(OpenSet { primitives })
    }

    pub fn unit_cube(d: usize) -> Self {
        OpenSet {
            primitives: vec![Primitive::Box {
                lo: vec![0.0; d],
                hi: vec![1.0; d],
            }],
        }
    }

    pub fn primitives(&self) -> &[Primitive] {
        &self.primitives
    }

    pub fn dim(&self) -> usize {
        self.primitives[0].dim()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        self.distance_to_complement(x) > 0.0
    }

    /// A lower bound on `dist(x, U^c)`: the largest depth of `x` in a single
    /// primitive.
    pub fn distance_to_complement(&self, x: &[f64]) -> f64 {
        self.primitives
            .iter()
            .map(|p| p.depth_of(x))
            .fold(0.0, f64::max)
    }

    /// An upper bound on `diam U`: exact for one primitive, otherwise the
    /// largest primitive diameter plus the spread of their centres.
    pub fn diameter(&self) -> f64 {
        if self.primitives.len() == 1 {
            return self.primitives[0].diameter();
        }
        let d = self.dim();
        let mut lo = vec![f64::INFINITY; d];
        let mut hi = vec![f64::NEG_INFINITY; d];
        for p in &self.primitives {
            let (a, b) = match p {
                Primitive::Box { lo, hi } => (lo.clone(), hi.clone()),
                Primitive::Ball { center, radius } => (
                    center.iter().map(|c| c - radius).collect(),
                    center.iter().map(|c| c + radius).collect(),
                ),
            };
            for k in 0..d {
                lo[k] = lo[k].min(a[k]);
                hi[k] = hi[k].max(b[k]);
            }
        }
        dist(&lo, &hi)
    }
}

/// Image of a primitive under a similarity.
#[derive(Debug, Clone)]
enum Shape {
    Oriented {
        center: Vec<f64>,
        axes: Vec<Vec<f64>>,
        half: Vec<f64>,
    },
    Sphere {
        center: Vec<f64>,
        radius: f64,
    },
}

impl Shape {
    /// Signed slack of `self ⊆ target` (closures), nonnegative when contained.
    fn containment_margin(&self, target: &Primitive) -> f64 {
        match (self, target) {
            (Shape::Oriented { center, axes, half }, Primitive::Box { lo, hi }) => {
                (0..lo.len())
                    .map(|m| {
                        let ext: f64 = axes.iter().zip(half).map(|(a, h)| h * a[m].abs()).sum();
                        (center[m] - ext - lo[m]).min(hi[m] - center[m] - ext)
                    })
                    .fold(f64::INFINITY, f64::min)
            }
            (Shape::Oriented { center, axes, half }, Primitive::Ball { center: c, radius }) => {
                let d = center.len();
                let mut far = 0.0f64;
                for mask in 0..(1u64 << d) {
                    let mut v: Vec<f64> = center.iter().zip(c).map(|(a, b)| a - b).collect();
                    for (k, (a, h)) in axes.iter().zip(half).enumerate() {
                        let sign = if mask >> k & 1 == 1 { 1.0 } else { -1.0 };
                        for (vi, ai) in v.iter_mut().zip(a) {
                            *vi += sign * h * ai;
                        }
                    }
                    far = far.max(norm(&v));
                }
                radius - far
            }
            (Shape::Sphere { center, radius }, Primitive::Box { lo, hi }) => center
                .iter()
                .zip(lo.iter().zip(hi))
                .map(|(&c, (&l, &h))| (c - radius - l).min(h - c - radius))
                .fold(f64::INFINITY, f64::min),
            (Shape::Sphere { center, radius }, Primitive::Ball { center: c, radius: r }) => {
                r - dist(center, c) - radius
            }
        }
    }

    /// Signed separation of the two open shapes: positive is a gap, zero is
    /// touching closures, negative is overlap.
    fn separation(&self, other: &Shape) -> f64 {
        match (self, other) {
            (Shape::Sphere { center: a, radius: ra }, Shape::Sphere { center: b, radius: rb }) => {
                dist(a, b) - ra - rb
            }
            (Shape::Sphere { center, radius }, oriented)
            | (oriented, Shape::Sphere { center, radius }) => {
                oriented.distance_from(center) - radius
            }
            (a, b) => a.separating_axis_gap(b),
        }
    }

    /// Distance from a point to the closed oriented box (0 inside).
    fn distance_from(&self, p: &[f64]) -> f64 {
        let Shape::Oriented { center, axes, half } = self else {
            unreachable!("only called on boxes");
        };
        let v: Vec<f64> = p.iter().zip(center).map(|(a, b)| a - b).collect();
        let mut closest = center.clone();
        for (a, h) in axes.iter().zip(half) {
            let t = dot(&v, a).clamp(-h, *h);
            for (c, ai) in closest.iter_mut().zip(a) {
                *c += t * ai;
            }
        }
        dist(p, &closest)
    }

    fn projection(&self, axis: &[f64]) -> (f64, f64) {
        let Shape::Oriented { center, axes, half } = self else {
            unreachable!("only called on boxes");
        };
        let c = dot(center, axis);
        let ext: f64 = axes.iter().zip(half).map(|(a, h)| h * dot(a, axis).abs()).sum();
        (c - ext, c + ext)
    }

    /// Largest projected gap over face normals (and, in 3D, edge cross
    /// products). For `d ≤ 3` a nonnegative value certifies disjoint interiors
    /// and a negative one proves overlap.
    fn separating_axis_gap(&self, other: &Shape) -> f64 {
        let (Shape::Oriented { axes: a1, .. }, Shape::Oriented { axes: a2, .. }) = (self, other)
        else {
            unreachable!("only called on boxes");
        };
        let mut candidates: Vec<Vec<f64>> = a1.iter().chain(a2).cloned().collect();
        if a1.first().map_or(0, Vec::len) == 3 {
            for u in a1 {
                for v in a2 {
                    let w = [
                        u[1] * v[2] - u[2] * v[1],
                        u[2] * v[0] - u[0] * v[2],
                        u[0] * v[1] - u[1] * v[0],
                    ];
                    let n = norm(&w);
                    if n > 1e-9 {
                        candidates.push(w.iter().map(|x| x / n).collect());
                    }
                }
            }
        }
        candidates
            .iter()
            .map(|axis| {
                let (l1, h1) = self.projection(axis);
                let (l2, h2) = other.projection(axis);
                (l2 - h1).max(l1 - h2)
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// One check made by [`check_osc`].
#[derive(Debug, Clone, PartialEq)]
pub struct OscCheck {
    pub kind: OscCheckKind,
    /// Containment slack or separation; nonnegative (up to
    /// [`OSC_TOLERANCE`]) means the check passed.
    pub margin: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum OscCheckKind {
    /// `φ_map(primitive) ⊆ U`.
    Containment { map: usize, primitive: usize },
    /// `φ_i(U) ∩ φ_j(U) = ∅`.
    Disjointness { i: usize, j: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum OscStatus {
    Certified,
    /// The first failed check.
    Violated(OscCheckKind),
    /// No witness was supplied, or the geometry is outside what the exact
    /// tests cover.
    NotCertifiable(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct OscReport {
    pub status: OscStatus,
    pub checks: Vec<OscCheck>,
}

impl OscReport {
    pub fn certified(&self) -> bool {
        self.status == OscStatus::Certified
    }
}

/// Certifies the open set condition for the IFS's witness `U`.
///
/// Each image `φ_i(P)` of a primitive must fit inside a single primitive of
/// `U`, and every pair of images `φ_i(U)`, `φ_j(U)` must have disjoint
/// interiors. Both tests are exact for boxes and balls up to dimension 3.
pub fn check_osc(ifs: &Ifs) -> OscReport {
    let Some(u) = ifs.witness() else {
        return OscReport {
            status: OscStatus::NotCertifiable("no open-set witness supplied".into()),
            checks: Vec::new(),
        };
    };
    let images: Vec<Vec<Shape>> = ifs
        .maps()
        .iter()
        .map(|phi| u.primitives().iter().map(|p| p.image(phi)).collect())
        .collect();
    let mut checks = Vec::new();
    for (i, shapes) in images.iter().enumerate() {
        for (k, shape) in shapes.iter().enumerate() {
            let margin = u
                .primitives()
                .iter()
                .map(|p| shape.containment_margin(p))
                .fold(f64::NEG_INFINITY, f64::max);
            checks.push(OscCheck {
                kind: OscCheckKind::Containment { map: i, primitive: k },
                margin,
                passed: margin >= -OSC_TOLERANCE,
            });
        }
    }
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            let margin = images[i]
                .iter()
                .flat_map(|a| images[j].iter().map(move |b| a.separation(b)))
                .fold(f64::INFINITY, f64::min);
            checks.push(OscCheck {
                kind: OscCheckKind::Disjointness { i, j },
                margin,
                passed: margin >= -OSC_TOLERANCE,
            });
        }
    }
    let status = match checks.iter().find(|c| !c.passed) {
        Some(c) => OscStatus::Violated(c.kind.clone()),
        None if ifs.dim() > 3 && u.primitives().iter().any(|p| matches!(p, Primitive::Box { .. })) => {
            OscStatus::NotCertifiable(format!(
                "box disjointness is only exact up to dimension 3, got {}",
                ifs.dim()
            ))
        }
        None => OscStatus::Certified,
    };
    OscReport { status, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cantor_is_certified() {
        let ifs = Ifs::on_line(&[(1.0 / 3.0, 0.0), (1.0 / 3.0, 2.0 / 3.0)])
            .unwrap()
            .with_witness(OpenSet::unit_cube(1))
            .unwrap();
        let r = check_osc(&ifs);
        assert!(r.certified(), "{r:?}");
        let gap = r
            .checks
            .iter()
            .find(|c| matches!(c.kind, OscCheckKind::Disjointness { .. }))
            .unwrap();
        assert!((gap.margin - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn overlap_names_the_pair() {
        let ifs = Ifs::on_line(&[(0.5, 0.0), (0.5, 0.25), (0.25, 0.75)])
            .unwrap()
            .with_witness(OpenSet::unit_cube(1))
            .unwrap();
        let r = check_osc(&ifs);
        assert_eq!(r.status, OscStatus::Violated(OscCheckKind::Disjointness { i: 0, j: 1 }));
    }

    #[test]
    fn missing_witness_is_not_a_failure() {
        let ifs = Ifs::on_line(&[(0.5, 0.0), (0.5, 0.5)]).unwrap();
        assert!(matches!(check_osc(&ifs).status, OscStatus::NotCertifiable(_)));
    }

    #[test]
    fn rotated_square_in_ball() {
        // a quarter-turned half square centred in a disc
        let phi = Similarity::planar(0.5, core::f64::consts::FRAC_PI_4, [0.0, 0.0]).unwrap();
        let sq = Primitive::Box {
            lo: vec![-1.0, -1.0],
            hi: vec![1.0, 1.0],
        };
        let img = sq.image(&phi);
        let disc = Primitive::Ball {
            center: vec![0.0, 0.0],
            radius: 1.0,
        };
        // vertices sit at distance √2/2
        assert!((img.containment_margin(&disc) - (1.0 - 0.5f64.sqrt())).abs() < 1e-15);
        // axis-aligned projection of the diamond is ±√2/2
        assert!((img.containment_margin(&sq) - (1.0 - 0.5f64.sqrt())).abs() < 1e-15);
    }
}
