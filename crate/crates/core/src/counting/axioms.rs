//! The counting-function axioms (C1)–(C6), checked on finite clouds.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::exact::min_cover_from;
use super::function::{CountingFunctionSpec, CountingKind};
use super::separated::{
    check_adequacy, covering_number, packing_number, separated_number, CountMode,
};
use crate::error::{domain, Result};
use crate::geometry::PointCloud;

/// Candidate comparability constants, smallest first.
pub const COMPARABILITY_CANDIDATES: [f64; 12] =
    [1.0, 1.25, 1.5, 1.75, 2.0, 2.5, 3.0, 4.0, 6.0, 8.0, 16.0, 32.0];

/// Lipschitz scalings used for (C5).
pub const LIPSCHITZ_SCALINGS: [f64; 3] = [0.5, 2.0, 3.0];

/// `S(2ε) ≤ P(ε) ≤ C(ε) ≤ S(ε)` at one scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainCheck {
    pub eps: f64,
    pub mode: CountMode,
    pub separated_double: usize,
    pub packing: usize,
    pub covering: usize,
    pub separated: usize,
    pub holds: bool,
}

/// Evaluates the four numbers of the chain. In greedy mode each entry is the
/// greedy count, which still satisfies the chain: a greedy `2ε`-separated set
/// packs, and a greedy `ε`-separated set covers.
pub fn chain_check(cloud: &PointCloud, eps: f64, mode: CountMode) -> Result<ChainCheck> {
    let separated_double = separated_number(cloud, 2.0 * eps, mode)?;
    let packing = packing_number(cloud, eps, mode)?;
    let covering = covering_number(cloud, eps, mode)?;
    let separated = separated_number(cloud, eps, mode)?;
    Ok(ChainCheck {
        eps,
        mode,
        separated_double,
        packing,
        covering,
        separated,
        holds: separated_double <= packing && packing <= covering && covering <= separated,
    })
}

/// One of the six axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// Monotone in `ε`.
    C1,
    /// Monotone under inclusion.
    C2,
    /// Finitely subadditive.
    C3,
    /// Additive for sets more than `Aε` apart.
    C4,
    /// Lipschitz images.
    C5,
    /// Comparable with the separated number.
    C6,
}

impl Axiom {
    pub const ALL: [Axiom; 6] = [Axiom::C1, Axiom::C2, Axiom::C3, Axiom::C4, Axiom::C5, Axiom::C6];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// A failed check.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    /// Index of the offending cloud.
    pub cloud: usize,
    pub eps: f64,
    pub detail: String,
}

/// Outcome of [`axiom_suite`].
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomSuiteReport {
    pub spec: CountingFunctionSpec,
    pub mode: CountMode,
    /// Number of checks run per axiom, indexed by [`Axiom::index`].
    pub checks: [usize; 6],
    pub violations: Vec<AxiomViolation>,
    /// Smallest candidate `B` that worked for every instance, if any did.
    pub measured_b: Option<f64>,
}

impl AxiomSuiteReport {
    pub fn passed(&self, axiom: Axiom) -> bool {
        self.violations.iter().all(|v| v.axiom != axiom)
    }

    pub fn tested(&self, axiom: Axiom) -> bool {
        self.checks[axiom.index()] > 0
    }

    pub fn all_passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `N(ε, K)` with covering centres drawn from the ambient cloud `x ⊇ k`.
fn count_in(
    kind: CountingKind,
    k: &PointCloud,
    x: &PointCloud,
    eps: f64,
    mode: CountMode,
) -> Result<usize> {
    match kind {
        CountingKind::Separated => separated_number(k, eps, mode),
        CountingKind::Packing => packing_number(k, eps, mode),
        CountingKind::Covering => match mode {
            CountMode::Exact => {
                check_adequacy(k, eps)?;
                Ok(min_cover_from(k, x, eps)?.len())
            }
            CountMode::Greedy => covering_number(k, eps, mode),
        },
        CountingKind::Minkowski => Err(domain(
            "the axiom suite covers the discrete counting functions; use the monotonicity check for eM",
        )),
    }
}

struct Suite<'a> {
    spec: CountingFunctionSpec,
    mode: CountMode,
    checks: [usize; 6],
    violations: Vec<AxiomViolation>,
    cloud: usize,
    eps_grid: &'a [f64],
}

impl Suite<'_> {
    fn n(&self, k: &PointCloud, x: &PointCloud, eps: f64) -> Result<usize> {
        count_in(self.spec.kind, k, x, eps, self.mode)
    }

    fn record(&mut self, axiom: Axiom, eps: f64, ok: bool, detail: impl FnOnce() -> String) {
        self.checks[axiom.index()] += 1;
        if !ok {
            self.violations.push(AxiomViolation {
                axiom,
                cloud: self.cloud,
                eps,
                detail: detail(),
            });
        }
    }

    fn run(&mut self, k: &PointCloud, b_ok: &mut [bool]) -> Result<()> {
        let grid = self.eps_grid;
        let values = grid
            .iter()
            .map(|&e| self.n(k, k, e))
            .collect::<Result<Vec<_>>>()?;

        for i in 1..grid.len() {
            let (hi, lo) = (values[i - 1], values[i]);
            self.record(Axiom::C1, grid[i], hi <= lo, || {
                format!("N({}) = {hi} > N({}) = {lo}", grid[i - 1], grid[i])
            });
        }

        let even: Vec<usize> = (0..k.len()).step_by(2).collect();
        let sub = k.subset(&even)?;
        let half = k.len() / 2;
        let left = k.subset(&(0..half.max(1)).collect::<Vec<_>>())?;
        let right = (half > 0).then(|| k.subset(&(half..k.len()).collect::<Vec<_>>())).transpose()?;
        for (i, &e) in grid.iter().enumerate() {
            let n_sub = self.n(&sub, k, e)?;
            self.record(Axiom::C2, e, n_sub <= values[i], || {
                format!("subset count {n_sub} exceeds {}", values[i])
            });
            if let Some(right) = &right {
                let (a, b) = (self.n(&left, k, e)?, self.n(right, k, e)?);
                self.record(Axiom::C3, e, values[i] <= a + b, || {
                    format!("{} > {a} + {b}", values[i])
                });
            }
        }

        if let Some(&emax) = grid.first() {
            let (lo, hi) = k.bounding_box();
            let mut v = vec![0.0; k.dim()];
            v[0] = hi[0] - lo[0] + 1.25 * self.spec.a * emax;
            let q = k.translated(&v);
            let u = k.union(&q)?;
            for &e in grid {
                let (nu, nk, nq) = (self.n(&u, &u, e)?, self.n(k, &u, e)?, self.n(&q, &u, e)?);
                self.record(Axiom::C4, e, nu == nk + nq, || {
                    format!("N(K∪Q) = {nu} but N(K) + N(Q) = {nk} + {nq}")
                });
            }
        }

        if self.spec.kind == CountingKind::Packing {
            let g = self.spec.g;
            for &l in &LIPSCHITZ_SCALINGS {
                let scaled = scale(k, l)?;
                for (i, &e) in grid.iter().enumerate() {
                    let img = self.n(&scaled, &scaled, g * l * e)?;
                    self.record(Axiom::C5, e, img <= values[i], || {
                        format!("N({}, {l}K) = {img} > N(ε, K) = {}", g * l * e, values[i])
                    });
                }
            }
            let wave = sine_image(k)?;
            for (i, &e) in grid.iter().enumerate() {
                let img = self.n(&wave, &wave, g * e)?;
                self.record(Axiom::C5, e, img <= values[i], || {
                    format!("N({}, sin K) = {img} > N(ε, K) = {}", g * e, values[i])
                });
            }
        }

        for (i, &e) in grid.iter().enumerate() {
            for (j, &b) in COMPARABILITY_CANDIDATES.iter().enumerate() {
                if !b_ok[j] {
                    continue;
                }
                let lower = separated_number(k, b * e, self.mode)? as f64 / b;
                let upper = b * separated_number(k, e / b, self.mode)? as f64;
                let n = values[i] as f64;
                if !(lower <= n && n <= upper) {
                    b_ok[j] = false;
                }
            }
        }
        Ok(())
    }
}

fn scale(k: &PointCloud, l: f64) -> Result<PointCloud> {
    let coords = k.coords().iter().map(|x| l * x).collect();
    PointCloud::new(k.dim(), coords, l * k.resolution())
}

/// Coordinatewise sine, a 1-Lipschitz map.
fn sine_image(k: &PointCloud) -> Result<PointCloud> {
    let coords = k.coords().iter().map(|x| x.sin()).collect();
    PointCloud::new(k.dim(), coords, k.resolution())
}

/// Property checks of (C1)–(C6) for one counting function over a family of
/// small clouds and a decreasing scale grid.
///
/// (C2) and (C3) compare the cloud with its even-indexed points and its two
/// halves, (C4) with a translate placed `1.25·A·ε_max` away, (C5) with the
/// images under `x ↦ Lx` and coordinatewise sine for packing only, and
/// (C6) searches [`COMPARABILITY_CANDIDATES`] for the smallest `B` with
/// `S(Bε)/B ≤ N(ε) ≤ B·S(ε/B)` everywhere. Covering centres range over the
/// union of the clouds involved.
pub fn axiom_suite(
    spec: CountingFunctionSpec,
    clouds: &[PointCloud],
    eps_grid: &[f64],
    mode: CountMode,
) -> Result<AxiomSuiteReport> {
    if spec.kind == CountingKind::Minkowski {
        return Err(domain(
            "the axiom suite covers the discrete counting functions; use the monotonicity check for eM",
        ));
    }
    if !eps_grid.windows(2).all(|w| w[0] > w[1]) {
        return Err(domain("scale grid must be strictly decreasing"));
    }
    let mut suite = Suite {
        spec,
        mode,
        checks: [0; 6],
        violations: Vec::new(),
        cloud: 0,
        eps_grid,
    };
    let mut b_ok = [true; COMPARABILITY_CANDIDATES.len()];
    for (idx, k) in clouds.iter().enumerate() {
        suite.cloud = idx;
        suite.run(k, &mut b_ok)?;
    }
    let measured_b = COMPARABILITY_CANDIDATES
        .iter()
        .zip(&b_ok)
        .find(|(_, &ok)| ok)
        .map(|(&b, _)| b);
    if !clouds.is_empty() && !eps_grid.is_empty() {
        let ok = measured_b.is_some_and(|b| b >= 1.0 && b <= spec.b);
        suite.checks[Axiom::C6.index()] += 1;
        if !ok {
            suite.violations.push(AxiomViolation {
                axiom: Axiom::C6,
                cloud: clouds.len(),
                eps: eps_grid[0],
                detail: format!("measured B = {measured_b:?}, declared B = {}", spec.b),
            });
        }
    }
    Ok(AxiomSuiteReport {
        spec,
        mode,
        checks: suite.checks,
        violations: suite.violations,
        measured_b,
    })
}

/// Smallest `R ≥ 1` with `R^{−1}(ε₁/ε₂)^s ≤ N(ε₂)/N(ε₁) ≤ R(ε₁/ε₂)^s` over all
/// pairs `ε₁ > ε₂` of a greedy separated curve.
pub fn scale_ratio_bound(cloud: &PointCloud, s: f64, eps_grid: &[f64]) -> Result<f64> {
    let counter = super::separated::GreedyCounter::new(cloud);
    let mut values = Vec::with_capacity(eps_grid.len());
    for &e in eps_grid {
        check_adequacy(cloud, e)?;
        values.push(counter.count(e) as f64);
    }
    let mut r: f64 = 1.0;
    for i in 0..eps_grid.len() {
        for j in i + 1..eps_grid.len() {
            let predicted = (eps_grid[i] / eps_grid[j]).powf(s);
            let q = values[j] / values[i] / predicted;
            r = r.max(q).max(1.0 / q);
        }
    }
    Ok(r)
}
