use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::tree::STree;
use crate::geometry::dist;
use crate::symbolic::Word;

/// Absolute tolerance on normalised radii and masses.
pub const AXIOM_TOLERANCE: f64 = 1e-9;

/// One tree condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TreeAxiom {
    /// `r_∅ = 1` and `C·ρ < D`.
    Normalization,
    /// Separation of incomparable nodes.
    T1,
    /// Containment of descendants.
    T2,
    /// Exact mass conservation at every relative depth.
    T3,
    /// Mass conservation up to the factor `E`.
    T3Alt,
    /// Radii shrink.
    T4,
    /// Lower ratio bound `ρ`.
    T5,
    /// Upper ratio bound `R < 1`.
    M3,
}

impl TreeAxiom {
    pub const ALL: [TreeAxiom; 8] = [
        TreeAxiom::Normalization,
        TreeAxiom::T1,
        TreeAxiom::T2,
        TreeAxiom::T3,
        TreeAxiom::T3Alt,
        TreeAxiom::T4,
        TreeAxiom::T5,
        TreeAxiom::M3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TreeAxiom::Normalization => "normalization",
            TreeAxiom::T1 => "T1",
            TreeAxiom::T2 => "T2",
            TreeAxiom::T3 => "T3",
            TreeAxiom::T3Alt => "T'3",
            TreeAxiom::T4 => "T4",
            TreeAxiom::T5 => "T5",
            TreeAxiom::M3 => "M3",
        }
    }
}

/// Outcome of one condition, with the worst measured value and a witness
/// pair of words when it fails.
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomEntry {
    pub axiom: TreeAxiom,
    pub passed: bool,
    pub measured: f64,
    pub witness: Option<(Word, Word)>,
    pub note: String,
}

/// Worst-case constants over every stored pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasuredConstants {
    /// `min d(x_I, x_J)/(r_I + r_J)` over incomparable pairs.
    pub c: f64,
    /// `max diam{x_{IJ}}/r_I`.
    pub d: f64,
    /// `min r_{Ij}/r_I`.
    pub rho: f64,
    /// `max r_{Ij}/r_I`.
    pub big_r: f64,
    /// Smallest `E` with `E^{−1} ≤ Σ_{|J|=n} r_{IJ}^s / r_I^s ≤ E`.
    pub e: f64,
    /// Largest `|Σ_{|J|=n} r_{IJ}^s − r_I^s|`.
    pub mass_defect: f64,
    /// Largest radius at the deepest level.
    pub deepest_radius: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    pub entries: Vec<AxiomEntry>,
    pub measured: MeasuredConstants,
}

impl AxiomReport {
    pub fn entry(&self, axiom: TreeAxiom) -> &AxiomEntry {
        self.entries
            .iter()
            .find(|e| e.axiom == axiom)
            .expect("every axiom has an entry")
    }

    pub fn passed(&self, axiom: TreeAxiom) -> bool {
        self.entry(axiom).passed
    }

    /// `(T1)`–`(T5)`, with `(T'3)` standing in for `(T3)` when `E > 1` was
    /// declared. `(M3)` is reported separately.
    pub fn tree_axioms_pass(&self, relaxed: bool) -> bool {
        let mass = if relaxed { TreeAxiom::T3Alt } else { TreeAxiom::T3 };
        [
            TreeAxiom::Normalization,
            TreeAxiom::T1,
            TreeAxiom::T2,
            mass,
            TreeAxiom::T4,
            TreeAxiom::T5,
        ]
        .iter()
        .all(|&a| self.passed(a))
    }
}

struct Worst {
    value: f64,
    witness: Option<(Word, Word)>,
}

impl Worst {
    fn min() -> Self {
        Worst {
            value: f64::INFINITY,
            witness: None,
        }
    }

    fn max() -> Self {
        Worst {
            value: f64::NEG_INFINITY,
            witness: None,
        }
    }

    fn lower(&mut self, v: f64, a: &Word, b: &Word) {
        if v < self.value {
            self.value = v;
            self.witness = Some((a.clone(), b.clone()));
        }
    }

    fn raise(&mut self, v: f64, a: &Word, b: &Word) {
        if v > self.value {
            self.value = v;
            self.witness = Some((a.clone(), b.clone()));
        }
    }
}

struct Scan {
    c: Worst,
    d: Worst,
    rho: Worst,
    big_r: Worst,
    e: Worst,
    defect: Worst,
    t1_slack: Worst,
    t2_excess: Worst,
    t5_slack: Worst,
    m3_excess: Worst,
    deepest: f64,
}

fn scan(tree: &STree) -> Scan {
    let k = tree.constants;
    let s = tree.s;
    let nodes: Vec<(&Word, &super::Node)> = tree.nodes().collect();
    let mut sc = Scan {
        c: Worst::min(),
        d: Worst::max(),
        rho: Worst::min(),
        big_r: Worst::max(),
        e: Worst::max(),
        defect: Worst::max(),
        t1_slack: Worst::min(),
        t2_excess: Worst::max(),
        t5_slack: Worst::min(),
        m3_excess: Worst::max(),
        deepest: 0.0,
    };
    for (a, (wa, na)) in nodes.iter().enumerate() {
        for (wb, nb) in &nodes[a + 1..] {
            if !wa.incomparable(wb) {
                continue;
            }
            let d = dist(&na.x, &nb.x);
            sc.c.lower(d / (na.r + nb.r), wa, wb);
            sc.t1_slack.lower(d - k.c * (na.r + nb.r), wa, wb);
        }
    }
    for (w, n) in &nodes {
        let desc: Vec<(&Word, &super::Node)> = tree.descendants(w).collect();
        let mut diam = 0.0f64;
        let mut pair = ((*w).clone(), (*w).clone());
        for (i, (wi, ni)) in desc.iter().enumerate() {
            for (wj, nj) in &desc[i + 1..] {
                let d = dist(&ni.x, &nj.x);
                if d > diam {
                    diam = d;
                    pair = ((*wi).clone(), (*wj).clone());
                }
            }
        }
        sc.d.raise(diam / n.r, &pair.0, &pair.1);
        sc.t2_excess.raise(diam - k.d * n.r, &pair.0, &pair.1);

        let mut sums = vec![0.0f64; tree.depth() + 1 - w.len()];
        let mut first: Vec<Option<&Word>> = vec![None; sums.len()];
        for (wd, nd) in &desc {
            let rel = wd.len() - w.len();
            sums[rel] += nd.r.powf(s);
            first[rel].get_or_insert(wd);
        }
        let own = n.r.powf(s);
        for (rel, &sum) in sums.iter().enumerate().skip(1) {
            let Some(at) = first[rel] else { break };
            sc.defect.raise((sum - own).abs(), w, at);
            let q = sum / own;
            sc.e.raise(q.max(1.0 / q), w, at);
        }

        for j in tree.children(w) {
            let cw = w.child(j);
            let cr = tree.get(&cw).expect("stored child").r;
            let q = cr / n.r;
            sc.rho.lower(q, w, &cw);
            sc.big_r.raise(q, w, &cw);
            sc.t5_slack.lower(cr - k.rho * n.r, w, &cw);
            sc.m3_excess.raise(cr - k.big_r * n.r, w, &cw);
        }
        if w.len() == tree.depth() {
            sc.deepest = sc.deepest.max(n.r);
        }
    }
    sc
}

fn finite_or(v: f64, fallback: f64) -> f64 {
    if v.is_finite() {
        v
    } else {
        fallback
    }
}

/// Worst-case constants without judging them.
pub fn measure(tree: &STree) -> MeasuredConstants {
    let sc = scan(tree);
    MeasuredConstants {
        c: finite_or(sc.c.value, f64::INFINITY),
        d: finite_or(sc.d.value, 0.0),
        rho: finite_or(sc.rho.value, 1.0),
        big_r: finite_or(sc.big_r.value, 0.0),
        e: finite_or(sc.e.value, 1.0),
        mass_defect: finite_or(sc.defect.value, 0.0),
        deepest_radius: sc.deepest,
    }
}

/// Checks every stored pair against the declared constants.
pub fn verify_axioms(tree: &STree) -> AxiomReport {
    let k = tree.constants;
    let tol = AXIOM_TOLERANCE;
    let sc = scan(tree);
    let measured = MeasuredConstants {
        c: finite_or(sc.c.value, f64::INFINITY),
        d: finite_or(sc.d.value, 0.0),
        rho: finite_or(sc.rho.value, 1.0),
        big_r: finite_or(sc.big_r.value, 0.0),
        e: finite_or(sc.e.value, 1.0),
        mass_defect: finite_or(sc.defect.value, 0.0),
        deepest_radius: sc.deepest,
    };
    let root_r = tree.get(&Word::empty()).map_or(f64::NAN, |n| n.r);
    let mut entries = Vec::new();
    let mut push = |axiom, passed: bool, measured: f64, witness: Option<(Word, Word)>, note: String| {
        entries.push(AxiomEntry {
            axiom,
            passed,
            measured,
            witness: if passed { None } else { witness },
            note,
        });
    };
    push(
        TreeAxiom::Normalization,
        (root_r - 1.0).abs() <= tol && k.c * k.rho < k.d,
        root_r,
        Some((Word::empty(), Word::empty())),
        format!("r_∅ = {root_r}, C·ρ = {}, D = {}", k.c * k.rho, k.d),
    );
    push(
        TreeAxiom::T1,
        k.c > 0.0 && sc.t1_slack.value >= -tol,
        measured.c,
        sc.t1_slack.witness.clone(),
        format!("declared C = {}", k.c),
    );
    push(
        TreeAxiom::T2,
        sc.t2_excess.value <= tol,
        measured.d,
        sc.t2_excess.witness.clone(),
        format!("declared D = {}", k.d),
    );
    push(
        TreeAxiom::T3,
        !(sc.defect.value > tol),
        measured.mass_defect,
        sc.defect.witness.clone(),
        String::from("largest |Σ r_IJ^s − r_I^s|"),
    );
    push(
        TreeAxiom::T3Alt,
        !(sc.e.value > k.e * (1.0 + tol)),
        measured.e,
        sc.e.witness.clone(),
        format!("declared E = {}", k.e),
    );
    let t4 = tree.depth() == 0 || measured.deepest_radius < 1.0;
    push(
        TreeAxiom::T4,
        t4,
        measured.deepest_radius,
        Some((Word::empty(), Word::empty())),
        format!("largest radius at depth {}", tree.depth()),
    );
    push(
        TreeAxiom::T5,
        k.rho > 0.0 && !(sc.t5_slack.value < -tol),
        measured.rho,
        sc.t5_slack.witness.clone(),
        format!("declared ρ = {}", k.rho),
    );
    push(
        TreeAxiom::M3,
        k.big_r < 1.0 && !(sc.m3_excess.value > tol),
        measured.big_r,
        sc.m3_excess.witness.clone(),
        format!("declared R = {}", k.big_r),
    );
    AxiomReport { entries, measured }
}
