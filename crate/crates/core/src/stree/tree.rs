use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{domain, Result};
use crate::symbolic::{SubshiftFT, Word};

/// Centre and radius of one node.
#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub x: Vec<f64>,
    pub r: f64,
}

/// Declared constants of an s-tree.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreeConstants {
    /// Separation: `d(x_I, x_J) ≥ C(r_I + r_J)` for incomparable `I, J`.
    pub c: f64,
    /// Containment: descendants of `I` lie within diameter `D·r_I`.
    pub d: f64,
    /// Lower ratio bound `r_{Ij} ≥ ρ·r_I`.
    pub rho: f64,
    /// Upper ratio bound `r_{Ij} ≤ R·r_I`.
    pub big_r: f64,
    /// Mass comparability: `E^{−1} r_I^s ≤ Σ_{|J|=n} r_{IJ}^s ≤ E r_I^s`.
    pub e: f64,
}

/// How a tree was built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TreeOrigin {
    Ifs,
    /// Packings at scales `δ^n`.
    Packing { delta: f64 },
    Power { m: usize },
    Other,
}

/// A finite s-tree: a prefix-closed set of words, each with a centre and a
/// radius.
#[derive(Debug, Clone, PartialEq)]
pub struct STree {
    shift: SubshiftFT,
    nodes: BTreeMap<Word, Node>,
    depth: usize,
    dim: usize,
    pub constants: TreeConstants,
    pub s: f64,
    pub origin: TreeOrigin,
}

impl STree {
    /// Assembles a tree. Every stored word must be admissible and its
    /// parent stored, the root must be present, and every centre must share
    /// one dimension.
    pub fn new(
        shift: SubshiftFT,
        nodes: BTreeMap<Word, Node>,
        constants: TreeConstants,
        s: f64,
        origin: TreeOrigin,
    ) -> Result<Self> {
        let root = nodes
            .get(&Word::empty())
            .ok_or_else(|| domain("the root word is not stored"))?;
        let dim = root.x.len();
        let mut depth = 0;
        for (w, n) in &nodes {
            if n.x.len() != dim {
                return Err(domain(alloc::format!("node {w} has the wrong dimension")));
            }
            if !(n.r > 0.0 && n.r.is_finite()) {
                return Err(domain(alloc::format!("node {w} has radius {}", n.r)));
            }
            if !shift.is_admissible(w)? {
                return Err(domain(alloc::format!("word {w} is not admissible")));
            }
            if !w.is_empty() && !nodes.contains_key(&w.prefix(w.len() - 1)) {
                return Err(domain(alloc::format!("parent of {w} is not stored")));
            }
            depth = depth.max(w.len());
        }
        if !(s > 0.0) {
            return Err(domain("the exponent s must be positive"));
        }
        Ok(STree {
            shift,
            nodes,
            depth,
            dim,
            constants,
            s,
            origin,
        })
    }

    pub fn shift(&self) -> &SubshiftFT {
        &self.shift
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn get(&self, w: &Word) -> Option<&Node> {
        self.nodes.get(w)
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.nodes.contains_key(w)
    }

    /// Nodes in lexicographic order of words (parents before children).
    pub fn nodes(&self) -> impl Iterator<Item = (&Word, &Node)> {
        self.nodes.iter()
    }

    /// Stored children of `w`, by symbol.
    pub fn children(&self, w: &Word) -> Vec<u32> {
        (0..self.shift.alphabet() as u32)
            .filter(|&j| self.nodes.contains_key(&w.child(j)))
            .collect()
    }

    /// Stored words of length `n`, in lexicographic order.
    pub fn level(&self, n: usize) -> Vec<&Word> {
        self.nodes.keys().filter(|w| w.len() == n).collect()
    }

    /// Stored descendants `IJ` of `I`, `I` itself included.
    pub fn descendants<'a>(&'a self, w: &'a Word) -> impl Iterator<Item = (&'a Word, &'a Node)> + 'a {
        self.nodes
            .range(w.clone()..)
            .take_while(move |(k, _)| w.is_prefix_of(k))
    }

    /// Replaces the radius of one node.
    pub fn set_radius(&mut self, w: &Word, r: f64) -> Result<()> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(domain("radius must be positive"));
        }
        let n = self
            .nodes
            .get_mut(w)
            .ok_or_else(|| domain(alloc::format!("word {w} is not stored")))?;
        n.r = r;
        Ok(())
    }
}
