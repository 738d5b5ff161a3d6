use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::tree::{Node, STree, TreeConstants, TreeOrigin};
use crate::error::{domain, Result};
use crate::symbolic::{power_shift, Word};

/// `Σ r_{IJ}^s` over the words `J` of length `m` below `I` that never take
/// the chosen child: `IJ` extends no `IM·choice(IM)`.
///
/// Bounded by `E²·r_I^s·(1 − ρ^s)^m`.
pub fn pruned_mass(
    tree: &STree,
    choice: &mut dyn FnMut(&Word) -> u32,
    start: &Word,
    m: usize,
) -> Result<f64> {
    let node = tree
        .get(start)
        .ok_or_else(|| domain(format!("word {start} is not stored")))?;
    if start.len() + m > tree.depth() {
        return Err(domain(format!(
            "relative depth {m} below word \"{start}\" exceeds the stored depth {}",
            tree.depth()
        )));
    }
    let s = tree.s;
    let mut frontier = alloc::vec![start.clone()];
    for _ in 0..m {
        let mut next = Vec::new();
        for w in &frontier {
            let children = tree.children(w);
            let cut = choice(w);
            if !children.contains(&cut) {
                return Err(domain(format!("choice {cut} is not a child of {w}")));
            }
            next.extend(children.into_iter().filter(|&j| j != cut).map(|j| w.child(j)));
        }
        frontier = next;
    }
    if m == 0 {
        return Ok(node.r.powf(s));
    }
    Ok(frontier
        .iter()
        .map(|w| tree.get(w).expect("stored").r.powf(s))
        .sum())
}

/// `E²·r_I^s·(1 − ρ^s)^m` with the declared constants.
pub fn pruned_mass_bound(tree: &STree, start: &Word, m: usize) -> Result<f64> {
    let node = tree
        .get(start)
        .ok_or_else(|| domain(format!("word {start} is not stored")))?;
    let k = tree.constants;
    let s = tree.s;
    Ok(k.e * k.e * node.r.powf(s) * (1.0 - k.rho.powf(s)).powi(m as i32))
}

/// The `m`-block recoding: words of length `m·k` become words of length `k`
/// over the admissible `m`-blocks, with the same centres and radii.
pub fn power_tree(tree: &STree, m: usize) -> Result<STree> {
    if m < 1 {
        return Err(domain("power must be at least 1"));
    }
    if tree.depth() < m {
        return Err(domain(format!(
            "stored depth {} is less than the power {m}",
            tree.depth()
        )));
    }
    let (shift, blocks) = power_shift(tree.shift(), m)?;
    let code: BTreeMap<&[u32], u32> = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| (b.symbols(), i as u32))
        .collect();
    let mut nodes = BTreeMap::new();
    for (w, n) in tree.nodes() {
        if w.len() % m != 0 {
            continue;
        }
        let symbols: Vec<u32> = w.symbols().chunks(m).map(|c| code[c]).collect();
        nodes.insert(Word::new(symbols), Node { x: n.x.clone(), r: n.r });
    }
    let k = tree.constants;
    let constants = TreeConstants {
        rho: k.rho.powi(m as i32),
        big_r: k.big_r.powi(m as i32),
        ..k
    };
    STree::new(shift, nodes, constants, tree.s, TreeOrigin::Power { m })
}

/// The ratios `r_{i·ω|n}/r_{ω|n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioSeries {
    /// `ω` as used: the prefix extended by smallest common children.
    pub omega: Word,
    /// `(n, r_{i·ω|n}/r_{ω|n})` for `n` from the prefix length on.
    pub values: Vec<(usize, f64)>,
    /// Last value, the estimate of the limit ratio.
    pub estimate: f64,
}

/// Follows `ω` from `prefix` down the tree, extending it by the smallest
/// symbol `j` for which both `ω|n·j` and `i·ω|n·j` are stored.
pub fn ratio_limit_diagnostic(tree: &STree, i: u32, prefix: &Word) -> Result<RatioSeries> {
    let lead = Word::new(alloc::vec![i]);
    let mut omega = prefix.clone();
    let ratio = |w: &Word| -> Option<f64> {
        let a = tree.get(&lead.concat(w))?;
        let b = tree.get(w)?;
        Some(a.r / b.r)
    };
    let first = ratio(&omega).ok_or_else(|| {
        domain(format!(
            "{i}·{prefix} is not a stored word (depth {})",
            tree.depth()
        ))
    })?;
    let mut values = alloc::vec![(omega.len(), first)];
    loop {
        let next = tree
            .children(&omega)
            .into_iter()
            .find(|&j| tree.contains(&lead.concat(&omega.child(j))));
        let Some(j) = next else { break };
        omega.push(j);
        values.push((omega.len(), ratio(&omega).expect("checked above")));
    }
    Ok(RatioSeries {
        estimate: values.last().expect("non-empty").1,
        omega,
        values,
    })
}
