//! s-trees: word-indexed centres and radii, their construction from
//! self-similar systems and from packings, and their certification.

mod build;
mod ops;
mod tree;
mod verify;

#[cfg(test)]
mod tests;

pub use build::{packing_displacement, tree_from_ifs, tree_from_packing};
pub use ops::{power_tree, pruned_mass, pruned_mass_bound, ratio_limit_diagnostic, RatioSeries};
pub use tree::{Node, STree, TreeConstants, TreeOrigin};
pub use verify::{
    measure, verify_axioms, AxiomEntry, AxiomReport, MeasuredConstants, TreeAxiom,
    AXIOM_TOLERANCE,
};
