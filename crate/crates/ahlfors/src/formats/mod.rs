//! Readers and writers for every file the command line consumes or emits.
//! Floats in text formats use 17 significant digits, so every value reads
//! back bit for bit.

pub mod cloud;
pub mod curve;
pub mod report;
pub mod system;
pub mod tree;

pub use cloud::{read_cloud, write_cloud};
pub use curve::{read_curve, write_curve};
pub use system::{parse_system, system_to_string, SystemDoc};
pub use tree::{parse_tree, tree_to_string, TreeDoc};

/// `x` in scientific notation with 17 significant digits.
pub fn sci(x: f64) -> String {
    format!("{x:.16e}")
}
