//! Similarities, iterated function systems, attractor samples and conformal
//! maps of `ℝ^d`.

mod almost;
mod conformal;
mod ifs;
mod osc;
mod point;
mod sample;
mod similarity;
pub mod systems;

pub use almost::{
    almost_similarity_exponent_fit, enlarge, estimate_almost_similarity, AlmostSimilarity,
    ExponentFit, COINCIDENCE, MAX_PAIRS,
};
pub use conformal::{apply_map, ConformalMap, DEFAULT_MARGIN_FACTOR};
pub use ifs::{moran_dimension, CellMap, Ifs};
pub use osc::{check_osc, OpenSet, OscCheck, OscCheckKind, OscReport, OscStatus, Primitive, OSC_TOLERANCE};
pub use point::{dist, dist2, dot, norm, PointCloud};
pub use sample::{sample_attractor, sample_cell, DEFAULT_POINT_BUDGET};
pub use similarity::Similarity;
