//! Counting functions on finite samples: separated, packing and covering
//! numbers, Minkowski content, and the axiom checks.

pub mod axioms;
pub mod exact;
pub mod function;
pub mod index;
pub mod minkowski;
pub mod separated;

pub use axioms::{
    axiom_suite, chain_check, scale_ratio_bound, Axiom, AxiomSuiteReport, AxiomViolation,
    ChainCheck, COMPARABILITY_CANDIDATES, LIPSCHITZ_SCALINGS,
};
pub use exact::{max_separated, min_cover, min_cover_from, EXACT_CAP};
pub use function::{evaluate, mode_name, CountingFunctionSpec, CountingKind};
pub use index::SpatialIndex;
pub use minkowski::{
    default_voxel, finite_minkowski_content, minkowski_content, minkowski_monotonicity_check,
    unit_ball_volume, voxel_count, voxel_error_bound, MinkowskiEstimate, MonotonicityReport,
    DEFAULT_COLUMN_BUDGET,
};
pub use separated::{
    check_adequacy, covering_number, packing_number, separated_exact, separated_greedy,
    separated_number, CountMode, GreedyCounter, Separated, REFUSE_RATIO, WARN_RATIO,
};
