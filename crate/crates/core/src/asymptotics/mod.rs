//! Counting curves, dimension fits and limit diagnostics.

pub mod curve;
pub mod diagnostic;
pub mod experiments;
pub mod fit;
pub mod spectral;

pub use curve::{counting_curve, CountingCurve, CurveProvenance, ScaleGrid};
pub use diagnostic::{limit_diagnostic, LimitConfig, LimitDiagnostic, Verdict};
pub use experiments::{
    image_invariance_experiment, image_invariance_on_sample, minkowski_measurability_experiment,
    ImageInvariance,
};
pub use fit::{dimension_fit, ols, DimensionFit, LinearFit, MIN_FIT_DECADES, MIN_FIT_POINTS};
pub use spectral::{scan_periods, sinusoid_power, PeriodScan, PEAK_TO_MEDIAN};
