use core::fmt;
use core::str::FromStr;

use alloc::format;

use super::minkowski::{default_voxel, minkowski_content};
use super::separated::{covering_number, packing_number, separated_number, CountMode};
use crate::error::{domain, Error, Result};
use crate::geometry::PointCloud;

/// Which counting function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CountingKind {
    Separated,
    Packing,
    Covering,
    Minkowski,
}

impl CountingKind {
    pub const ALL: [CountingKind; 4] = [
        CountingKind::Separated,
        CountingKind::Packing,
        CountingKind::Covering,
        CountingKind::Minkowski,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CountingKind::Separated => "separated",
            CountingKind::Packing => "packing",
            CountingKind::Covering => "covering",
            CountingKind::Minkowski => "minkowski",
        }
    }
}

impl fmt::Display for CountingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CountingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "separated" | "S" => Ok(CountingKind::Separated),
            "packing" | "P" => Ok(CountingKind::Packing),
            "covering" | "C" => Ok(CountingKind::Covering),
            "minkowski" | "M" => Ok(CountingKind::Minkowski),
            _ => Err(domain(format!("unknown counting function {s:?}"))),
        }
    }
}

/// A counting function together with its axiom constants.
///
/// `a` is the separation needed for additivity, `g` the Lipschitz-image
/// constant and `b` the comparability constant against `S`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountingFunctionSpec {
    pub kind: CountingKind,
    pub a: f64,
    pub b: f64,
    pub g: f64,
}

impl CountingFunctionSpec {
    pub fn new(kind: CountingKind) -> Self {
        let (a, b, g) = match kind {
            CountingKind::Separated => (1.0, 1.0, 0.0),
            CountingKind::Packing => (2.0, 2.0, 1.0),
            CountingKind::Covering => (2.0, 2.0, 2.0),
            // |K_ε| is additive once the ε-neighbourhoods are disjoint
            CountingKind::Minkowski => (2.0, f64::INFINITY, 0.0),
        };
        CountingFunctionSpec { kind, a, b, g }
    }

    pub fn separated() -> Self {
        Self::new(CountingKind::Separated)
    }

    pub fn packing() -> Self {
        Self::new(CountingKind::Packing)
    }

    pub fn covering() -> Self {
        Self::new(CountingKind::Covering)
    }

    pub fn minkowski() -> Self {
        Self::new(CountingKind::Minkowski)
    }

    pub fn with_comparability(mut self, b: f64) -> Self {
        self.b = b;
        self
    }
}

/// `N(ε, K)` for one of the four functions. Minkowski uses the default voxel
/// edge and returns `eM(ε)`.
pub fn evaluate(kind: CountingKind, cloud: &PointCloud, eps: f64, mode: CountMode) -> Result<f64> {
    match kind {
        CountingKind::Separated => separated_number(cloud, eps, mode).map(|n| n as f64),
        CountingKind::Packing => packing_number(cloud, eps, mode).map(|n| n as f64),
        CountingKind::Covering => covering_number(cloud, eps, mode).map(|n| n as f64),
        CountingKind::Minkowski => {
            minkowski_content(cloud, eps, default_voxel(eps)).map(|m| m.content)
        }
    }
}

/// Short label for a mode.
pub fn mode_name(mode: CountMode) -> &'static str {
    match mode {
        CountMode::Greedy => "greedy",
        CountMode::Exact => "exact",
    }
}

impl FromStr for CountMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy" => Ok(CountMode::Greedy),
            "exact" => Ok(CountMode::Exact),
            _ => Err(domain(format!("unknown count mode {s:?}"))),
        }
    }
}

impl fmt::Display for CountMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(mode_name(*self))
    }
}
