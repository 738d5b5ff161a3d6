//! Counting functions, s-trees and limit diagnostics for Ahlfors-regular sets.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of immutable values; file formats and the command-line front end
//! live in the `ahlfors` crate.
//!
//! Modules, bottom up:
//!
//! * [`symbolic`]: subshifts of finite type, locally constant potentials,
//!   Birkhoff sums, pressure and its zero, lattice detection, block recoding
//!   and renewal sums.
//! * [`geometry`]: contracting similarities, open-set certification,
//!   attractor sampling, conformal maps and almost-similarity estimates.
//! * [`stree`]: word-indexed trees of centres and radii, built from an IFS or
//!   from nested packings, with an axiom certifier.
//! * [`counting`]: separated, packing, covering numbers and voxel Minkowski
//!   content on finite samples, exact small-instance oracles, axiom checks.
//! * [`asymptotics`]: counting curves, dimension fits and the verdict on
//!   whether `ε^s N(ε)` converges or oscillates.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

pub mod asymptotics;
pub mod counting;
pub mod error;
pub mod geometry;
pub mod stree;
pub mod symbolic;

pub use error::{Error, Result};
