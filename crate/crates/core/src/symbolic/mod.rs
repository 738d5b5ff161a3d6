//! Symbolic dynamics: shifts of finite type and what lives on them.

mod lattice;
mod potential;
mod pressure;
mod recode;
mod renewal;
mod shift;
mod word;

pub use lattice::{is_lattice, Approximant, LatticeTest, DENOMINATOR_CAP, RATIO_TOLERANCE};
pub use potential::LocallyConstantPotential;
pub use pressure::{bowen_root, pressure, TransferMatrix};
pub use recode::{power_recode, power_shift, PowerRecoding};
pub use renewal::{
    renewal_convergence_series, renewal_sum, Kernel, RenewalCount, RenewalSeries, RenewalSpec,
    DEFAULT_NODE_BUDGET,
};
pub use shift::{is_primitive, SubshiftFT};
pub use word::Word;
