//! File formats and the command-line front end for `ahlfors-core`.
//!
//! * [`formats`]: point clouds, counting curves, system documents, s-trees
//!   and JSON reports.
//! * [`cli`]: the `ahlfors` subcommands, callable in-process through
//!   [`cli::run`].

pub mod cli;
pub mod error;
pub mod formats;
pub mod manifest;

pub use error::{CliError, FormatError};
pub use manifest::Manifest;
