//! Command-line front end for the sideband entanglement model.
//!
//! Commands compute couplings from laboratory parameters (`params`), tabulate
//! the entanglement marker and EPR variances over scaled time (`sweep`,
//! `epr`), and check closed forms against propagated moments (`validate`).

pub mod app;
pub mod config;
pub mod error;
pub mod report;
pub mod sweep;
pub mod validate;

pub use app::{run, Cli};
pub use error::CliError;
