//! Configuration ingestion, array generators, the shielding-amplification
//! diagram scanner, tabular output, and the command-line surface for the
//! `antiplane` library.

pub mod check;
pub mod cli;
pub mod config;
pub mod diagram;
pub mod output;

pub use cli::run_cli;
pub use config::{build_configuration, expand_defects, RunConfig};
pub use diagram::{diagram, CellClass, DiagramGrid};
