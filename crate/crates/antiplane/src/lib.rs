//! Quasi-static propagation of a Mode III interfacial crack interacting
//! with channels of small line defects (microcracks and rigid line
//! inclusions) in a bimaterial plane.
//!
//! The crack runs along the bond line between two elastic half-planes and
//! is wedged open by a pair of symmetric point forces on its faces. Each
//! defect is small compared to its distance from the crack tip, so its
//! effect on the tip enters through a dipole matrix contracted with the
//! background field gradient and a tip weight vector. Summing the
//! per-defect stress-intensity perturbations and enforcing growth at
//! constant critical intensity yields the incremental advance of the tip,
//! which is iterated until arrest.
//!
//! Module map:
//! - [`model`] — domain types (materials, defects, load, tip) and
//!   configuration validation.
//! - [`field`] — closed-form background field: intensity factors and the
//!   displacement gradient of the defect-free solution.
//! - [`dipole`] — dipole matrices of the two defect types.
//! - [`perturbation`] — per-defect intensity perturbations and their sum.
//! - [`propagation`] — the quasi-static growth loop and its trace.
//! - [`asymptotics`] — closed-form far-load formulas for single defects,
//!   finite defect channels, and the infinite-channel limit.

pub mod asymptotics;
pub mod dipole;
mod error;
pub mod field;
pub mod model;
pub mod perturbation;
pub mod propagation;

pub use error::{Error, Result};
pub use model::{
    Bimaterial, Configuration, Defect, DefectKind, DefectPolar, HalfPlane, LoadCase,
    SolverSettings, TipState, ValidationReport, Violation,
};
