//! Dipole matrices of the two line-defect types.
//!
//! A small defect perturbs the surrounding field like an elastic dipole.
//! For a line defect of half-length s inclined by alpha the dipole matrix
//! is rank one: -pi s^2 n n^T for a microcrack (n the unit normal to the
//! slit) and +pi s^2 t t^T for a movable rigid line inclusion (t the unit
//! tangent). Microcracks soften, inclusions stiffen, hence the signs.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{Defect, DefectKind};

/// Symmetric 2x2 dipole matrix in the global frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleMatrix {
    pub m11: f64,
    pub m12: f64,
    pub m22: f64,
}

impl DipoleMatrix {
    /// Matrix-vector product M v.
    pub fn apply(&self, vx: f64, vy: f64) -> (f64, f64) {
        (
            self.m11 * vx + self.m12 * vy,
            self.m12 * vx + self.m22 * vy,
        )
    }

    pub fn trace(&self) -> f64 {
        self.m11 + self.m22
    }

    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m12
    }
}

/// Dipole matrix for a defect of the given kind, half-length and
/// inclination.
pub fn dipole_matrix(kind: DefectKind, half_length: f64, alpha: f64) -> Result<DipoleMatrix> {
    if !(half_length > 0.0) {
        return Err(Error::NonPositiveHalfLength(half_length));
    }
    let c2 = (2.0 * alpha).cos();
    let s2 = (2.0 * alpha).sin();
    let m = PI * half_length * half_length / 2.0;
    Ok(match kind {
        DefectKind::Microcrack => DipoleMatrix {
            m11: -m * (1.0 - c2),
            m12: m * s2,
            m22: -m * (1.0 + c2),
        },
        DefectKind::RigidLineInclusion => DipoleMatrix {
            m11: m * (1.0 + c2),
            m12: m * s2,
            m22: m * (1.0 - c2),
        },
    })
}

impl Defect {
    /// Dipole matrix of this defect.
    pub fn dipole(&self) -> DipoleMatrix {
        // Construction already guarantees half_length > 0.
        dipole_matrix(self.kind, self.half_length, self.angle)
            .expect("defect invariants hold")
    }
}
