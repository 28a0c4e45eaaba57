//! Closed-form background field of the defect-free interfacial crack.
//!
//! The crack occupies the negative real axis of the tip-relative complex
//! coordinate zeta = (x - x_tip) + i y and is wedged by a point-force pair
//! of magnitude F at zeta = -a on its faces. The whole field derives from
//! one auxiliary analytic potential
//!
//!   f(zeta) = -(2 F / pi) i atan(sqrt(zeta / a)),   W = Re f,
//!
//! with the principal square root, so the branch cut lies along the crack
//! line. The displacement in each half-plane is
//!
//!   u = +W(zeta) / mu_plus          (upper half-plane)
//!   u = -W(conj zeta) / mu_minus    (lower half-plane)
//!
//! which vanishes on the bonded line, keeps the bond traction
//! mu du/dy continuous for any modulus pair, leaves the faces traction-free
//! away from the load point, and carries the intensity factor
//! K0 = F sqrt(2 / (pi a)) at the tip.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{Bimaterial, HalfPlane, LoadCase, Point, TipState};

/// Leading and second-order tip coefficients of the background field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnperturbedTip {
    /// Stress intensity factor K0.
    pub k0: f64,
    /// Second-order coefficient A0 = -K0 / a.
    pub a0: f64,
}

impl UnperturbedTip {
    pub fn new(load: &LoadCase, tip: &TipState) -> Result<Self> {
        Ok(UnperturbedTip {
            k0: k0(load.force, tip.a)?,
            a0: a0(load.force, tip.a)?,
        })
    }
}

/// Stress intensity factor of the unperturbed crack, F sqrt(2 / (pi a)).
pub fn k0(force: f64, a: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::NonPositiveTipDistance(a));
    }
    Ok(force * (2.0 / (PI * a)).sqrt())
}

/// Second-order tip coefficient, -K0 / a. Decays as a^(-3/2) and is always
/// opposite in sign to K0.
pub fn a0(force: f64, a: f64) -> Result<f64> {
    Ok(-k0(force, a)? / a)
}

/// Derivative g = f' of the auxiliary potential,
///
///   g(zeta) = -(F / pi) i sqrt(a) / (sqrt(zeta) (zeta + a)).
///
/// On the bonded line (zeta real positive) g is purely imaginary and
/// -Im g(x) is the bond traction F sqrt(a) / (pi sqrt(x) (x + a)); near the
/// tip, g -> -i K0 / sqrt(2 pi zeta).
///
/// Points exactly on the crack line carry a signed-zero imaginary part that
/// selects the face; off-axis callers never need to care.
pub fn potential_derivative(zeta: Complex64, force: f64, a: f64) -> Result<Complex64> {
    if !(a > 0.0) {
        return Err(Error::NonPositiveTipDistance(a));
    }
    if zeta == Complex64::new(0.0, 0.0) || zeta == Complex64::new(-a, 0.0) {
        return Err(Error::SingularPoint);
    }
    let num = Complex64::new(0.0, -force / PI) * a.sqrt();
    Ok(num / (zeta.sqrt() * (zeta + a)))
}

/// The auxiliary potential f itself, -(2 F / pi) i atan(sqrt(zeta / a)).
///
/// Exposed for verification: finite differences of Re f reproduce
/// [`potential_derivative`] and hence [`grad_u0`].
pub fn potential(zeta: Complex64, force: f64, a: f64) -> Result<Complex64> {
    if !(a > 0.0) {
        return Err(Error::NonPositiveTipDistance(a));
    }
    if zeta == Complex64::new(0.0, 0.0) || zeta == Complex64::new(-a, 0.0) {
        return Err(Error::SingularPoint);
    }
    let root = (zeta / a).sqrt();
    Ok(Complex64::new(0.0, -2.0 * force / PI) * root.atan())
}

/// Out-of-plane displacement of the background field at a point off the
/// crack line.
pub fn displacement(
    point: Point,
    material: &Bimaterial,
    load: &LoadCase,
    tip: &TipState,
) -> Result<f64> {
    let side = side_of(point, tip)?;
    let zeta = tip_relative(point, tip);
    match side {
        HalfPlane::Upper => Ok(potential(zeta, load.force, tip.a)?.re / material.mu_plus),
        HalfPlane::Lower => Ok(-potential(zeta.conj(), load.force, tip.a)?.re / material.mu_minus),
    }
}

/// Cartesian gradient of the background displacement at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldGradient {
    pub gx: f64,
    pub gy: f64,
}

impl FieldGradient {
    pub fn dot(&self, vx: f64, vy: f64) -> f64 {
        self.gx * vx + self.gy * vy
    }

    pub fn norm(&self) -> f64 {
        self.gx.hypot(self.gy)
    }
}

/// Gradient of the background displacement.
///
/// The half-plane is inferred from the sign of `point.y`; on the bonded
/// line (y = 0 ahead of the tip) the upper-side limit is returned, and
/// points on the crack line are rejected because the two faces disagree
/// there. Use [`grad_u0_side`] to pin the side explicitly.
pub fn grad_u0(
    point: Point,
    material: &Bimaterial,
    load: &LoadCase,
    tip: &TipState,
) -> Result<FieldGradient> {
    let side = side_of(point, tip)?;
    grad_u0_side(point, side, material, load, tip)
}

/// Gradient of the background displacement on a caller-chosen side.
pub fn grad_u0_side(
    point: Point,
    side: HalfPlane,
    material: &Bimaterial,
    load: &LoadCase,
    tip: &TipState,
) -> Result<FieldGradient> {
    let zeta = tip_relative(point, tip);
    match side {
        HalfPlane::Upper => {
            let g = potential_derivative(zeta, load.force, tip.a)?;
            Ok(FieldGradient {
                gx: g.re / material.mu_plus,
                gy: -g.im / material.mu_plus,
            })
        }
        HalfPlane::Lower => {
            let g = potential_derivative(zeta.conj(), load.force, tip.a)?;
            Ok(FieldGradient {
                gx: -g.re / material.mu_minus,
                gy: -g.im / material.mu_minus,
            })
        }
    }
}

fn tip_relative(point: Point, tip: &TipState) -> Complex64 {
    Complex64::new(point.x - tip.x, point.y)
}

fn side_of(point: Point, tip: &TipState) -> Result<HalfPlane> {
    if point.y > 0.0 {
        Ok(HalfPlane::Upper)
    } else if point.y < 0.0 {
        Ok(HalfPlane::Lower)
    } else if point.x - tip.x > 0.0 {
        // Bonded line: both sides agree on u (zero) and on the traction.
        Ok(HalfPlane::Upper)
    } else {
        Err(Error::OnCrackLine)
    }
}
