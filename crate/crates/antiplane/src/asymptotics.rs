//! Closed-form far-load limits.
//!
//! When the load sits far behind the tip (a >> d for every defect) the
//! background gradient reduces to the square-root tip field and the
//! relative perturbation of a single defect collapses to a product of two
//! angular factors:
//!
//!   microcrack:        +(1/2) (s/d)^2 mu_opp/(mu+ + mu-) cos(3phi/2 - alpha) cos(phi/2 - alpha)
//!   rigid inclusion:   -(1/2) (s/d)^2 mu_opp/(mu+ + mu-) sin(3phi/2 - alpha) sin(phi/2 - alpha)
//!
//! with mu_opp the modulus of the half-plane opposite the defect. Summing
//! these over a regular two-row channel of identical materials gives
//! closed-form expressions for the incremental advance, including an
//! explicit limit for infinitely many columns ahead of the tip. These
//! serve both as fast paths and as independent oracles for the full-field
//! route.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{Bimaterial, Defect, DefectKind, HalfPlane, TipState};

/// Row pairing of a regular defect channel.
///
/// Columns are spaced `w` apart with one defect at +h and one at -h per
/// column; the tip sits under the column indexed 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChannelArrangement {
    /// Microcracks in both rows; the lower row is rotated a quarter turn
    /// against the upper row.
    MicrocrackPerpendicularRows,
    /// Rigid line inclusions above, microcracks below, equal inclination.
    RigidAboveMicrocrackBelow,
}

/// A regular two-row channel of defects around the interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    /// Columns strictly ahead of the tip (j = 1..=n_ahead).
    pub n_ahead: usize,
    /// Columns strictly behind the tip.
    pub n_behind: usize,
    /// Vertical standoff of both rows.
    pub h: f64,
    /// Horizontal column spacing.
    pub w: f64,
    /// Defect half-length.
    pub s: f64,
    /// Upper-row inclination.
    pub alpha: f64,
    pub arrangement: ChannelArrangement,
}

impl ChannelSpec {
    fn check(&self) -> Result<()> {
        if !(self.h > 0.0) {
            return Err(Error::InvalidChannel("standoff h must be positive"));
        }
        if !(self.w > 0.0) {
            return Err(Error::InvalidChannel("spacing w must be positive"));
        }
        if !(self.s > 0.0) {
            return Err(Error::InvalidChannel("half-length s must be positive"));
        }
        Ok(())
    }
}

fn require_identical(material: &Bimaterial) -> Result<()> {
    if material.mu_plus != material.mu_minus {
        return Err(Error::NonIdenticalMaterials(material.eta()));
    }
    Ok(())
}

fn opposite_weight(material: &Bimaterial, side: HalfPlane) -> f64 {
    material.opposite_modulus(side) / (material.mu_plus + material.mu_minus)
}

/// Far-load relative perturbation of a single microcrack.
pub fn far_single_microcrack(
    s: f64,
    d: f64,
    phi: f64,
    alpha: f64,
    material: &Bimaterial,
    side: HalfPlane,
) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::DefectAtTip);
    }
    if !(s > 0.0) {
        return Err(Error::NonPositiveHalfLength(s));
    }
    let ratio = (s / d).powi(2);
    Ok(0.5
        * ratio
        * opposite_weight(material, side)
        * (1.5 * phi - alpha).cos()
        * (0.5 * phi - alpha).cos())
}

/// Far-load relative perturbation of a single rigid line inclusion.
pub fn far_single_rigid(
    s: f64,
    d: f64,
    phi: f64,
    alpha: f64,
    material: &Bimaterial,
    side: HalfPlane,
) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::DefectAtTip);
    }
    if !(s > 0.0) {
        return Err(Error::NonPositiveHalfLength(s));
    }
    let ratio = (s / d).powi(2);
    Ok(-0.5
        * ratio
        * opposite_weight(material, side)
        * (1.5 * phi - alpha).sin()
        * (0.5 * phi - alpha).sin())
}

/// Far-load relative perturbation of one defect at an arbitrary tip
/// position.
pub fn far_relative_defect(
    defect: &Defect,
    tip: &TipState,
    material: &Bimaterial,
) -> Result<f64> {
    let polar = defect.polar(tip)?;
    let side = defect.side();
    match defect.kind {
        DefectKind::Microcrack => far_single_microcrack(
            defect.half_length,
            polar.d,
            polar.phi,
            defect.angle,
            material,
            side,
        ),
        DefectKind::RigidLineInclusion => far_single_rigid(
            defect.half_length,
            polar.d,
            polar.phi,
            defect.angle,
            material,
            side,
        ),
    }
}

/// Far-load incremental advance 2 a sum_j (dK_j / K0) for an arbitrary
/// defect set, summed in input order.
pub fn far_advance(defects: &[Defect], tip: &TipState, material: &Bimaterial) -> Result<f64> {
    let mut total = 0.0;
    for (index, defect) in defects.iter().enumerate() {
        total += far_relative_defect(defect, tip, material).map_err(|e| e.at_defect(index))?;
    }
    Ok(2.0 * tip.a * total)
}

/// Column term of the perpendicular microcrack channel,
/// t/(1+t)^2 (sqrt(1+t) + 2 sqrt(t) sin 2 alpha) at t = (h/(j w))^2.
pub fn microcrack_column_term(t: f64, alpha: f64) -> f64 {
    t / ((1.0 + t) * (1.0 + t)) * ((1.0 + t).sqrt() + 2.0 * t.sqrt() * (2.0 * alpha).sin())
}

/// Column term of the mixed channel, (1 - t) t / (1 + t)^2. Tends to -1 as
/// t -> infinity, which is the standalone tip-column contribution.
pub fn mixed_column_term(t: f64) -> f64 {
    (1.0 - t) * t / ((1.0 + t) * (1.0 + t))
}

fn column_t(h: f64, w: f64, j: usize) -> f64 {
    let r = h / (j as f64 * w);
    r * r
}

/// Far-load advance of the perpendicular microcrack channel:
///
///   delta = (a s^2 / (2 h^2)) (sum_{j=1}^{n_ahead} T_j - sum_{j=1}^{n_behind} T_j).
///
/// The tip column contributes nothing, and columns behind cancel columns
/// ahead, so the advance vanishes with the tip at the channel centre.
/// Valid for identical materials only.
pub fn channel_microcracks(spec: &ChannelSpec, a: f64, force: f64, material: &Bimaterial) -> Result<f64> {
    spec.check()?;
    require_identical(material)?;
    if force == 0.0 || !force.is_finite() {
        return Err(Error::ZeroForce);
    }
    if !(a > 0.0) {
        return Err(Error::NonPositiveTipDistance(a));
    }
    if spec.arrangement != ChannelArrangement::MicrocrackPerpendicularRows {
        return Err(Error::WrongArrangement(
            "channel_microcracks needs perpendicular microcrack rows",
        ));
    }
    // summed smallest-first for stable accumulation
    let mut ahead = 0.0;
    for j in (1..=spec.n_ahead).rev() {
        ahead += microcrack_column_term(column_t(spec.h, spec.w, j), spec.alpha);
    }
    let mut behind = 0.0;
    for j in (1..=spec.n_behind).rev() {
        behind += microcrack_column_term(column_t(spec.h, spec.w, j), spec.alpha);
    }
    Ok(a * spec.s * spec.s / (2.0 * spec.h * spec.h) * (ahead - behind))
}

/// Far-load advance of the mixed channel:
///
///   delta = (a s^2 cos 2 alpha / (2 h^2)) (-1 + sum_{j=1}^{n_ahead} S_j + sum_{j=1}^{n_behind} S_j).
///
/// Both sums enter with the same sign, so the advance field is symmetric
/// about the channel centre; cos 2 alpha factors out entirely. Valid for
/// identical materials only.
pub fn channel_mixed(spec: &ChannelSpec, a: f64, force: f64, material: &Bimaterial) -> Result<f64> {
    spec.check()?;
    require_identical(material)?;
    if force == 0.0 || !force.is_finite() {
        return Err(Error::ZeroForce);
    }
    if !(a > 0.0) {
        return Err(Error::NonPositiveTipDistance(a));
    }
    if spec.arrangement != ChannelArrangement::RigidAboveMicrocrackBelow {
        return Err(Error::WrongArrangement(
            "channel_mixed needs rigid inclusions above and microcracks below",
        ));
    }
    let mut bracket = 0.0;
    for j in (1..=spec.n_ahead.max(spec.n_behind)).rev() {
        if j <= spec.n_ahead {
            bracket += mixed_column_term(column_t(spec.h, spec.w, j));
        }
        if j <= spec.n_behind {
            bracket += mixed_column_term(column_t(spec.h, spec.w, j));
        }
    }
    bracket -= 1.0;
    Ok(a * spec.s * spec.s * (2.0 * spec.alpha).cos() / (2.0 * spec.h * spec.h) * bracket)
}

/// The sum of the mixed-channel column terms over all j >= 1, in closed
/// form:
///
///   sum_{j>=1} S_j = 1/2 - (pi h / w)^2 / (2 sinh^2(pi h / w)).
pub fn mixed_series_closed_form(h: f64, w: f64) -> f64 {
    0.5 - mixed_series_tail_term(h, w)
}

/// The (pi h / w)^2 / (2 sinh^2(pi h / w)) term, evaluated without
/// overflowing sinh for large arguments.
pub fn mixed_series_tail_term(h: f64, w: f64) -> f64 {
    let q = PI * h / w;
    if q < 350.0 {
        let r = q / q.sinh();
        0.5 * r * r
    } else {
        // sinh overflows; 2 q^2 e^(-2q) underflows gracefully to zero
        2.0 * q * q * (-2.0 * q).exp()
    }
}

/// Far-load advance bracket of the mixed channel with infinitely many
/// columns ahead of the tip:
///
///   -1/2 - (pi h / w)^2 / (2 sinh^2(pi h / w)) + sum_{j=1}^{n_behind} S_j.
pub fn channel_mixed_infinite_bracket(n_behind: usize, h: f64, w: f64) -> Result<f64> {
    if !(h > 0.0) || !(w > 0.0) {
        return Err(Error::InvalidChannel("h and w must be positive"));
    }
    let mut behind = 0.0;
    for j in (1..=n_behind).rev() {
        behind += mixed_column_term(column_t(h, w, j));
    }
    Ok(-0.5 - mixed_series_tail_term(h, w) + behind)
}

/// Far-load advance of the mixed channel with infinitely many columns
/// ahead, delta = (a s^2 cos 2 alpha / (2 h^2)) * bracket.
pub fn channel_mixed_infinite(
    n_behind: usize,
    h: f64,
    w: f64,
    alpha: f64,
    s: f64,
    a: f64,
) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::NonPositiveHalfLength(s));
    }
    if !(a > 0.0) {
        return Err(Error::NonPositiveTipDistance(a));
    }
    let bracket = channel_mixed_infinite_bracket(n_behind, h, w)?;
    Ok(a * s * s * (2.0 * alpha).cos() / (2.0 * h * h) * bracket)
}
