//! Quasi-static growth loop.
//!
//! Growth at constant critical intensity requires the total first-order
//! perturbation to vanish, which fixes the incremental advance at each tip
//! position:
//!
//!   delta = -2 (sum_j dK_j) / A0.
//!
//! A0 is negative for positive K0, so the crack advances exactly while the
//! defects amplify. The loop evaluates delta, stops at the first
//! delta <= arrest_tol, otherwise caps the increment, moves the tip, and
//! repeats. With arrest_tol = 0 an asymptotic approach to a neutral point
//! never satisfies the strict arrest condition and ends as
//! `MaxStepsReached`; a small positive tolerance terminates it in finitely
//! many steps.

use crate::error::{Error, Result};
use crate::field::a0;
use crate::model::{Configuration, TipState};
use crate::perturbation::relative_perturbation;

/// One applied growth increment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationStep {
    /// Step counter, starting at 0.
    pub index: usize,
    /// Tip position the increment was evaluated at.
    pub x_tip: f64,
    /// Load-tip distance at evaluation.
    pub a: f64,
    /// Relative perturbation sum(dK)/K0 at evaluation.
    pub relative: f64,
    /// Advance actually applied (after capping).
    pub increment: f64,
    /// Whether the raw advance was clipped to the increment cap.
    pub capped: bool,
}

/// Why the loop stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// The computed advance fell to arrest_tol or below after at least one
    /// applied step.
    Arrested,
    /// The advance was already at or below arrest_tol at the initial tip.
    ImmediateArrest,
    /// max_steps increments were applied without arrest.
    MaxStepsReached,
}

/// The final evaluation that triggered arrest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrestInfo {
    pub x_tip: f64,
    pub a: f64,
    pub relative: f64,
    /// Computed (not applied) advance, <= arrest_tol.
    pub increment: f64,
}

/// Full record of a growth run.
#[derive(Debug, Clone, PartialEq)]
pub struct PropagationTrace {
    pub steps: Vec<PropagationStep>,
    pub outcome: Outcome,
    /// Sum of applied increments; equals the total tip displacement.
    pub total_elongation: f64,
    /// Present when the run arrested.
    pub arrest: Option<ArrestInfo>,
}

impl PropagationTrace {
    /// Tip position after the last applied step.
    pub fn final_x(&self, config: &Configuration) -> f64 {
        config.tip.x + self.total_elongation
    }
}

/// Incremental advance at one tip state.
pub fn step_advance(config: &Configuration, tip: &TipState) -> Result<f64> {
    let pert = relative_perturbation(config, tip)?;
    advance_from_total(pert.total, config.load.force, tip.a)
}

fn advance_from_total(total_dk: f64, force: f64, a: f64) -> Result<f64> {
    Ok(-2.0 * total_dk / a0(force, a)?)
}

/// Runs the growth loop from the configuration's initial tip.
///
/// The trace is bitwise deterministic: defects are summed in input order
/// and the loop is sequential.
pub fn propagate(config: &Configuration) -> Result<PropagationTrace> {
    let cap = config.increment_cap();
    let tol = config.solver.arrest_tol;
    let overlap_limit = config.solver.validity_ratio;
    let x0 = config.tip.x;

    let mut steps: Vec<PropagationStep> = Vec::new();
    let mut elongation = 0.0_f64;

    loop {
        // Track the tip through the accumulated elongation so the small
        // increments are summed among themselves, not against a large
        // coordinate.
        let tip = TipState {
            x: x0 + elongation,
            a: x0 + elongation - config.load.x,
        };

        for (index, defect) in config.defects.iter().enumerate() {
            let polar = defect.polar(&tip)?;
            if polar.d <= overlap_limit * defect.half_length {
                return Err(Error::OverlapDuringPropagation {
                    index,
                    step: steps.len(),
                    d: polar.d,
                    limit: overlap_limit * defect.half_length,
                });
            }
        }

        let pert = relative_perturbation(config, &tip)?;
        let delta = advance_from_total(pert.total, config.load.force, tip.a)?;

        if delta <= tol {
            let outcome = if steps.is_empty() {
                Outcome::ImmediateArrest
            } else {
                Outcome::Arrested
            };
            return Ok(PropagationTrace {
                steps,
                outcome,
                total_elongation: elongation,
                arrest: Some(ArrestInfo {
                    x_tip: tip.x,
                    a: tip.a,
                    relative: pert.relative,
                    increment: delta,
                }),
            });
        }

        if steps.len() >= config.solver.max_steps {
            return Ok(PropagationTrace {
                steps,
                outcome: Outcome::MaxStepsReached,
                total_elongation: elongation,
                arrest: None,
            });
        }

        let capped = delta > cap;
        let applied = if capped { cap } else { delta };
        steps.push(PropagationStep {
            index: steps.len(),
            x_tip: tip.x,
            a: tip.a,
            relative: pert.relative,
            increment: applied,
            capped,
        });
        elongation += applied;
    }
}

/// Advance at the initial tip for each load distance in `a_values`, with
/// the defect geometry held fixed relative to the tip and the load moved.
///
/// In the far-load regime the advance grows linearly in the load distance;
/// this probe measures that scaling directly.
pub fn speed_scaling_probe(config: &Configuration, a_values: &[f64]) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(a_values.len());
    for &a in a_values {
        if !(a > 0.0) {
            return Err(Error::NonPositiveTipDistance(a));
        }
        let mut probe = config.clone();
        probe.load.x = config.tip.x - a;
        probe.tip = TipState {
            x: config.tip.x,
            a,
        };
        let tip = probe.tip;
        out.push(step_advance(&probe, &tip)?);
    }
    Ok(out)
}
