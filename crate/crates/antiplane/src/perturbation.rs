//! Per-defect perturbation of the tip stress intensity factor.
//!
//! Each defect contributes
//!
//!   dK = -sqrt(2/pi) (mu+ mu- / (mu+ + mu-)) grad_u0(Y) . M c,
//!
//! with M its dipole matrix and c the tip weight vector
//!
//!   c = [-sin(3 phi / 2), cos(3 phi / 2)] / (2 d^(3/2))
//!
//! at tip-relative polar coordinates (d, phi) of the defect centre. The
//! perturbations superpose; defect-defect interaction is neglected, which
//! is consistent when every d is large against the defect half-lengths.
//!
//! A small tip advance `delta` perturbs the intensity factor by
//! (delta / 2) A0 on top of the defect sum.

use std::f64::consts::FRAC_2_PI;

use crate::error::{Error, Result};
use crate::field::{grad_u0, k0};
use crate::model::{Bimaterial, Configuration, Defect, DefectPolar, LoadCase, TipState};

/// Tip weight vector at the polar position of a defect centre. Its norm is
/// 1 / (2 d^(3/2)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightVector {
    pub c1: f64,
    pub c2: f64,
}

/// Weight vector [-sin(3 phi / 2), cos(3 phi / 2)] / (2 d^(3/2)).
pub fn weight_vector(polar: DefectPolar) -> Result<WeightVector> {
    if !(polar.d > 0.0) {
        return Err(Error::DefectAtTip);
    }
    let scale = 2.0 * polar.d.powf(1.5);
    let arg = 1.5 * polar.phi;
    Ok(WeightVector {
        c1: -arg.sin() / scale,
        c2: arg.cos() / scale,
    })
}

/// Intensity perturbation contributed by one defect at the current tip.
///
/// The value carries the physical defect size through the dipole matrix
/// (proportional to half_length^2), so it adds directly to K0.
pub fn delta_k_defect(
    defect: &Defect,
    tip: &TipState,
    material: &Bimaterial,
    load: &LoadCase,
) -> Result<f64> {
    let polar = defect.polar(tip)?;
    let c = weight_vector(polar)?;
    let m = defect.dipole();
    let grad = grad_u0(defect.centre, material, load, tip)?;
    let (mcx, mcy) = m.apply(c.c1, c.c2);
    Ok(-FRAC_2_PI.sqrt() * material.coupling() * grad.dot(mcx, mcy))
}

/// Intensity perturbation of a small tip advance: step * A0 / 2.
pub fn delta_k_advance(step: f64, a0: f64) -> f64 {
    0.5 * step * a0
}

/// Defect perturbations at one tip state, in input order.
#[derive(Debug, Clone, PartialEq)]
pub struct PerturbationResult {
    /// dK of each defect, in configuration order.
    pub per_defect: Vec<f64>,
    /// Sum of the entries, accumulated in input order.
    pub total: f64,
    /// total / K0; positive means amplification, negative shielding.
    pub relative: f64,
}

/// Evaluates every defect of the configuration at the given tip and sums
/// the perturbations in input order.
pub fn relative_perturbation(config: &Configuration, tip: &TipState) -> Result<PerturbationResult> {
    let k0 = k0(config.load.force, tip.a)?;
    let mut per_defect = Vec::with_capacity(config.defects.len());
    let mut total = 0.0;
    for (index, defect) in config.defects.iter().enumerate() {
        let dk = delta_k_defect(defect, tip, &config.material, &config.load)
            .map_err(|e| e.at_defect(index))?;
        per_defect.push(dk);
        total += dk;
    }
    Ok(PerturbationResult {
        per_defect,
        total,
        relative: total / k0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{DefectKind, Point, SolverSettings};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn weight_vector_axis_cases() {
        let w = weight_vector(DefectPolar { d: 1.0, phi: 0.0 }).unwrap();
        assert_relative_eq!(w.c1, 0.0, epsilon = 1e-18);
        assert_relative_eq!(w.c2, 0.5, max_relative = 1e-15);

        let w = weight_vector(DefectPolar { d: 1.0, phi: PI }).unwrap();
        assert_relative_eq!(w.c1, 0.5, max_relative = 1e-15);
        assert!(w.c2.abs() < 1e-16);

        let w = weight_vector(DefectPolar { d: 4.0, phi: PI / 2.0 }).unwrap();
        assert_relative_eq!(w.c1, -0.04419417382415922, max_relative = 1e-15);
        assert_relative_eq!(w.c2, -0.04419417382415922, max_relative = 1e-15);
    }

    #[test]
    fn weight_vector_norm_identity() {
        for (d, phi) in [(0.3, 0.1), (2.0, -2.9), (7.5, 1.3), (1.0, -0.4)] {
            let w = weight_vector(DefectPolar { d, phi }).unwrap();
            assert_relative_eq!(
                w.c1.hypot(w.c2),
                1.0 / (2.0 * d.powf(1.5)),
                max_relative = 1e-14
            );
        }
        assert!(weight_vector(DefectPolar { d: 0.0, phi: 0.0 }).is_err());
    }

    fn single_defect_config(defect: Defect, a: f64) -> (Configuration, TipState) {
        let load = LoadCase::new(1.0, -a).unwrap();
        let tip = TipState::new(0.0, &load).unwrap();
        (
            Configuration {
                material: Bimaterial::homogeneous(1.0).unwrap(),
                load,
                tip,
                defects: vec![defect],
                solver: SolverSettings::default(),
            },
            tip,
        )
    }

    #[test]
    fn far_load_microcrack_matches_closed_form() {
        // s = 0.1, d = 2, phi = pi/2, alpha = pi/2, identical materials:
        // the far-load relative perturbation is 3.125e-4.
        let defect = Defect::new(
            DefectKind::Microcrack,
            Point::new(0.0, 2.0),
            0.1,
            PI / 2.0,
        )
        .unwrap();
        let (config, tip) = single_defect_config(defect, 1e6);
        let result = relative_perturbation(&config, &tip).unwrap();
        assert_relative_eq!(result.relative, 3.125e-4, max_relative = 1e-3);
    }

    #[test]
    fn degenerate_orientation_suppresses_the_perturbation() {
        // alpha = phi/2 + pi/2 makes the second angular factor vanish in the
        // far-load limit.
        let phi: f64 = 0.8;
        let d = 2.0;
        let alpha = phi / 2.0 + PI / 2.0;
        let defect = Defect::new(
            DefectKind::Microcrack,
            Point::new(d * phi.cos(), d * phi.sin()),
            0.01,
            alpha,
        )
        .unwrap();
        let (config, tip) = single_defect_config(defect, 1e9);
        let result = relative_perturbation(&config, &tip).unwrap();
        // compare against the undegenerate scale s^2/d^2
        assert!(result.relative.abs() < 1e-6 * (0.01f64 / d).powi(2));
    }

    #[test]
    fn microcrack_directly_ahead_amplifies() {
        // y just clears the defect's vertical reach, so phi -> 0+
        for alpha in [0.0, 0.4, 1.0, 2.0] {
            let defect = Defect::new(
                DefectKind::Microcrack,
                Point::new(3.0, 0.06),
                0.05,
                alpha,
            )
            .unwrap();
            let (config, tip) = single_defect_config(defect, 1e8);
            let r = relative_perturbation(&config, &tip).unwrap().relative;
            assert!(r > 0.0, "alpha = {alpha}: relative = {r}");
        }
    }

    #[test]
    fn delta_k_advance_is_half_step_times_a0() {
        assert_eq!(delta_k_advance(0.0, -3.0), 0.0);
        assert_relative_eq!(delta_k_advance(2.0, -1.0), -1.0);
    }

    #[test]
    fn empty_configuration_has_zero_perturbation() {
        let load = LoadCase::new(1.0, 0.0).unwrap();
        let tip = TipState::new(1.0, &load).unwrap();
        let config = Configuration {
            material: Bimaterial::homogeneous(1.0).unwrap(),
            load,
            tip,
            defects: vec![],
            solver: SolverSettings::default(),
        };
        let r = relative_perturbation(&config, &tip).unwrap();
        assert_eq!(r.total, 0.0);
        assert_eq!(r.relative, 0.0);
        assert!(r.per_defect.is_empty());
    }

    #[test]
    fn duplicated_defect_scales_linearly() {
        let defect =
            Defect::new(DefectKind::RigidLineInclusion, Point::new(1.5, -0.9), 0.07, 1.1).unwrap();
        let (mut config, tip) = single_defect_config(defect, 2.0);
        let single = relative_perturbation(&config, &tip).unwrap().total;
        config.defects = vec![defect; 5];
        let five = relative_perturbation(&config, &tip).unwrap();
        assert_relative_eq!(five.total, 5.0 * single, max_relative = 1e-14);
        assert_eq!(five.per_defect.len(), 5);
        for dk in &five.per_defect {
            assert_relative_eq!(*dk, single, max_relative = 1e-15);
        }
    }

    #[test]
    fn errors_carry_the_defect_index() {
        let load = LoadCase::new(1.0, 0.0).unwrap();
        let tip = TipState::new(1.0, &load).unwrap();
        let good = Defect::new(DefectKind::Microcrack, Point::new(2.0, 1.0), 0.1, 0.0).unwrap();
        // defect exactly at the tip: polar conversion fails
        let bad = Defect {
            kind: DefectKind::Microcrack,
            centre: Point::new(tip.x, 0.0),
            half_length: 0.1,
            angle: 0.0,
        };
        let config = Configuration {
            material: Bimaterial::homogeneous(1.0).unwrap(),
            load,
            tip,
            defects: vec![good, bad],
            solver: SolverSettings::default(),
        };
        match relative_perturbation(&config, &tip) {
            Err(Error::AtDefect { index, .. }) => assert_eq!(index, 1),
            other => panic!("expected indexed error, got {other:?}"),
        }
    }
}
