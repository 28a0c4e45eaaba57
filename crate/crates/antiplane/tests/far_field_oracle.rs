//! Far-load equivalence: the full-field perturbation against the
//! closed-form single-defect and channel formulas.
//!
//! The closed forms are derived independently of the complex-potential
//! route, so agreement in the a >> d regime pins the whole pipeline:
//! gradient, weight vector, dipole contraction, and prefactors.

use antiplane::asymptotics::{
    channel_microcracks, channel_mixed, far_relative_defect, ChannelArrangement, ChannelSpec,
};
use antiplane::field::k0;
use antiplane::model::{
    Bimaterial, Configuration, Defect, DefectKind, LoadCase, Point, SolverSettings, TipState,
};
use antiplane::perturbation::delta_k_defect;
use antiplane::propagation::step_advance;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

struct Sample {
    defect: Defect,
    material: Bimaterial,
    d: f64,
}

/// 200 random single-defect cases away from the angular zeros of the
/// closed forms, where a relative comparison is meaningful.
fn samples() -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA57);
    let mut out = Vec::new();
    while out.len() < 200 {
        let d = rng.gen_range(0.5..5.0);
        let phi = rng.gen_range(-PI..PI);
        if phi.sin().abs() < 0.05 {
            continue;
        }
        let alpha = rng.gen_range(0.0..PI);
        let kind = if out.len() % 2 == 0 {
            DefectKind::Microcrack
        } else {
            DefectKind::RigidLineInclusion
        };
        let angular = match kind {
            DefectKind::Microcrack => (1.5 * phi - alpha).cos() * (0.5 * phi - alpha).cos(),
            DefectKind::RigidLineInclusion => (1.5 * phi - alpha).sin() * (0.5 * phi - alpha).sin(),
        };
        if angular.abs() < 0.05 {
            continue;
        }
        let material =
            Bimaterial::new(rng.gen_range(0.5..5.0), rng.gen_range(0.5..5.0)).unwrap();
        let defect = Defect::new(
            kind,
            Point::new(d * phi.cos(), d * phi.sin()),
            0.02 * d,
            alpha,
        )
        .unwrap();
        out.push(Sample {
            defect,
            material,
            d,
        });
    }
    out
}

fn relative_error(sample: &Sample, a_over_d: f64) -> f64 {
    let a = a_over_d * sample.d;
    let load = LoadCase::new(1.0, -a).unwrap();
    let tip = TipState::new(0.0, &load).unwrap();
    let full = delta_k_defect(&sample.defect, &tip, &sample.material, &load).unwrap()
        / k0(load.force, a).unwrap();
    let far = far_relative_defect(&sample.defect, &tip, &sample.material).unwrap();
    ((full - far) / far).abs()
}

#[test]
fn full_field_matches_closed_forms_at_far_load() {
    for sample in samples() {
        let err = relative_error(&sample, 1e6);
        assert!(
            err <= 1e-3,
            "defect {:?}: relative error {err}",
            sample.defect
        );
    }
}

#[test]
fn far_load_error_decays_linearly_in_distance() {
    let samples = samples();
    let worst = |a_over_d: f64| {
        samples
            .iter()
            .map(|s| relative_error(s, a_over_d))
            .fold(0.0, f64::max)
    };
    let coarse = worst(1e3);
    let fine = worst(1e4);
    assert!(
        coarse / fine >= 8.0,
        "error decay {coarse} -> {fine} is slower than one decade"
    );
}

/// Two-row channel of the standard geometry, columns at integer multiples
/// of w from the tip-aligned column 0.
fn channel_defects(
    arrangement: ChannelArrangement,
    columns: usize,
    first_column_x: f64,
    alpha: f64,
) -> Vec<Defect> {
    let (h, w, s) = (1.2, 1.0, 0.1);
    let mut defects = Vec::new();
    for k in 0..columns {
        let x = first_column_x + k as f64 * w;
        match arrangement {
            ChannelArrangement::MicrocrackPerpendicularRows => {
                defects
                    .push(Defect::new(DefectKind::Microcrack, Point::new(x, h), s, alpha).unwrap());
                defects.push(
                    Defect::new(DefectKind::Microcrack, Point::new(x, -h), s, alpha - PI / 2.0)
                        .unwrap(),
                );
            }
            ChannelArrangement::RigidAboveMicrocrackBelow => {
                defects.push(
                    Defect::new(DefectKind::RigidLineInclusion, Point::new(x, h), s, alpha)
                        .unwrap(),
                );
                defects
                    .push(Defect::new(DefectKind::Microcrack, Point::new(x, -h), s, alpha).unwrap());
            }
        }
    }
    defects
}

fn full_field_advance(arrangement: ChannelArrangement, alpha: f64, a: f64) -> f64 {
    let load = LoadCase::new(1.0, -a).unwrap();
    let tip = TipState::new(0.0, &load).unwrap();
    let config = Configuration {
        material: Bimaterial::homogeneous(1.0).unwrap(),
        load,
        tip,
        defects: channel_defects(arrangement, 9, 0.0, alpha),
        solver: SolverSettings::default(),
    };
    step_advance(&config, &tip).unwrap()
}

#[test]
fn microcrack_channel_formula_matches_full_field() {
    for alpha in [PI / 4.0, PI / 2.0, 3.0 * PI / 4.0] {
        let spec = ChannelSpec {
            n_ahead: 8,
            n_behind: 0,
            h: 1.2,
            w: 1.0,
            s: 0.1,
            alpha,
            arrangement: ChannelArrangement::MicrocrackPerpendicularRows,
        };
        let material = Bimaterial::homogeneous(1.0).unwrap();
        let a = 1e6;
        let asym = channel_microcracks(&spec, a, 1.0, &material).unwrap();
        let full = full_field_advance(ChannelArrangement::MicrocrackPerpendicularRows, alpha, a);
        assert!(
            ((full - asym) / asym).abs() <= 1e-2,
            "alpha = {alpha}: full = {full}, asym = {asym}"
        );
    }
}

#[test]
fn mixed_channel_formula_matches_full_field() {
    for alpha in [PI / 2.0, 1.0, 2.0] {
        let spec = ChannelSpec {
            n_ahead: 8,
            n_behind: 0,
            h: 1.2,
            w: 1.0,
            s: 0.1,
            alpha,
            arrangement: ChannelArrangement::RigidAboveMicrocrackBelow,
        };
        let material = Bimaterial::homogeneous(1.0).unwrap();
        let a = 1e6;
        let asym = channel_mixed(&spec, a, 1.0, &material).unwrap();
        let full = full_field_advance(ChannelArrangement::RigidAboveMicrocrackBelow, alpha, a);
        assert!(
            ((full - asym) / asym).abs() <= 1e-2,
            "alpha = {alpha}: full = {full}, asym = {asym}"
        );
    }
}

#[test]
fn channel_convergence_improves_one_decade_per_decade() {
    // error of the asymptotic channel value against the full field decays
    // like d_max / a
    let alpha = PI / 2.0;
    let spec = ChannelSpec {
        n_ahead: 8,
        n_behind: 0,
        h: 1.2,
        w: 1.0,
        s: 0.1,
        alpha,
        arrangement: ChannelArrangement::MicrocrackPerpendicularRows,
    };
    let material = Bimaterial::homogeneous(1.0).unwrap();
    let d_max = (8.0f64 * 8.0 + 1.2 * 1.2).sqrt();
    let err_at = |a: f64| {
        let asym = channel_microcracks(&spec, a, 1.0, &material).unwrap();
        let full = full_field_advance(ChannelArrangement::MicrocrackPerpendicularRows, alpha, a);
        ((full - asym) / asym).abs()
    };
    let coarse = err_at(1e3 * d_max);
    let fine = err_at(1e4 * d_max);
    assert!(
        coarse / fine >= 8.0,
        "channel error decay {coarse} -> {fine}"
    );
}
