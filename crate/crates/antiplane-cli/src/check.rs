//! Built-in identity suite behind `antiplane check`: quick versions of the
//! cross-checks that pin the numerics, runnable on any installed binary.

use std::f64::consts::PI;

use antiplane::asymptotics::{
    far_relative_defect, mixed_column_term, mixed_series_closed_form,
};
use antiplane::dipole::dipole_matrix;
use antiplane::field::{a0, displacement, grad_u0, k0};
use antiplane::model::{
    Bimaterial, Configuration, Defect, DefectKind, LoadCase, Point, SolverSettings, TipState,
};
use antiplane::perturbation::{delta_k_advance, delta_k_defect, relative_perturbation, weight_vector};
use antiplane::propagation::step_advance;

pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, residual: f64, bound: f64) -> CheckResult {
    CheckResult {
        name,
        passed: residual <= bound,
        detail: format!("max residual {residual:.3e} (bound {bound:.1e})"),
    }
}

/// Deterministic low-discrepancy sequence in [0, 1); good enough to spread
/// check samples without pulling in an RNG.
struct Halton {
    base: u64,
    i: u64,
}

impl Halton {
    fn new(base: u64) -> Self {
        Halton { base, i: 0 }
    }

    fn next(&mut self) -> f64 {
        self.i += 1;
        let mut n = self.i;
        let mut f = 1.0;
        let mut r = 0.0;
        while n > 0 {
            f /= self.base as f64;
            r += f * (n % self.base) as f64;
            n /= self.base;
        }
        r
    }
}

fn dipole_identities() -> CheckResult {
    let mut worst = 0.0f64;
    for i in 0..12 {
        let alpha = i as f64 * PI / 12.0;
        let s = 0.4;
        let scale = PI * s * s;
        let m = dipole_matrix(DefectKind::Microcrack, s, alpha).unwrap();
        let r = dipole_matrix(DefectKind::RigidLineInclusion, s, alpha).unwrap();
        // trace, determinant, duality against the quarter-turned microcrack
        worst = worst.max((m.trace() + scale).abs() / scale);
        worst = worst.max((r.trace() - scale).abs() / scale);
        worst = worst.max(m.det().abs() / (scale * scale));
        let q = dipole_matrix(DefectKind::Microcrack, s, alpha + PI / 2.0).unwrap();
        worst = worst.max((r.m11 + q.m11).abs() / scale);
        worst = worst.max((r.m12 + q.m12).abs() / scale);
        worst = worst.max((r.m22 + q.m22).abs() / scale);
    }
    check("dipole identities", worst, 1e-12)
}

fn weight_norm() -> CheckResult {
    let mut worst = 0.0f64;
    let mut h = Halton::new(2);
    for _ in 0..50 {
        let d = 0.2 + 5.0 * h.next();
        let phi = (2.0 * h.next() - 1.0) * PI;
        let w = weight_vector(antiplane::model::DefectPolar { d, phi }).unwrap();
        let expect = 1.0 / (2.0 * d.powf(1.5));
        worst = worst.max((w.c1.hypot(w.c2) - expect).abs() / expect);
    }
    check("weight vector norm", worst, 1e-12)
}

fn sample_defect(h2: &mut Halton, h3: &mut Halton, h5: &mut Halton, kind: DefectKind) -> (Defect, f64) {
    loop {
        let d = 0.5 + 4.5 * h2.next();
        let phi = (2.0 * h3.next() - 1.0) * PI;
        if phi.sin().abs() < 0.1 {
            continue;
        }
        let alpha = h5.next() * PI;
        let angular = match kind {
            DefectKind::Microcrack => (1.5 * phi - alpha).cos() * (0.5 * phi - alpha).cos(),
            DefectKind::RigidLineInclusion => (1.5 * phi - alpha).sin() * (0.5 * phi - alpha).sin(),
        };
        if angular.abs() < 0.1 {
            continue;
        }
        let defect = Defect::new(
            kind,
            Point::new(d * phi.cos(), d * phi.sin()),
            0.02 * d,
            alpha,
        )
        .unwrap();
        return (defect, d);
    }
}

fn far_field_agreement() -> CheckResult {
    let material = Bimaterial::new(1.7, 0.6).unwrap();
    let mut worst = 0.0f64;
    let (mut h2, mut h3, mut h5) = (Halton::new(2), Halton::new(3), Halton::new(5));
    for i in 0..20 {
        let kind = if i % 2 == 0 {
            DefectKind::Microcrack
        } else {
            DefectKind::RigidLineInclusion
        };
        let (defect, d) = sample_defect(&mut h2, &mut h3, &mut h5, kind);
        let a = 1e6 * d;
        let load = LoadCase::new(1.0, -a).unwrap();
        let tip = TipState::new(0.0, &load).unwrap();
        let full =
            delta_k_defect(&defect, &tip, &material, &load).unwrap() / k0(1.0, a).unwrap();
        let far = far_relative_defect(&defect, &tip, &material).unwrap();
        worst = worst.max(((full - far) / far).abs());
    }
    check("far-load agreement", worst, 1e-3)
}

fn gradient_finite_differences() -> CheckResult {
    let material = Bimaterial::new(2.3, 0.7).unwrap();
    let load = LoadCase::new(1.4, 0.0).unwrap();
    let tip = TipState::new(1.0, &load).unwrap();
    let mut worst = 0.0f64;
    let (mut h2, mut h3) = (Halton::new(2), Halton::new(3));
    let mut n = 0;
    while n < 10 {
        let r = 0.1 + 2.0 * h2.next();
        let theta = (2.0 * h3.next() - 1.0) * (PI - 0.1);
        if theta.sin().abs() < 0.1 {
            continue;
        }
        let point = Point::new(tip.x + r * theta.cos(), r * theta.sin());
        let to_load = (point.x - load.x).hypot(point.y);
        if to_load < 0.1 {
            continue;
        }
        let step = 1e-6 * r.min(to_load);
        let u = |p: Point| displacement(p, &material, &load, &tip).unwrap();
        let fd_x = (u(Point::new(point.x + step, point.y)) - u(Point::new(point.x - step, point.y)))
            / (2.0 * step);
        let fd_y = (u(Point::new(point.x, point.y + step)) - u(Point::new(point.x, point.y - step)))
            / (2.0 * step);
        let g = grad_u0(point, &material, &load, &tip).unwrap();
        let scale = g.norm();
        worst = worst.max((fd_x - g.gx).abs() / scale);
        worst = worst.max((fd_y - g.gy).abs() / scale);
        n += 1;
    }
    check("gradient finite differences", worst, 1e-7)
}

fn series_identity() -> CheckResult {
    let mut worst = 0.0f64;
    for c in [0.3, 1.2, 3.0] {
        let big = 100_000usize;
        let mut partial = 0.0;
        for j in (1..=big).rev() {
            let t = (c / j as f64) * (c / j as f64);
            partial += mixed_column_term(t);
        }
        let jf = big as f64;
        let tail = c * c * (1.0 / jf - 1.0 / (2.0 * jf * jf));
        let closed = mixed_series_closed_form(c, 1.0);
        worst = worst.max(((partial + tail) - closed).abs() / closed.abs());
    }
    check("channel series identity", worst, 1e-9)
}

fn sample_config() -> Configuration {
    let load = LoadCase::new(1.0, -1.5).unwrap();
    let tip = TipState::new(0.0, &load).unwrap();
    let defects = vec![
        Defect::new(DefectKind::Microcrack, Point::new(1.0, 1.2), 0.1, 2.0).unwrap(),
        Defect::new(DefectKind::RigidLineInclusion, Point::new(-0.5, 0.8), 0.1, 0.4).unwrap(),
        Defect::new(DefectKind::Microcrack, Point::new(2.0, -1.0), 0.1, 1.1).unwrap(),
        Defect::new(DefectKind::RigidLineInclusion, Point::new(0.3, -2.0), 0.1, 2.8).unwrap(),
    ];
    Configuration {
        material: Bimaterial::new(1.8, 0.4).unwrap(),
        load,
        tip,
        defects,
        solver: SolverSettings::default(),
    }
}

fn invariances() -> CheckResult {
    let config = sample_config();
    let mut worst = 0.0f64;

    // mirror-swap
    let mirrored = Configuration {
        material: Bimaterial::new(config.material.mu_minus, config.material.mu_plus).unwrap(),
        defects: config
            .defects
            .iter()
            .map(|d| {
                Defect::new(
                    d.kind,
                    Point::new(d.centre.x, -d.centre.y),
                    d.half_length,
                    -d.angle,
                )
                .unwrap()
            })
            .collect(),
        ..config.clone()
    };
    for (d, m) in config.defects.iter().zip(&mirrored.defects) {
        let dk = delta_k_defect(d, &config.tip, &config.material, &config.load).unwrap();
        let mk = delta_k_defect(m, &mirrored.tip, &mirrored.material, &mirrored.load).unwrap();
        worst = worst.max((dk - mk).abs() / dk.abs());
    }

    // load-sign and stiffness-scale invariance of the relative perturbation
    let base = relative_perturbation(&config, &config.tip).unwrap();
    let mut flipped = config.clone();
    flipped.load.force = -config.load.force;
    let f = relative_perturbation(&flipped, &flipped.tip).unwrap();
    worst = worst.max((base.relative - f.relative).abs() / base.relative.abs());

    let scaled = Configuration {
        material: Bimaterial::new(3.0 * config.material.mu_plus, 3.0 * config.material.mu_minus)
            .unwrap(),
        ..config.clone()
    };
    let s = relative_perturbation(&scaled, &scaled.tip).unwrap();
    worst = worst.max((base.relative - s.relative).abs() / base.relative.abs());

    check("exact invariances", worst, 1e-12)
}

fn advance_stationarity() -> CheckResult {
    let config = sample_config();
    let pert = relative_perturbation(&config, &config.tip).unwrap();
    let delta = step_advance(&config, &config.tip).unwrap();
    let a0 = a0(config.load.force, config.tip.a).unwrap();
    let residual = (delta_k_advance(delta, a0) + pert.total).abs() / pert.total.abs();
    check("advance stationarity", residual, 1e-12)
}

/// Runs the whole identity suite.
pub fn run_checks() -> Vec<CheckResult> {
    vec![
        dipole_identities(),
        weight_norm(),
        far_field_agreement(),
        gradient_finite_differences(),
        series_identity(),
        invariances(),
        advance_stationarity(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_builtin_suite_is_green() {
        for result in run_checks() {
            assert!(result.passed, "{}: {}", result.name, result.detail);
        }
    }
}
