//! Domain types and configuration validation.
//!
//! Global frame: the interface is the x-axis, the crack occupies the part
//! of it left of the current tip, and the wedging point forces sit at a
//! fixed material point on the crack faces. The tip moves right as the
//! crack grows, so the load-tip distance `a` grows with it.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// A point of the bimaterial plane, in global coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}

/// Which half-plane a point or defect belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfPlane {
    Upper,
    Lower,
}

/// The two bonded elastic half-planes.
///
/// Only antiplane shear is considered, so each material is characterised by
/// its shear modulus alone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bimaterial {
    /// Shear modulus of the upper half-plane (y > 0).
    pub mu_plus: f64,
    /// Shear modulus of the lower half-plane (y < 0).
    pub mu_minus: f64,
}

impl Bimaterial {
    pub fn new(mu_plus: f64, mu_minus: f64) -> Result<Self> {
        let m = Bimaterial { mu_plus, mu_minus };
        m.check()?;
        Ok(m)
    }

    /// Two identical half-planes (weak interface in a homogeneous plane).
    pub fn homogeneous(mu: f64) -> Result<Self> {
        Bimaterial::new(mu, mu)
    }

    fn check(&self) -> Result<()> {
        if !(self.mu_plus > 0.0) || !(self.mu_minus > 0.0) {
            return Err(Error::NonPositiveModulus {
                mu_plus: self.mu_plus,
                mu_minus: self.mu_minus,
            });
        }
        Ok(())
    }

    /// Stiffness contrast eta = (mu_minus - mu_plus) / (mu_minus + mu_plus),
    /// in (-1, 1) for positive moduli.
    pub fn eta(&self) -> f64 {
        (self.mu_minus - self.mu_plus) / (self.mu_minus + self.mu_plus)
    }

    /// The bond coupling factor mu_plus mu_minus / (mu_plus + mu_minus).
    pub fn coupling(&self) -> f64 {
        self.mu_plus * self.mu_minus / (self.mu_plus + self.mu_minus)
    }

    /// Modulus of the given half-plane.
    pub fn modulus(&self, side: HalfPlane) -> f64 {
        match side {
            HalfPlane::Upper => self.mu_plus,
            HalfPlane::Lower => self.mu_minus,
        }
    }

    /// Modulus of the half-plane opposite to `side`.
    pub fn opposite_modulus(&self, side: HalfPlane) -> f64 {
        match side {
            HalfPlane::Upper => self.mu_minus,
            HalfPlane::Lower => self.mu_plus,
        }
    }
}

/// The two kinds of small line defect.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DefectKind {
    /// Traction-free slit.
    Microcrack,
    /// Rigid line segment bonded to the matrix and free to translate.
    RigidLineInclusion,
}

/// A small line defect away from the interface.
///
/// The defect is a segment of half-length `half_length` centred at
/// `centre`, inclined by `angle` to the x-axis. The segment geometry has
/// period pi in the inclination, so the stored angle is reduced to
/// [0, pi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Defect {
    pub kind: DefectKind,
    pub centre: Point,
    pub half_length: f64,
    pub angle: f64,
}

/// Reduces an inclination angle to [0, pi).
pub fn reduce_angle(alpha: f64) -> f64 {
    let a = alpha.rem_euclid(PI);
    // rem_euclid can return exactly pi after rounding near the boundary
    if a >= PI {
        0.0
    } else {
        a
    }
}

impl Defect {
    pub fn new(kind: DefectKind, centre: Point, half_length: f64, angle: f64) -> Result<Self> {
        let d = Defect {
            kind,
            centre,
            half_length,
            angle: reduce_angle(angle),
        };
        d.check()?;
        Ok(d)
    }

    fn check(&self) -> Result<()> {
        if !(self.half_length > 0.0) {
            return Err(Error::NonPositiveHalfLength(self.half_length));
        }
        if self.centre.y == 0.0 {
            return Err(Error::DefectOnInterface);
        }
        let reach = self.half_length * self.angle.sin().abs();
        if self.centre.y.abs() <= reach {
            return Err(Error::DefectCrossesInterface {
                y_abs: self.centre.y.abs(),
                reach,
            });
        }
        Ok(())
    }

    /// Half-plane containing the defect.
    pub fn side(&self) -> HalfPlane {
        if self.centre.y > 0.0 {
            HalfPlane::Upper
        } else {
            HalfPlane::Lower
        }
    }

    /// Tip-relative polar coordinates of the defect centre.
    pub fn polar(&self, tip: &TipState) -> Result<DefectPolar> {
        to_polar(self, tip)
    }
}

/// Tip-relative polar coordinates of a defect centre.
///
/// `phi` is measured from the bonded line ahead of the tip; defects in the
/// upper half-plane have phi in (0, pi), defects in the lower half-plane
/// phi in (-pi, 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DefectPolar {
    pub d: f64,
    pub phi: f64,
}

/// Polar coordinates of a defect centre relative to the current tip.
pub fn to_polar(defect: &Defect, tip: &TipState) -> Result<DefectPolar> {
    let dx = defect.centre.x - tip.x;
    let dy = defect.centre.y;
    let d = dx.hypot(dy);
    if d == 0.0 {
        return Err(Error::DefectAtTip);
    }
    Ok(DefectPolar {
        d,
        phi: dy.atan2(dx),
    })
}

/// The pair of symmetric point forces wedging the crack faces apart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoadCase {
    /// Force per unit thickness. Its sign only fixes the displacement
    /// orientation; all growth quantities are even in it.
    pub force: f64,
    /// Global x-coordinate of the application point on the faces.
    pub x: f64,
}

impl LoadCase {
    pub fn new(force: f64, x: f64) -> Result<Self> {
        if force == 0.0 || !force.is_finite() {
            return Err(Error::ZeroForce);
        }
        Ok(LoadCase { force, x })
    }
}

/// Current crack-tip position and its distance from the load point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TipState {
    /// Global tip coordinate on the interface.
    pub x: f64,
    /// Load-tip distance, x - load.x; positive while the load sits on the
    /// crack faces.
    pub a: f64,
}

impl TipState {
    pub fn new(x: f64, load: &LoadCase) -> Result<Self> {
        let a = x - load.x;
        if !(a > 0.0) {
            return Err(Error::NonPositiveTipDistance(a));
        }
        Ok(TipState { x, a })
    }

    /// Tip advanced by `dx`, with `a` recomputed from the fixed load point.
    pub fn advanced(&self, dx: f64, load: &LoadCase) -> TipState {
        let x = self.x + dx;
        TipState { x, a: x - load.x }
    }
}

/// Growth-loop settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings {
    /// Maximum number of applied increments before giving up.
    pub max_steps: usize,
    /// Arrest threshold on the computed advance. The strict quasi-static
    /// arrest condition is 0; a small positive value terminates the
    /// asymptotic approach to a neutral point in finitely many steps.
    pub arrest_tol: f64,
    /// Cap on a single increment. `None` derives standoff/10 from the
    /// defect closest to the interface, so a step cannot jump a column.
    pub max_increment: Option<f64>,
    /// Hard lower bound on tip-defect distance, in units of the defect
    /// half-length. Below it the dipole description of the defect breaks
    /// down.
    pub validity_ratio: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            max_steps: 1_000_000,
            arrest_tol: 0.0,
            max_increment: None,
            validity_ratio: 2.0,
        }
    }
}

/// Ratio of tip-defect distance to half-length below which validation only
/// warns: the dipole approximation degrades but still holds.
pub const WARN_DISTANCE_RATIO: f64 = 10.0;

/// A complete problem statement: materials, load, initial tip, defects,
/// and solver settings.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    pub material: Bimaterial,
    pub load: LoadCase,
    pub tip: TipState,
    pub defects: Vec<Defect>,
    pub solver: SolverSettings,
}

/// One violated rule, with the index of the offending defect when the rule
/// is per-defect.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub defect: Option<usize>,
    pub rule: &'static str,
    pub message: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.defect {
            Some(i) => write!(f, "defect {}: {}: {}", i, self.rule, self.message),
            None => write!(f, "{}: {}", self.rule, self.message),
        }
    }
}

/// Everything `validate` found: hard errors and soft warnings.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub errors: Vec<Violation>,
    pub warnings: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Checks every invariant of a configuration and returns all violations at
/// once rather than stopping at the first.
///
/// Warnings flag defects closer to the initial tip than
/// [`WARN_DISTANCE_RATIO`] half-lengths; errors flag everything the model
/// cannot represent at all.
pub fn validate(config: &Configuration) -> ValidationReport {
    let mut report = ValidationReport::default();
    fn err(report: &mut ValidationReport, defect: Option<usize>, rule: &'static str, message: String) {
        report.errors.push(Violation {
            defect,
            rule,
            message,
        });
    }

    if let Err(e) = config.material.check() {
        err(&mut report, None, "non-positive modulus", e.to_string());
    }
    if config.load.force == 0.0 || !config.load.force.is_finite() {
        err(&mut report, None, "zero force", "load force must be nonzero".into());
    }
    if !(config.tip.a > 0.0) {
        err(
            &mut report,
            None,
            "load ahead of tip",
            format!("load-tip distance a = {} must be positive", config.tip.a),
        );
    }
    let expected_a = config.tip.x - config.load.x;
    if (config.tip.a - expected_a).abs() > 1e-9 * expected_a.abs().max(1.0) {
        err(
            &mut report,
            None,
            "inconsistent tip state",
            format!("a = {} but x - load.x = {}", config.tip.a, expected_a),
        );
    }

    for (i, defect) in config.defects.iter().enumerate() {
        if let Err(e) = defect.check() {
            let rule = match e {
                Error::NonPositiveHalfLength(_) => "non-positive half-length",
                Error::DefectOnInterface => "defect on interface",
                Error::DefectCrossesInterface { .. } => "defect crosses interface",
                _ => "invalid defect",
            };
            err(&mut report, Some(i), rule, e.to_string());
            continue;
        }
        match to_polar(defect, &config.tip) {
            Err(e) => err(&mut report, Some(i), "defect at tip", e.to_string()),
            Ok(polar) => {
                let s = defect.half_length;
                if polar.d < config.solver.validity_ratio * s {
                    err(
                        &mut report,
                        Some(i),
                        "defect too close to tip",
                        format!(
                            "d = {} < {} half-lengths",
                            polar.d, config.solver.validity_ratio
                        ),
                    );
                } else if polar.d < WARN_DISTANCE_RATIO * s {
                    report.warnings.push(Violation {
                        defect: Some(i),
                        rule: "defect near tip",
                        message: format!(
                            "d = {} < {} half-lengths; dipole accuracy degrades",
                            polar.d, WARN_DISTANCE_RATIO
                        ),
                    });
                }
            }
        }
    }
    report
}

impl Configuration {
    /// Validates all invariants; see [`validate`].
    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    /// Cap on a single growth increment: the configured value, or a tenth
    /// of the smallest defect standoff from the interface.
    pub fn increment_cap(&self) -> f64 {
        if let Some(cap) = self.solver.max_increment {
            return cap;
        }
        self.defects
            .iter()
            .map(|d| d.centre.y.abs())
            .fold(f64::INFINITY, f64::min)
            / 10.0
    }
}
