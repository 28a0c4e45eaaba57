//! Run configuration: a JSON document describing material, load, tip,
//! explicit defects, and regular defect arrays, plus solver and diagram
//! settings.
//!
//! Angles accept either a plain number (radians) or a string with a `deg`
//! suffix, e.g. `"135 deg"`.

use std::fmt;

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use antiplane::model::{
    Bimaterial, Configuration, Defect, DefectKind, LoadCase, Point, SolverSettings, TipState,
};

/// An angle in radians, parsed from a number or a `"<value> deg"` string.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angle(pub f64);

impl Angle {
    pub fn radians(&self) -> f64 {
        self.0
    }
}

impl Default for Angle {
    fn default() -> Self {
        Angle(0.0)
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.0)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct AngleVisitor;
        impl<'de> de::Visitor<'de> for AngleVisitor {
            type Value = Angle;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a number in radians or a string like \"45 deg\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Angle, E> {
                Ok(Angle(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Angle, E> {
                Ok(Angle(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Angle, E> {
                Ok(Angle(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Angle, E> {
                let t = v.trim();
                let (num, degrees) = match t.strip_suffix("deg") {
                    Some(rest) => (rest.trim(), true),
                    None => (t, false),
                };
                let value: f64 = num
                    .parse()
                    .map_err(|_| E::custom(format!("cannot parse angle {v:?}")))?;
                Ok(Angle(if degrees {
                    value.to_radians()
                } else {
                    value
                }))
            }
        }
        deserializer.deserialize_any(AngleVisitor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KindCfg {
    Microcrack,
    RigidLineInclusion,
}

impl From<KindCfg> for DefectKind {
    fn from(k: KindCfg) -> DefectKind {
        match k {
            KindCfg::Microcrack => DefectKind::Microcrack,
            KindCfg::RigidLineInclusion => DefectKind::RigidLineInclusion,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SideCfg {
    Upper,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialCfg {
    pub mu_plus: f64,
    pub mu_minus: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoadCfg {
    pub force: f64,
    /// Global x-coordinate of the point-force pair.
    pub x: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TipCfg {
    /// Initial tip position.
    pub x: f64,
}

fn default_max_steps() -> usize {
    1_000_000
}

fn default_validity_ratio() -> f64 {
    2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverCfg {
    #[serde(default = "default_max_steps")]
    pub max_steps: usize,
    #[serde(default)]
    pub arrest_tol: f64,
    #[serde(default)]
    pub max_increment: Option<f64>,
    #[serde(default = "default_validity_ratio")]
    pub validity_ratio: f64,
}

impl Default for SolverCfg {
    fn default() -> Self {
        SolverCfg {
            max_steps: default_max_steps(),
            arrest_tol: 0.0,
            max_increment: None,
            validity_ratio: default_validity_ratio(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefectCfg {
    pub kind: KindCfg,
    pub x: f64,
    pub y: f64,
    pub half_length: f64,
    pub angle: Angle,
}

/// A regular defect array. The two channel arrangements emit one defect at
/// +standoff and one at -standoff per column; `row` emits a single row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "arrangement", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ArrayCfg {
    /// Microcracks in both rows, the lower row rotated a quarter turn.
    MicrocrackPerpendicular {
        count: usize,
        x_start: f64,
        spacing: f64,
        standoff: f64,
        half_length: f64,
        angle: Angle,
    },
    /// Rigid line inclusions above, microcracks below, equal inclination.
    RigidAboveMicrocrackBelow {
        count: usize,
        x_start: f64,
        spacing: f64,
        standoff: f64,
        half_length: f64,
        angle: Angle,
    },
    /// A single row of one defect kind on one side.
    Row {
        kind: KindCfg,
        side: SideCfg,
        count: usize,
        x_start: f64,
        spacing: f64,
        standoff: f64,
        half_length: f64,
        angle: Angle,
        #[serde(default)]
        angle_offset: Angle,
    },
}

fn default_alpha_samples() -> usize {
    181
}

fn default_neutral_tol() -> f64 {
    1e-12
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramCfg {
    /// Number of inclination samples strictly inside (0, pi).
    #[serde(default = "default_alpha_samples")]
    pub alpha_samples: usize,
    /// Tip-position step; defaults to spacing / 50 of the first array.
    #[serde(default)]
    pub x_step: Option<f64>,
    #[serde(default)]
    pub x_min: Option<f64>,
    #[serde(default)]
    pub x_max: Option<f64>,
    /// |relative| at or below this value classifies as neutral.
    #[serde(default = "default_neutral_tol")]
    pub neutral_tol: f64,
}

impl Default for DiagramCfg {
    fn default() -> Self {
        DiagramCfg {
            alpha_samples: default_alpha_samples(),
            x_step: None,
            x_min: None,
            x_max: None,
            neutral_tol: default_neutral_tol(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub material: MaterialCfg,
    pub load: LoadCfg,
    pub tip: TipCfg,
    #[serde(default)]
    pub solver: SolverCfg,
    #[serde(default)]
    pub defects: Vec<DefectCfg>,
    #[serde(default)]
    pub arrays: Vec<ArrayCfg>,
    #[serde(default)]
    pub diagram: DiagramCfg,
}

/// All problems found while turning a document into a configuration.
#[derive(Debug, Clone, Error)]
#[error("{}", messages.join("\n"))]
pub struct ConfigError {
    pub messages: Vec<String>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<RunConfig, ConfigError> {
        serde_json::from_str(text).map_err(|e| ConfigError {
            messages: vec![format!(
                "config parse error at line {} column {}: {e}",
                e.line(),
                e.column()
            )],
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Spacing of the first array, used as the length scale of diagram
    /// defaults.
    pub fn first_spacing(&self) -> Option<f64> {
        self.arrays.first().map(|a| match a {
            ArrayCfg::MicrocrackPerpendicular { spacing, .. }
            | ArrayCfg::RigidAboveMicrocrackBelow { spacing, .. }
            | ArrayCfg::Row { spacing, .. } => *spacing,
        })
    }
}

/// Expands explicit defects and array generators, in document order;
/// arrays are emitted column-major, upper row before lower row.
///
/// When `override_angle` is given, every defect is re-inclined to that
/// angle per its arrangement (perpendicular lower rows keep their quarter
/// turn, row offsets stay applied); the diagram scanner uses this.
pub fn expand_defects(
    run: &RunConfig,
    override_angle: Option<f64>,
) -> Result<Vec<Defect>, ConfigError> {
    let mut defects = Vec::new();
    let mut errors = Vec::new();

    for (i, d) in run.defects.iter().enumerate() {
        let angle = override_angle.unwrap_or_else(|| d.angle.radians());
        match Defect::new(d.kind.into(), Point::new(d.x, d.y), d.half_length, angle) {
            Ok(defect) => defects.push(defect),
            Err(e) => errors.push(format!("defect {i}: {e}")),
        }
    }

    for (k, array) in run.arrays.iter().enumerate() {
        let mut push = |kind: DefectKind, x: f64, y: f64, s: f64, angle: f64, column: usize| {
            match Defect::new(kind, Point::new(x, y), s, angle) {
                Ok(defect) => defects.push(defect),
                Err(e) => {
                    errors.push(format!("array {k} column {column} (x = {x}, y = {y}): {e}"))
                }
            }
        };
        match *array {
            ArrayCfg::MicrocrackPerpendicular {
                count,
                x_start,
                spacing,
                standoff,
                half_length,
                angle,
            } => {
                let alpha = override_angle.unwrap_or_else(|| angle.radians());
                for j in 0..count {
                    let x = x_start + j as f64 * spacing;
                    push(DefectKind::Microcrack, x, standoff, half_length, alpha, j);
                    push(
                        DefectKind::Microcrack,
                        x,
                        -standoff,
                        half_length,
                        alpha - std::f64::consts::FRAC_PI_2,
                        j,
                    );
                }
            }
            ArrayCfg::RigidAboveMicrocrackBelow {
                count,
                x_start,
                spacing,
                standoff,
                half_length,
                angle,
            } => {
                let alpha = override_angle.unwrap_or_else(|| angle.radians());
                for j in 0..count {
                    let x = x_start + j as f64 * spacing;
                    push(
                        DefectKind::RigidLineInclusion,
                        x,
                        standoff,
                        half_length,
                        alpha,
                        j,
                    );
                    push(DefectKind::Microcrack, x, -standoff, half_length, alpha, j);
                }
            }
            ArrayCfg::Row {
                kind,
                side,
                count,
                x_start,
                spacing,
                standoff,
                half_length,
                angle,
                angle_offset,
            } => {
                let base = override_angle.unwrap_or_else(|| angle.radians());
                let alpha = base + angle_offset.radians();
                let y = match side {
                    SideCfg::Upper => standoff,
                    SideCfg::Lower => -standoff,
                };
                for j in 0..count {
                    let x = x_start + j as f64 * spacing;
                    push(kind.into(), x, y, half_length, alpha, j);
                }
            }
        }
    }

    if errors.is_empty() {
        Ok(defects)
    } else {
        Err(ConfigError { messages: errors })
    }
}

/// Builds and validates the full configuration. Warnings (defects inside
/// the soft distance margin) are returned alongside, not treated as
/// errors.
pub fn build_configuration(run: &RunConfig) -> Result<(Configuration, Vec<String>), ConfigError> {
    let mut errors = Vec::new();

    let defects = match expand_defects(run, None) {
        Ok(d) => d,
        Err(e) => {
            errors.extend(e.messages);
            Vec::new()
        }
    };

    let material = Bimaterial::new(run.material.mu_plus, run.material.mu_minus)
        .map_err(|e| errors.push(format!("material: {e}")))
        .ok();
    let load = LoadCase::new(run.load.force, run.load.x)
        .map_err(|e| errors.push(format!("load: {e}")))
        .ok();
    let tip = load
        .as_ref()
        .map(|l| {
            TipState::new(run.tip.x, l)
                .map_err(|e| errors.push(format!("tip: {e}")))
                .ok()
        })
        .flatten();

    let (material, load, tip) = match (material, load, tip) {
        (Some(m), Some(l), Some(t)) => (m, l, t),
        _ => return Err(ConfigError { messages: errors }),
    };

    let config = Configuration {
        material,
        load,
        tip,
        defects,
        solver: SolverSettings {
            max_steps: run.solver.max_steps,
            arrest_tol: run.solver.arrest_tol,
            max_increment: run.solver.max_increment,
            validity_ratio: run.solver.validity_ratio,
        },
    };

    let report = config.validate();
    for v in &report.errors {
        errors.push(v.to_string());
    }
    if !errors.is_empty() {
        return Err(ConfigError { messages: errors });
    }
    let warnings = report.warnings.iter().map(|w| w.to_string()).collect();
    Ok((config, warnings))
}
