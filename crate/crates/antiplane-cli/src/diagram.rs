//! Shielding-amplification diagram scanner.
//!
//! For every (tip position, inclination) cell the defect set is rebuilt at
//! that inclination, the relative perturbation evaluated, and the sign
//! classified. Cells are independent, so rows are scanned on a work pool;
//! results land in index-addressed storage and output is identical for any
//! thread count.

use rayon::prelude::*;
use std::f64::consts::PI;

use antiplane::model::{Configuration, TipState};
use antiplane::perturbation::relative_perturbation;

use crate::config::{build_configuration, expand_defects, ConfigError, RunConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellClass {
    Amplification,
    Shielding,
    Neutral,
    /// Evaluation failed (defect overlapping the tip, tip on a defect, or
    /// an inclination the geometry cannot realise).
    Invalid,
}

impl CellClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            CellClass::Amplification => "amplification",
            CellClass::Shielding => "shielding",
            CellClass::Neutral => "neutral",
            CellClass::Invalid => "error",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    /// Relative perturbation; NaN for invalid cells.
    pub relative: f64,
    pub class: CellClass,
}

/// Classification grid over tip position x (columns) and inclination alpha
/// (rows).
#[derive(Debug, Clone, PartialEq)]
pub struct DiagramGrid {
    pub x_values: Vec<f64>,
    pub alpha_values: Vec<f64>,
    /// Flat row-major storage: `cells[xi * alpha_values.len() + ai]`.
    pub cells: Vec<Cell>,
}

impl DiagramGrid {
    pub fn cell(&self, xi: usize, ai: usize) -> &Cell {
        &self.cells[xi * self.alpha_values.len() + ai]
    }
}

fn classify(relative: f64, neutral_tol: f64) -> CellClass {
    if !relative.is_finite() {
        CellClass::Invalid
    } else if relative > neutral_tol {
        CellClass::Amplification
    } else if relative < -neutral_tol {
        CellClass::Shielding
    } else {
        CellClass::Neutral
    }
}

fn evaluate_cell(row: &Configuration, x: f64, neutral_tol: f64) -> Cell {
    let invalid = Cell {
        relative: f64::NAN,
        class: CellClass::Invalid,
    };
    let a = x - row.load.x;
    if !(a > 0.0) {
        return invalid;
    }
    let tip = TipState { x, a };
    for defect in &row.defects {
        match defect.polar(&tip) {
            Ok(polar) => {
                if polar.d <= row.solver.validity_ratio * defect.half_length {
                    return invalid;
                }
            }
            Err(_) => return invalid,
        }
    }
    match relative_perturbation(row, &tip) {
        Ok(result) => Cell {
            relative: result.relative,
            class: classify(result.relative, neutral_tol),
        },
        Err(_) => invalid,
    }
}

/// Scans the shielding-amplification diagram of a run configuration.
///
/// `threads` sizes the local work pool (`None` uses the rayon default).
pub fn diagram(run: &RunConfig, threads: Option<usize>) -> Result<DiagramGrid, ConfigError> {
    let (base, _warnings) = build_configuration(run)?;

    let n_alpha = run.diagram.alpha_samples;
    if n_alpha == 0 {
        return Err(ConfigError {
            messages: vec!["diagram: alpha_samples must be positive".into()],
        });
    }
    let alpha_values: Vec<f64> = (1..=n_alpha)
        .map(|k| k as f64 * PI / (n_alpha + 1) as f64)
        .collect();

    let x_min = run.diagram.x_min.unwrap_or(base.tip.x);
    let x_max = run.diagram.x_max.unwrap_or_else(|| {
        base.defects
            .iter()
            .map(|d| d.centre.x)
            .fold(x_min, f64::max)
    });
    let x_step = match run.diagram.x_step.or_else(|| run.first_spacing().map(|w| w / 50.0)) {
        Some(step) if step > 0.0 => step,
        Some(_) => {
            return Err(ConfigError {
                messages: vec!["diagram: x_step must be positive".into()],
            })
        }
        None => {
            return Err(ConfigError {
                messages: vec![
                    "diagram: x_step is required when the configuration has no arrays".into(),
                ],
            })
        }
    };
    if x_max < x_min {
        return Err(ConfigError {
            messages: vec!["diagram: x_max is below x_min".into()],
        });
    }
    let n_x = ((x_max - x_min) / x_step + 0.5).floor() as usize + 1;
    let x_values: Vec<f64> = (0..n_x).map(|i| x_min + i as f64 * x_step).collect();

    // one configuration per inclination row, reused across all x
    let mut per_alpha: Vec<Option<Configuration>> = Vec::with_capacity(n_alpha);
    for &alpha in &alpha_values {
        per_alpha.push(expand_defects(run, Some(alpha)).ok().map(|defects| {
            Configuration {
                defects,
                ..base.clone()
            }
        }));
    }

    let neutral_tol = run.diagram.neutral_tol;
    let scan = |cells: &mut Vec<Cell>| {
        let todo: Vec<Cell> = (0..n_x * n_alpha)
            .into_par_iter()
            .map(|idx| {
                let xi = idx / n_alpha;
                let ai = idx % n_alpha;
                match &per_alpha[ai] {
                    Some(row) => evaluate_cell(row, x_values[xi], neutral_tol),
                    None => Cell {
                        relative: f64::NAN,
                        class: CellClass::Invalid,
                    },
                }
            })
            .collect();
        *cells = todo;
    };

    let mut cells = Vec::new();
    match threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| ConfigError {
                    messages: vec![format!("thread pool: {e}")],
                })?;
            pool.install(|| scan(&mut cells));
        }
        None => scan(&mut cells),
    }

    Ok(DiagramGrid {
        x_values,
        alpha_values,
        cells,
    })
}
