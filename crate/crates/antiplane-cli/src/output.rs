//! CSV emission. Floating values are printed with 17 significant digits so
//! outputs are reproducible bit-for-bit.

use std::io::{self, Write};

use antiplane::field::k0;
use antiplane::model::{Configuration, DefectKind, TipState};
use antiplane::perturbation::PerturbationResult;
use antiplane::propagation::{Outcome, PropagationTrace};

use crate::diagram::DiagramGrid;

/// 17 significant digits, enough to reconstruct the exact f64.
pub fn fmt_g17(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v:.16e}")
    }
}

fn kind_str(kind: DefectKind) -> &'static str {
    match kind {
        DefectKind::Microcrack => "microcrack",
        DefectKind::RigidLineInclusion => "rigid-line-inclusion",
    }
}

fn outcome_str(outcome: Outcome) -> &'static str {
    match outcome {
        Outcome::Arrested => "Arrested",
        Outcome::ImmediateArrest => "ImmediateArrest",
        Outcome::MaxStepsReached => "MaxStepsReached",
    }
}

/// Trace table: one row per applied increment, then summary comment lines,
/// the last of which is the outcome.
pub fn write_trace(out: &mut dyn Write, trace: &PropagationTrace) -> io::Result<()> {
    writeln!(out, "step,x_tip,a,relative,increment,cumulative")?;
    let mut cumulative = 0.0;
    for step in &trace.steps {
        cumulative += step.increment;
        writeln!(
            out,
            "{},{},{},{},{},{}",
            step.index,
            fmt_g17(step.x_tip),
            fmt_g17(step.a),
            fmt_g17(step.relative),
            fmt_g17(step.increment),
            fmt_g17(cumulative)
        )?;
    }
    if let Some(arrest) = &trace.arrest {
        writeln!(out, "# final_x={}", fmt_g17(arrest.x_tip))?;
        writeln!(out, "# final_a={}", fmt_g17(arrest.a))?;
        writeln!(out, "# final_relative={}", fmt_g17(arrest.relative))?;
        writeln!(out, "# final_increment={}", fmt_g17(arrest.increment))?;
    }
    writeln!(out, "# total_elongation={}", fmt_g17(trace.total_elongation))?;
    writeln!(out, "# outcome={}", outcome_str(trace.outcome))?;
    Ok(())
}

/// Diagram table, x outer, inclination inner.
pub fn write_diagram(out: &mut dyn Write, grid: &DiagramGrid) -> io::Result<()> {
    writeln!(out, "x,alpha,relative,class")?;
    for (xi, &x) in grid.x_values.iter().enumerate() {
        for (ai, &alpha) in grid.alpha_values.iter().enumerate() {
            let cell = grid.cell(xi, ai);
            writeln!(
                out,
                "{},{},{},{}",
                fmt_g17(x),
                fmt_g17(alpha),
                fmt_g17(cell.relative),
                cell.class.as_str()
            )?;
        }
    }
    Ok(())
}

/// Per-defect breakdown of the perturbation at one tip state.
pub fn write_deltak(
    out: &mut dyn Write,
    config: &Configuration,
    tip: &TipState,
    result: &PerturbationResult,
) -> io::Result<()> {
    writeln!(
        out,
        "index,kind,x,y,half_length,angle,d,phi,delta_k,relative"
    )?;
    let k = k0(config.load.force, tip.a).expect("valid tip distance");
    for (i, (defect, dk)) in config.defects.iter().zip(&result.per_defect).enumerate() {
        let polar = defect.polar(tip).expect("defect away from tip");
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            i,
            kind_str(defect.kind),
            fmt_g17(defect.centre.x),
            fmt_g17(defect.centre.y),
            fmt_g17(defect.half_length),
            fmt_g17(defect.angle),
            fmt_g17(polar.d),
            fmt_g17(polar.phi),
            fmt_g17(*dk),
            fmt_g17(dk / k)
        )?;
    }
    writeln!(out, "# k0={}", fmt_g17(k))?;
    writeln!(out, "# total={}", fmt_g17(result.total))?;
    writeln!(out, "# relative={}", fmt_g17(result.relative))?;
    Ok(())
}
