//! Command-line surface.
//!
//! Exit codes: 0 success, 1 configuration/usage error, 2 numerical or
//! runtime error, 3 failed self-check.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use antiplane::asymptotics::{
    channel_microcracks, channel_mixed, channel_mixed_infinite, channel_mixed_infinite_bracket,
    far_single_microcrack, far_single_rigid, ChannelArrangement, ChannelSpec,
};
use antiplane::model::{Bimaterial, HalfPlane, TipState};
use antiplane::perturbation::relative_perturbation;
use antiplane::propagation::propagate;

use crate::check::run_checks;
use crate::config::{build_configuration, RunConfig};
use crate::diagram::diagram;
use crate::output::{fmt_g17, write_deltak, write_diagram, write_trace};

/// Environment variable overriding the diagram worker count.
pub const THREADS_ENV: &str = "ANTIPLANE_THREADS";

#[derive(Parser)]
#[command(
    name = "antiplane",
    version,
    about = "Interfacial crack growth through channels of line defects"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the quasi-static growth loop and emit the trace table.
    Propagate {
        /// JSON run configuration.
        config: PathBuf,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan the shielding-amplification diagram and emit the grid table.
    Diagram {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-defect intensity-perturbation breakdown at a given tip position.
    Deltak {
        config: PathBuf,
        /// Tip position (global x) to evaluate at.
        #[arg(long, allow_negative_numbers = true)]
        tip: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the closed-form far-load formulas directly.
    Asym {
        #[command(subcommand)]
        formula: AsymCommand,
    },
    /// Run the built-in identity suite and report pass/fail.
    Check,
}

#[derive(Args)]
struct MaterialArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    mu_plus: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    mu_minus: f64,
}

#[derive(Args)]
struct SingleArgs {
    /// Defect half-length.
    #[arg(long, allow_negative_numbers = true)]
    s: f64,
    /// Tip-defect distance.
    #[arg(long, allow_negative_numbers = true)]
    d: f64,
    /// Polar angle of the defect centre, radians.
    #[arg(long, allow_negative_numbers = true)]
    phi: f64,
    /// Defect inclination, radians.
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    #[command(flatten)]
    material: MaterialArgs,
    /// Half-plane of the defect: upper or lower.
    #[arg(long, default_value = "upper")]
    side: String,
}

#[derive(Args)]
struct ChannelArgs {
    #[arg(long)]
    n_ahead: usize,
    #[arg(long)]
    n_behind: usize,
    /// Row standoff from the interface.
    #[arg(long, allow_negative_numbers = true)]
    h: f64,
    /// Column spacing.
    #[arg(long, allow_negative_numbers = true)]
    w: f64,
    /// Defect half-length.
    #[arg(long, allow_negative_numbers = true)]
    s: f64,
    /// Inclination, radians.
    #[arg(long, allow_negative_numbers = true)]
    alpha: f64,
    /// Load-tip distance.
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    force: f64,
}

#[derive(Subcommand)]
enum AsymCommand {
    /// Relative perturbation of a single far-load microcrack.
    SingleMicrocrack(SingleArgs),
    /// Relative perturbation of a single far-load rigid line inclusion.
    SingleRigid(SingleArgs),
    /// Advance from a finite perpendicular microcrack channel.
    ChannelMicrocracks(ChannelArgs),
    /// Advance from a finite rigid-over-microcrack channel.
    ChannelMixed(ChannelArgs),
    /// Advance from a mixed channel with infinitely many columns ahead.
    MixedInfinite {
        #[arg(long)]
        n_behind: usize,
        #[arg(long, allow_negative_numbers = true)]
        h: f64,
        #[arg(long, allow_negative_numbers = true)]
        w: f64,
        /// Inclination, radians.
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        /// Defect half-length.
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        s: f64,
        /// Load-tip distance.
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        a: f64,
    },
}

/// Entry point used by both `main` and the tests. Returns the process exit
/// code and writes results to the given streams.
pub fn run_cli_with(
    args: Vec<OsString>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    1
                }
            };
        }
    };

    match dispatch(cli, stdout, stderr) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(stderr, "{}", failure.message);
            failure.code
        }
    }
}

/// Convenience wrapper over the process streams.
pub fn run_cli(args: Vec<OsString>) -> i32 {
    let mut stdout = std::io::stdout();
    let mut stderr = std::io::stderr();
    run_cli_with(args, &mut stdout, &mut stderr)
}

struct Failure {
    code: i32,
    message: String,
}

fn config_failure(message: String) -> Failure {
    Failure { code: 1, message }
}

fn numeric_failure(message: String) -> Failure {
    Failure { code: 2, message }
}

fn load_config(path: &Path) -> Result<RunConfig, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| config_failure(format!("cannot read {}: {e}", path.display())))?;
    RunConfig::from_json(&text).map_err(|e| config_failure(e.to_string()))
}

fn open_sink<'a>(
    out: &Option<PathBuf>,
    stdout: &'a mut dyn Write,
) -> Result<Box<dyn Write + 'a>, Failure> {
    match out {
        Some(path) => {
            let file = fs::File::create(path)
                .map_err(|e| numeric_failure(format!("cannot write {}: {e}", path.display())))?;
            Ok(Box::new(file))
        }
        None => Ok(Box::new(stdout)),
    }
}

fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok())
}

fn side_from_str(side: &str) -> Result<HalfPlane, Failure> {
    match side {
        "upper" => Ok(HalfPlane::Upper),
        "lower" => Ok(HalfPlane::Lower),
        other => Err(config_failure(format!(
            "side must be 'upper' or 'lower', got {other:?}"
        ))),
    }
}

fn dispatch(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, Failure> {
    match cli.command {
        Command::Propagate { config, out } => {
            let run = load_config(&config)?;
            let (built, warnings) = build_configuration(&run)
                .map_err(|e| config_failure(e.to_string()))?;
            for w in &warnings {
                let _ = writeln!(stderr, "warning: {w}");
            }
            let trace = propagate(&built).map_err(|e| numeric_failure(e.to_string()))?;
            let mut sink = open_sink(&out, stdout)?;
            write_trace(&mut sink, &trace)
                .map_err(|e| numeric_failure(format!("write failed: {e}")))?;
            Ok(0)
        }
        Command::Diagram { config, out } => {
            let run = load_config(&config)?;
            let grid = diagram(&run, threads_from_env())
                .map_err(|e| config_failure(e.to_string()))?;
            let mut sink = open_sink(&out, stdout)?;
            write_diagram(&mut sink, &grid)
                .map_err(|e| numeric_failure(format!("write failed: {e}")))?;
            Ok(0)
        }
        Command::Deltak { config, tip, out } => {
            let run = load_config(&config)?;
            let (built, warnings) = build_configuration(&run)
                .map_err(|e| config_failure(e.to_string()))?;
            for w in &warnings {
                let _ = writeln!(stderr, "warning: {w}");
            }
            let tip_state = TipState::new(tip, &built.load)
                .map_err(|e| config_failure(format!("--tip {tip}: {e}")))?;
            let result = relative_perturbation(&built, &tip_state)
                .map_err(|e| numeric_failure(e.to_string()))?;
            let mut sink = open_sink(&out, stdout)?;
            write_deltak(&mut sink, &built, &tip_state, &result)
                .map_err(|e| numeric_failure(format!("write failed: {e}")))?;
            Ok(0)
        }
        Command::Asym { formula } => {
            run_asym(formula, stdout)?;
            Ok(0)
        }
        Command::Check => {
            let mut all_passed = true;
            for result in run_checks() {
                let status = if result.passed { "ok" } else { "FAIL" };
                all_passed &= result.passed;
                let _ = writeln!(stdout, "check {:<28} {status}  {}", result.name, result.detail);
            }
            if all_passed {
                let _ = writeln!(stdout, "all checks passed");
                Ok(0)
            } else {
                Ok(3)
            }
        }
    }
}

fn run_asym(formula: AsymCommand, stdout: &mut dyn Write) -> Result<(), Failure> {
    let emit = |stdout: &mut dyn Write, name: &str, value: f64| {
        let _ = writeln!(stdout, "{name}={}", fmt_g17(value));
    };
    match formula {
        AsymCommand::SingleMicrocrack(args) | AsymCommand::SingleRigid(args)
            if args.material.mu_plus <= 0.0 || args.material.mu_minus <= 0.0 =>
        {
            Err(config_failure("moduli must be positive".into()))
        }
        AsymCommand::SingleMicrocrack(args) => {
            let material = Bimaterial::new(args.material.mu_plus, args.material.mu_minus)
                .map_err(|e| config_failure(e.to_string()))?;
            let side = side_from_str(&args.side)?;
            let v = far_single_microcrack(args.s, args.d, args.phi, args.alpha, &material, side)
                .map_err(|e| numeric_failure(e.to_string()))?;
            emit(stdout, "relative", v);
            Ok(())
        }
        AsymCommand::SingleRigid(args) => {
            let material = Bimaterial::new(args.material.mu_plus, args.material.mu_minus)
                .map_err(|e| config_failure(e.to_string()))?;
            let side = side_from_str(&args.side)?;
            let v = far_single_rigid(args.s, args.d, args.phi, args.alpha, &material, side)
                .map_err(|e| numeric_failure(e.to_string()))?;
            emit(stdout, "relative", v);
            Ok(())
        }
        AsymCommand::ChannelMicrocracks(args) => {
            let spec = ChannelSpec {
                n_ahead: args.n_ahead,
                n_behind: args.n_behind,
                h: args.h,
                w: args.w,
                s: args.s,
                alpha: args.alpha,
                arrangement: ChannelArrangement::MicrocrackPerpendicularRows,
            };
            let material = Bimaterial::homogeneous(1.0).expect("unit modulus");
            let v = channel_microcracks(&spec, args.a, args.force, &material)
                .map_err(|e| numeric_failure(e.to_string()))?;
            emit(stdout, "delta", v);
            Ok(())
        }
        AsymCommand::ChannelMixed(args) => {
            let spec = ChannelSpec {
                n_ahead: args.n_ahead,
                n_behind: args.n_behind,
                h: args.h,
                w: args.w,
                s: args.s,
                alpha: args.alpha,
                arrangement: ChannelArrangement::RigidAboveMicrocrackBelow,
            };
            let material = Bimaterial::homogeneous(1.0).expect("unit modulus");
            let v = channel_mixed(&spec, args.a, args.force, &material)
                .map_err(|e| numeric_failure(e.to_string()))?;
            emit(stdout, "delta", v);
            Ok(())
        }
        AsymCommand::MixedInfinite {
            n_behind,
            h,
            w,
            alpha,
            s,
            a,
        } => {
            let bracket = channel_mixed_infinite_bracket(n_behind, h, w)
                .map_err(|e| numeric_failure(e.to_string()))?;
            let delta = channel_mixed_infinite(n_behind, h, w, alpha, s, a)
                .map_err(|e| numeric_failure(e.to_string()))?;
            emit(stdout, "bracket", bracket);
            emit(stdout, "delta", delta);
            Ok(())
        }
    }
}
