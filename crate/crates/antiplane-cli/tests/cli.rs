//! End-to-end behaviour of the command-line surface: exit codes, output
//! formats, determinism across thread counts.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use antiplane_cli::cli::run_cli_with;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut argv: Vec<OsString> = vec!["antiplane".into()];
    argv.extend(args.iter().map(OsString::from));
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_cli_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn example(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn write_temp(content: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(content.as_bytes()).unwrap();
    file
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("propagate"));
}

#[test]
fn unknown_subcommand_exits_one() {
    let (code, _, err) = run(&["frobnicate"]);
    assert_eq!(code, 1);
    assert!(!err.is_empty());
}

#[test]
fn missing_config_file_exits_one() {
    let (code, _, err) = run(&["propagate", "/nonexistent/nowhere.json"]);
    assert_eq!(code, 1);
    assert!(err.contains("cannot read"));
}

#[test]
fn malformed_config_reports_line_and_exits_one() {
    let file = write_temp("{\n  \"material\": {\n");
    let (code, _, err) = run(&["propagate", file.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line"), "missing diagnostics: {err}");
}

#[test]
fn invalid_geometry_lists_every_violation() {
    let file = write_temp(
        r#"{
            "material": {"mu_plus": -1.0, "mu_minus": 1.0},
            "load": {"force": 1.0, "x": 0.0},
            "tip": {"x": 0.5},
            "defects": [
                {"kind": "microcrack", "x": 1.0, "y": 0.0, "half_length": 0.1, "angle": 0}
            ]
        }"#,
    );
    let (code, _, err) = run(&["propagate", file.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("non-positive modulus"));
    assert!(err.contains("defect on interface"));
}

#[test]
fn propagate_emits_trace_ending_with_outcome() {
    let (code, out, _) = run(&["propagate", &example("microcrack_channel_near.json")]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.trim_end().lines().collect();
    assert_eq!(lines[0], "step,x_tip,a,relative,increment,cumulative");
    assert_eq!(*lines.last().unwrap(), "# outcome=Arrested");
    // data rows have six comma-separated fields
    let fields: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(fields.len(), 6);
    assert_eq!(fields[0], "0");
}

#[test]
fn deltak_breaks_down_every_defect() {
    let (code, out, _) = run(&[
        "deltak",
        &example("microcrack_channel_near.json"),
        "--tip",
        "0.5",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.trim_end().lines().collect();
    assert_eq!(
        lines[0],
        "index,kind,x,y,half_length,angle,d,phi,delta_k,relative"
    );
    let data_rows = lines.iter().filter(|l| !l.starts_with('#')).count() - 1;
    assert_eq!(data_rows, 18);
    assert!(lines.iter().any(|l| l.starts_with("# k0=")));
    assert!(lines.iter().any(|l| l.starts_with("# relative=")));
}

#[test]
fn deltak_rejects_tip_behind_the_load() {
    let (code, _, err) = run(&[
        "deltak",
        &example("microcrack_channel_near.json"),
        "--tip",
        "-3.0",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("--tip"));
}

#[test]
fn asym_mixed_infinite_prints_the_reference_bracket() {
    let (code, out, _) = run(&[
        "asym",
        "mixed-infinite",
        "--h",
        "1.2",
        "--w",
        "1",
        "--n-behind",
        "0",
        "--alpha",
        "1.5708",
    ]);
    assert_eq!(code, 0);
    let bracket_line = out
        .lines()
        .find(|l| l.starts_with("bracket="))
        .expect("bracket line");
    let value: f64 = bracket_line.trim_start_matches("bracket=").parse().unwrap();
    assert!((value + 0.51512).abs() < 1e-5, "bracket = {value}");
}

#[test]
fn asym_single_formulas_match_reference_values() {
    let (code, out, _) = run(&[
        "asym",
        "single-microcrack",
        "--s",
        "0.1",
        "--d",
        "1",
        "--phi",
        "0",
        "--alpha",
        "0",
    ]);
    assert_eq!(code, 0);
    let v: f64 = out
        .lines()
        .find(|l| l.starts_with("relative="))
        .unwrap()
        .trim_start_matches("relative=")
        .parse()
        .unwrap();
    assert!((v - 2.5e-3).abs() < 1e-12);

    // non-identical materials are rejected by the channel formulas but fine
    // for the single-defect ones
    let (code, _, err) = run(&[
        "asym",
        "single-rigid",
        "--s",
        "0.1",
        "--d",
        "1",
        "--phi",
        "0.5",
        "--alpha",
        "0.1",
        "--mu-plus",
        "2",
        "--mu-minus",
        "1",
        "--side",
        "lower",
    ]);
    assert_eq!(code, 0, "{err}");
}

#[test]
fn asym_rejects_bad_side() {
    let (code, _, err) = run(&[
        "asym",
        "single-microcrack",
        "--s",
        "0.1",
        "--d",
        "1",
        "--phi",
        "0",
        "--alpha",
        "0",
        "--side",
        "middle",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("side"));
}

#[test]
fn asym_channel_domain_errors_exit_two() {
    let (code, _, err) = run(&[
        "asym",
        "channel-mixed",
        "--n-ahead",
        "1",
        "--n-behind",
        "0",
        "--h",
        "-1",
        "--w",
        "1",
        "--s",
        "0.1",
        "--alpha",
        "0",
        "--a",
        "1",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("standoff"));
}

#[test]
fn check_passes_on_a_pristine_build() {
    let (code, out, _) = run(&["check"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("all checks passed"));
}

#[test]
fn diagram_output_is_identical_for_any_thread_count() {
    let file = write_temp(
        r#"{
            "material": {"mu_plus": 1.0, "mu_minus": 1.0},
            "load": {"force": 1.0, "x": 0.0},
            "tip": {"x": 0.5},
            "arrays": [{
                "arrangement": "rigid-above-microcrack-below",
                "count": 5, "x_start": 0.5, "spacing": 1.0,
                "standoff": 1.2, "half_length": 0.1, "angle": 1.0
            }],
            "diagram": {"alpha_samples": 41, "x_step": 0.25}
        }"#,
    );
    let run_config = antiplane_cli::RunConfig::from_json(
        &std::fs::read_to_string(file.path()).unwrap(),
    )
    .unwrap();
    let mut outputs = Vec::new();
    for threads in [1, 4] {
        let grid = antiplane_cli::diagram(&run_config, Some(threads)).unwrap();
        let mut buf = Vec::new();
        antiplane_cli::output::write_diagram(&mut buf, &grid).unwrap();
        outputs.push(buf);
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn trace_files_are_byte_identical_across_runs() {
    let path = example("mixed_channel_near.json");
    let dir = tempfile::tempdir().unwrap();
    let out1 = dir.path().join("t1.csv");
    let out2 = dir.path().join("t2.csv");
    let (c1, _, _) = run(&["propagate", &path, "--out", out1.to_str().unwrap()]);
    let (c2, _, _) = run(&["propagate", &path, "--out", out2.to_str().unwrap()]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(
        std::fs::read(&out1).unwrap(),
        std::fs::read(&out2).unwrap()
    );
}

#[test]
fn bundled_examples_all_build() {
    for name in [
        "microcrack_channel_near.json",
        "microcrack_channel_far.json",
        "mixed_channel_near.json",
        "mixed_channel_far.json",
        "mixed_channel_bimaterial.json",
    ] {
        let text = std::fs::read_to_string(example(name)).unwrap();
        let run_config = antiplane_cli::RunConfig::from_json(&text).unwrap();
        let (config, warnings) = antiplane_cli::build_configuration(&run_config).unwrap();
        assert_eq!(config.defects.len(), 18, "{name}");
        assert!(warnings.is_empty(), "{name}: {warnings:?}");
    }
}
