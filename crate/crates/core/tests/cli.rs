use std::fs;
use std::path::Path;
use std::process::Command;

use laminated_beam::cli::{
    load_model_file, run, CliError, ModelFile, ModelSource, Preset, RunConfig, Units,
};
use laminated_beam::model::AnalysisKind;
use tempfile::tempdir;

const BIN: &str = env!("CARGO_BIN_EXE_laminated-beam");

fn file_names(dir: &Path) -> Vec<String> {
    let mut names: Vec<String> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    names
}

#[test]
fn preset_run_writes_expected_files() {
    let dir = tempdir().unwrap();
    let config = RunConfig {
        kinds: vec![AnalysisKind::Nonlinear, AnalysisKind::Linear],
        loads: Some(vec![150.0]),
        ..RunConfig::preset(Preset::FixedEnd, dir.path())
    };
    let summary = run(&config).unwrap();
    assert_eq!(
        file_names(dir.path()),
        [
            "convergence_150.csv",
            "deflection_linear_150.csv",
            "deflection_nonlinear_150.csv",
            "stress_linear_150.csv",
            "stress_nonlinear_150.csv",
            "summary.json",
        ]
    );
    let convergence = fs::read_to_string(dir.path().join("convergence_150.csv")).unwrap();
    let lines: Vec<&str> = convergence.lines().collect();
    assert_eq!(lines.len(), 1 + 11);
    assert_eq!(summary.runs.len(), 2);
    assert_eq!(summary.runs[0].iterations, 11);

    let deflection = fs::read_to_string(dir.path().join("deflection_nonlinear_150.csv")).unwrap();
    assert_eq!(deflection.lines().count(), 1 + 151);
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("summary.json")).unwrap())
            .unwrap();
    assert_eq!(json["deflection_unit"], "mm");
    let w = json["runs"][0]["mid_span_deflection"].as_f64().unwrap();
    assert!((w.abs() - 15.36).abs() < 0.05, "{w}");
}

#[test]
fn runs_are_deterministic() {
    let (a, b) = (tempdir().unwrap(), tempdir().unwrap());
    for dir in [&a, &b] {
        let config = RunConfig {
            loads: Some(vec![50.0, 200.0]),
            ..RunConfig::preset(Preset::SimplySupported, dir.path())
        };
        run(&config).unwrap();
    }
    for name in file_names(a.path()) {
        assert_eq!(
            fs::read(a.path().join(&name)).unwrap(),
            fs::read(b.path().join(&name)).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn si_units_scale_outputs() {
    let (paper, si) = (tempdir().unwrap(), tempdir().unwrap());
    let run_in = |dir: &Path, units| {
        let config = RunConfig {
            kinds: vec![AnalysisKind::Linear],
            loads: Some(vec![50.0]),
            units,
            ..RunConfig::preset(Preset::SimplySupported, dir)
        };
        run(&config).unwrap().runs.remove(0)
    };
    let (p, s) = (
        run_in(paper.path(), Units::Paper),
        run_in(si.path(), Units::Si),
    );
    assert!(
        (p.mid_span_deflection - 1e3 * s.mid_span_deflection).abs()
            <= 1e-12 * p.mid_span_deflection.abs()
    );
    assert!((p.mid_span_bottom_stress - 1e-6 * s.mid_span_bottom_stress).abs() <= 1e-9);
}

#[test]
fn model_file_round_trips() {
    let model = Preset::SimplySupported.model(50.0).unwrap();
    let file = ModelFile::from_model(&model);
    let parsed = ModelFile::parse(&file.to_json()).unwrap();
    assert_eq!(parsed, file);
    assert_eq!(parsed.to_model().unwrap(), model);
}

#[test]
fn model_file_matches_preset_results() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("model.json");
    let model = Preset::FixedEnd.model(30.0).unwrap();
    fs::write(&path, ModelFile::from_model(&model).to_json()).unwrap();
    assert_eq!(load_model_file(&path).unwrap(), model);

    let out = dir.path().join("out");
    let config = RunConfig {
        source: ModelSource::File(path),
        ..RunConfig::preset(Preset::FixedEnd, &out)
    };
    let summary = run(&config).unwrap();
    assert_eq!(summary.runs.len(), 1);
    assert_eq!(summary.runs[0].load_n, 30.0);
    assert!((summary.runs[0].mid_span_deflection.abs() - 8.17).abs() < 0.05);
}

#[test]
fn schema_errors_name_the_field() {
    let err =
        ModelFile::parse(r#"{"layers": [], "width_m": 0.1, "length_m": 1, "n_el": 4, "bogus": 1}"#)
            .unwrap_err();
    assert!(matches!(err, CliError::Parse { .. }), "{err}");
    assert_eq!(err.exit_code(), 2);

    let text = r#"{
        "layers": [{"E_GPa": 70, "G_GPa": 28}, {"E_GPa": 70, "G_GPa": 28, "h_mm": 1}, {"E_GPa": 70, "G_GPa": 28, "h_mm": 1}],
        "width_m": 0.1, "length_m": 1, "n_el": 4
    }"#;
    let err = ModelFile::parse(text).unwrap().to_model().unwrap_err();
    assert!(err.to_string().contains("layers[0]"), "{err}");
}

fn exit_code(args: &[&str]) -> i32 {
    Command::new(BIN)
        .args(args)
        .output()
        .unwrap()
        .status
        .code()
        .unwrap()
}

#[test]
fn binary_exit_codes() {
    let dir = tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(
        exit_code(&["--preset", "simply-supported", "--load", "50", "--out", out]),
        0
    );
    assert!(dir.path().join("summary.json").exists());
    // neither source given
    assert_eq!(exit_code(&["--out", out]), 2);
    assert_eq!(exit_code(&["--preset", "nowhere", "--out", out]), 2);
    // support and load positions no longer fall on nodes
    assert_eq!(
        exit_code(&["--preset", "simply-supported", "--n-el", "7", "--out", out]),
        2
    );
    assert_eq!(
        exit_code(&[
            "--preset",
            "fixed-end",
            "--load",
            "150",
            "--max-iter",
            "2",
            "--out",
            out
        ]),
        3
    );
    let missing = dir.path().join("missing.json");
    assert_eq!(
        exit_code(&["--model", missing.to_str().unwrap(), "--out", out]),
        1
    );
}

#[test]
fn binary_accepts_every_flag() {
    let dir = tempdir().unwrap();
    let output = Command::new(BIN)
        .args([
            "--preset",
            "fixed-end",
            "--kind",
            "nonlinear,linear,monolithic,two-layer",
            "--load",
            "15,30",
            "--n-el",
            "50",
            "--tol",
            "1e-8",
            "--max-iter",
            "30",
            "--units",
            "si",
            "--out",
        ])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(
        output.status.success(),
        "{}",
        String::from_utf8_lossy(&output.stderr)
    );
    let stdout = String::from_utf8(output.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 8);
    assert!(stdout.contains("two_layer"));
}
