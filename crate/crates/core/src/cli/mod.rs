//! Batch front end: benchmark presets or model files in, CSV and JSON
//! results out.
//!
//! For every requested analysis kind and load `F` a run writes
//!
//! * `deflection_<kind>_<F>.csv`: `X` and `w` of every layer,
//! * `stress_<kind>_<F>.csv`: `X` and `S_top`, `S_bot`, `T` of every layer,
//! * `convergence_<F>.csv`: `k, η₁, η₂` (nonlinear runs only),
//!
//! plus one `summary.json` for the whole batch.

pub mod model_file;
pub mod presets;

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{ModelError, SolverError};
use crate::model::{AnalysisConfig, AnalysisKind, BeamModel, LoadCase, PointLoad};
use crate::postprocess::{analyze, ReferenceComparison, Response};
use crate::solver::ConvergenceLog;

pub use model_file::{load_model_file, ModelFile};
pub use presets::{Preset, ReferenceData};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("cannot parse model file at `{field}` (line {line}, column {column}): {message}")]
    Parse {
        field: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid model file field `{field}`: {message}")]
    Schema { field: String, message: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{kind} analysis at F = {load} N failed: {source}")]
    Solver {
        kind: AnalysisKind,
        load: f64,
        source: SolverError,
    },
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for invalid input, 3 when the solver fails, 1 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_)
            | CliError::Parse { .. }
            | CliError::Schema { .. }
            | CliError::Model(_) => 2,
            CliError::Solver { source, .. } => match source {
                SolverError::SingularKkt { .. } | SolverError::DimensionMismatch { .. } => 2,
                SolverError::Diverged { .. } | SolverError::NonFinite { .. } => 3,
            },
            CliError::Io { .. } => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Units {
    /// m and Pa.
    Si,
    /// mm for deflections and MPa for stresses.
    #[default]
    Paper,
}

impl Units {
    fn length(self) -> (f64, &'static str) {
        match self {
            Units::Si => (1.0, "m"),
            Units::Paper => (1e3, "mm"),
        }
    }

    fn stress(self) -> (f64, &'static str) {
        match self {
            Units::Si => (1.0, "Pa"),
            Units::Paper => (1e-6, "MPa"),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Units::Si => "si",
            Units::Paper => "paper",
        }
    }
}

impl std::str::FromStr for Units {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "si" => Ok(Units::Si),
            "paper" => Ok(Units::Paper),
            other => Err(format!("unknown units `{other}` (expected si or paper)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ModelSource {
    Preset(Preset),
    File(PathBuf),
}

/// One batch of analyses.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub source: ModelSource,
    pub kinds: Vec<AnalysisKind>,
    /// Point-load magnitudes in N. `None` uses the preset's tabulated loads
    /// or the loads of the model file.
    pub loads: Option<Vec<f64>>,
    pub n_el: Option<usize>,
    pub tol: Option<f64>,
    pub max_iter: Option<usize>,
    pub out: PathBuf,
    pub units: Units,
}

impl RunConfig {
    pub fn preset(preset: Preset, out: impl Into<PathBuf>) -> Self {
        Self {
            source: ModelSource::Preset(preset),
            kinds: vec![AnalysisKind::Nonlinear],
            loads: None,
            n_el: None,
            tol: None,
            max_iter: None,
            out: out.into(),
            units: Units::default(),
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.kinds.is_empty() {
            return Err(CliError::Usage(
                "at least one analysis kind is required".into(),
            ));
        }
        if let Some(loads) = &self.loads {
            if loads.is_empty() {
                return Err(CliError::Usage("the load list is empty".into()));
            }
            if let Some(f) = loads.iter().find(|f| !f.is_finite()) {
                return Err(CliError::Usage(format!("load {f} is not finite")));
            }
        }
        Ok(())
    }

    fn analysis(&self, base: AnalysisConfig, kind: AnalysisKind) -> AnalysisConfig {
        AnalysisConfig {
            kind,
            tol_equilibrium: self.tol.unwrap_or(base.tol_equilibrium),
            tol_compatibility: self.tol.unwrap_or(base.tol_compatibility),
            max_iterations: self.max_iter.unwrap_or(base.max_iterations),
        }
    }

    /// The models to run, one per load, with their load magnitude.
    fn models(&self) -> Result<Vec<(f64, BeamModel)>, CliError> {
        match &self.source {
            ModelSource::Preset(p) => {
                let n_el = self.n_el.unwrap_or(p.default_n_el());
                let loads = self
                    .loads
                    .clone()
                    .unwrap_or_else(|| p.reference().loads.to_vec());
                let analysis = self.analysis(AnalysisConfig::default(), AnalysisKind::Nonlinear);
                loads
                    .into_iter()
                    .map(|f| Ok((f, p.model_with(f, n_el, analysis)?)))
                    .collect()
            }
            ModelSource::File(path) => {
                let mut file = model_file::ModelFile::parse(&read(path)?)?;
                if let Some(n) = self.n_el {
                    file.n_el = n;
                }
                let base = file.to_model()?;
                let base =
                    base.with_analysis(self.analysis(*base.analysis(), base.analysis().kind))?;
                match &self.loads {
                    None => {
                        let total = base.loads().point_loads.iter().map(|p| p.magnitude).sum();
                        Ok(vec![(total, base)])
                    }
                    Some(loads) => loads
                        .iter()
                        .map(|&f| Ok((f, base.with_loads(override_loads(&base, f))?)))
                        .collect(),
                }
            }
        }
    }
}

/// Every point load of the file gets magnitude `f`; a file without point
/// loads gets one on layer 1 at mid-span.
fn override_loads(model: &BeamModel, f: f64) -> LoadCase {
    let mut loads = model.loads().clone();
    if loads.point_loads.is_empty() {
        loads.point_loads.push(PointLoad {
            layer: 1,
            position: 0.5 * model.length(),
            magnitude: f,
        });
    } else {
        loads.point_loads.iter_mut().for_each(|p| p.magnitude = f);
    }
    loads
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Residuals {
    pub eta1: f64,
    pub eta2: f64,
}

/// Summary of one analysis at one load.
#[derive(Clone, Debug, Serialize)]
pub struct RunRecord {
    pub kind: AnalysisKind,
    pub load_n: f64,
    pub iterations: usize,
    pub mid_span_deflection: f64,
    pub mid_span_bottom_stress: f64,
    pub max_abs_normal_stress: f64,
    pub max_abs_interlayer_shear: Option<f64>,
    pub final_residuals: Option<Residuals>,
    pub comparisons: Vec<ReferenceComparison>,
    pub files: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunSummary {
    pub model: String,
    pub units: &'static str,
    pub deflection_unit: &'static str,
    pub stress_unit: &'static str,
    pub runs: Vec<RunRecord>,
}

/// Runs every requested analysis and writes the result files.
pub fn run(config: &RunConfig) -> Result<RunSummary, CliError> {
    config.validate()?;
    let models = config.models()?;
    fs::create_dir_all(&config.out).map_err(|source| CliError::Io {
        path: config.out.clone(),
        source,
    })?;

    let reference = match &config.source {
        ModelSource::Preset(p) => Some(p.reference()),
        ModelSource::File(_) => None,
    };
    let mut runs = Vec::new();
    for (load, base) in &models {
        for &kind in &config.kinds {
            let model = base.with_analysis(AnalysisConfig {
                kind,
                ..*base.analysis()
            })?;
            let response = analyze(&model).map_err(|source| CliError::Solver {
                kind,
                load: *load,
                source,
            })?;
            runs.push(write_run(config, reference, *load, &response)?);
        }
    }

    let (_, deflection_unit) = config.units.length();
    let (_, stress_unit) = config.units.stress();
    let summary = RunSummary {
        model: match &config.source {
            ModelSource::Preset(p) => p.name().to_owned(),
            ModelSource::File(path) => path.display().to_string(),
        },
        units: config.units.name(),
        deflection_unit,
        stress_unit,
        runs,
    };
    let json = serde_json::to_string_pretty(&summary).expect("summary serializes");
    write(&config.out.join("summary.json"), json.as_bytes())?;
    Ok(summary)
}

fn load_tag(load: f64) -> String {
    format!("{load}")
}

fn write_run(
    config: &RunConfig,
    reference: Option<&ReferenceData>,
    load: f64,
    response: &Response,
) -> Result<RunRecord, CliError> {
    let (ls, _) = config.units.length();
    let (ss, _) = config.units.stress();
    let kind = response.kind;
    let tag = load_tag(load);
    let mut files = Vec::new();

    let name = format!("deflection_{}_{tag}.csv", kind.name());
    write(
        &config.out.join(&name),
        &deflection_csv(response, config.units),
    )?;
    files.push(name);
    let name = format!("stress_{}_{tag}.csv", kind.name());
    write(&config.out.join(&name), &stress_csv(response, config.units))?;
    files.push(name);
    if kind == AnalysisKind::Nonlinear {
        let name = format!("convergence_{tag}.csv");
        write(
            &config.out.join(&name),
            &convergence_csv(&response.solution.log),
        )?;
        files.push(name);
    }

    let field = &response.field;
    let w = response.mid_span_deflection();
    let s = response.mid_span_bottom_stress();
    let max_abs_normal_stress = field
        .layers
        .iter()
        .flat_map(|l| l.stress_top.iter().chain(&l.stress_bottom))
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let max_abs_interlayer_shear = (field.layers.len() == 3).then(|| {
        field.layers[1]
            .shear
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
            * ss
    });

    let mut comparisons = Vec::new();
    if let Some(r) = reference {
        let w_mm = 1e3 * w;
        let s_mpa = 1e-6 * s;
        for (label, value) in r.reference_deflections(load) {
            comparisons.push(comparison(format!("w_{label}"), w_mm, value, 1e-3 * ls));
        }
        if let Some(value) = r.deflection_of(kind, load) {
            comparisons.push(comparison("w_paper".into(), w_mm, value, 1e-3 * ls));
        }
        if matches!(kind, AnalysisKind::Linear | AnalysisKind::Nonlinear) {
            for (label, value) in r.reference_stresses(load) {
                comparisons.push(comparison(
                    format!("S_bot3_{label}"),
                    s_mpa,
                    value,
                    1e6 * ss,
                ));
            }
            if let Some(value) = r.stress_of(kind, load) {
                comparisons.push(comparison("S_bot3_paper".into(), s_mpa, value, 1e6 * ss));
            }
        }
    }

    Ok(RunRecord {
        kind,
        load_n: load,
        iterations: response.iterations(),
        mid_span_deflection: w * ls,
        mid_span_bottom_stress: s * ss,
        max_abs_normal_stress: max_abs_normal_stress * ss,
        max_abs_interlayer_shear,
        final_residuals: response.solution.log.last().map(|r| Residuals {
            eta1: r.residuals.equilibrium,
            eta2: r.residuals.compatibility,
        }),
        comparisons,
        files,
    })
}

/// Compares in paper units and reports values scaled to the output units.
fn comparison(quantity: String, computed: f64, reference: f64, scale: f64) -> ReferenceComparison {
    let c = ReferenceComparison::new(quantity, computed, reference)
        .expect("tabulated reference values are non-zero");
    ReferenceComparison {
        computed: c.computed * scale,
        reference: c.reference * scale,
        ..c
    }
}

fn csv_bytes(header: Vec<String>, rows: impl Iterator<Item = Vec<String>>) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory CSV");
    for row in rows {
        w.write_record(&row).expect("in-memory CSV");
    }
    w.into_inner().expect("in-memory CSV")
}

fn deflection_csv(response: &Response, units: Units) -> Vec<u8> {
    let (ls, unit) = units.length();
    let field = &response.field;
    let mut header = vec!["X_m".to_owned()];
    header.extend((1..=field.layers.len()).map(|i| format!("w{i}_{unit}")));
    let rows = (0..field.x.len()).map(|j| {
        let mut row = vec![field.x[j].to_string()];
        row.extend(
            field
                .layers
                .iter()
                .map(|l| (l.deflection[j] * ls).to_string()),
        );
        row
    });
    csv_bytes(header, rows)
}

fn stress_csv(response: &Response, units: Units) -> Vec<u8> {
    let (ss, unit) = units.stress();
    let field = &response.field;
    let mut header = vec!["X_m".to_owned()];
    for i in 1..=field.layers.len() {
        header.push(format!("S_top{i}_{unit}"));
        header.push(format!("S_bot{i}_{unit}"));
        header.push(format!("T{i}_{unit}"));
    }
    let rows = (0..field.x.len()).map(|j| {
        let mut row = vec![field.x[j].to_string()];
        for l in &field.layers {
            row.push((l.stress_top[j] * ss).to_string());
            row.push((l.stress_bottom[j] * ss).to_string());
            row.push((l.shear[j] * ss).to_string());
        }
        row
    });
    csv_bytes(header, rows)
}

fn convergence_csv(log: &ConvergenceLog) -> Vec<u8> {
    let header = vec!["k".to_owned(), "eta1".to_owned(), "eta2".to_owned()];
    let rows = log.records().iter().map(|r| {
        vec![
            r.iteration.to_string(),
            format!("{:.6e}", r.residuals.equilibrium),
            format!("{:.6e}", r.residuals.compatibility),
        ]
    });
    csv_bytes(header, rows)
}
