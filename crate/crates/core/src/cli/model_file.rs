//! JSON model description.
//!
//! ```json
//! {
//!   "layers": [
//!     { "E_GPa": 64.5, "G_GPa": 26.2, "h_mm": 5 },
//!     { "E_MPa": 3.61, "G_MPa": 1.28, "h_mm": 0.38 },
//!     { "E_GPa": 64.5, "G_GPa": 26.2, "h_mm": 5 }
//!   ],
//!   "width_m": 0.1,
//!   "length_m": 1.0,
//!   "n_el": 40,
//!   "supports": [
//!     { "layer": 3, "X_m": 0.1, "fix": ["u", "w"] },
//!     { "layer": 3, "node": 37, "fix": ["w"] }
//!   ],
//!   "loads": [
//!     { "layer": 1, "X_m": 0.5, "F_N": 50 },
//!     { "layer": 1, "q_N_per_m": 20 }
//!   ],
//!   "analysis": { "kind": "nonlinear", "tol": 1e-6, "max_iter": 50 }
//! }
//! ```
//!
//! Moduli may be given in GPa, MPa or Pa and thicknesses in mm or m. Layer
//! and node numbers are 1-based. Supports are placed either by `node` or
//! by abscissa `X_m`, which must fall on a node.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::error::ModelError;
use crate::model::{
    node_at, AnalysisConfig, AnalysisKind, BeamModel, BeamModelSpec, Component, DistributedLoad,
    Intensity, LayerSection, LayerSpec, LoadCase, PointLoad, SupportSpec,
};

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub layers: Vec<LayerEntry>,
    pub width_m: f64,
    pub length_m: f64,
    pub n_el: usize,
    #[serde(default)]
    pub supports: Vec<SupportEntry>,
    #[serde(default)]
    pub loads: Vec<LoadEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analysis: Option<AnalysisEntry>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerEntry {
    #[serde(rename = "E_GPa", default, skip_serializing_if = "Option::is_none")]
    pub e_gpa: Option<f64>,
    #[serde(rename = "E_MPa", default, skip_serializing_if = "Option::is_none")]
    pub e_mpa: Option<f64>,
    #[serde(rename = "E_Pa", default, skip_serializing_if = "Option::is_none")]
    pub e_pa: Option<f64>,
    #[serde(rename = "G_GPa", default, skip_serializing_if = "Option::is_none")]
    pub g_gpa: Option<f64>,
    #[serde(rename = "G_MPa", default, skip_serializing_if = "Option::is_none")]
    pub g_mpa: Option<f64>,
    #[serde(rename = "G_Pa", default, skip_serializing_if = "Option::is_none")]
    pub g_pa: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_mm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h_m: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SupportEntry {
    pub layer: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub node: Option<usize>,
    #[serde(rename = "X_m", default, skip_serializing_if = "Option::is_none")]
    pub x_m: Option<f64>,
    pub fix: Vec<Component>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntensityEntry {
    Uniform(f64),
    PerElement(Vec<f64>),
}

/// A point load (`X_m`, `F_N`) or a distributed load (`q_N_per_m`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoadEntry {
    pub layer: usize,
    #[serde(rename = "X_m", default, skip_serializing_if = "Option::is_none")]
    pub x_m: Option<f64>,
    #[serde(rename = "F_N", default, skip_serializing_if = "Option::is_none")]
    pub f_n: Option<f64>,
    #[serde(rename = "q_N_per_m", default, skip_serializing_if = "Option::is_none")]
    pub q_n_per_m: Option<IntensityEntry>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<AnalysisKind>,
    /// Sets both residual tolerances.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
}

fn schema(field: String, message: &str) -> CliError {
    CliError::Schema {
        field,
        message: message.to_owned(),
    }
}

fn one_of(field: String, options: [(Option<f64>, f64); 3], names: &str) -> Result<f64, CliError> {
    let given: Vec<f64> = options
        .iter()
        .filter_map(|(v, scale)| v.map(|v| v * scale))
        .collect();
    match given.as_slice() {
        [v] => Ok(*v),
        [] => Err(schema(field, &format!("missing, give one of {names}"))),
        _ => Err(schema(field, &format!("give only one of {names}"))),
    }
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            CliError::Parse {
                field: path,
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            }
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model file serializes")
    }

    /// Converts to SI and validates.
    pub fn to_model(&self) -> Result<BeamModel, CliError> {
        let length = self.length_m;
        let mut layers = Vec::with_capacity(self.layers.len());
        for (i, l) in self.layers.iter().enumerate() {
            let e = one_of(
                format!("layers[{i}].E"),
                [(l.e_gpa, 1e9), (l.e_mpa, 1e6), (l.e_pa, 1.0)],
                "E_GPa, E_MPa, E_Pa",
            )?;
            let g = one_of(
                format!("layers[{i}].G"),
                [(l.g_gpa, 1e9), (l.g_mpa, 1e6), (l.g_pa, 1.0)],
                "G_GPa, G_MPa, G_Pa",
            )?;
            let h = one_of(
                format!("layers[{i}].h"),
                [(l.h_mm, 1e-3), (l.h_m, 1.0), (None, 0.0)],
                "h_mm, h_m",
            )?;
            let section = LayerSection::new(e, g, self.width_m, h).map_err(|err| match err {
                ModelError::NonPositive { field, value } => CliError::Schema {
                    field: format!("layers[{i}].{field}"),
                    message: format!("must be positive and finite, got {value}"),
                },
                other => CliError::Model(other),
            })?;
            layers.push(LayerSpec::new(section, length));
        }

        let element_length = length / self.n_el.max(1) as f64;
        let mut supports = Vec::with_capacity(self.supports.len());
        for (i, s) in self.supports.iter().enumerate() {
            let node = match (s.node, s.x_m) {
                (Some(n), None) => n,
                (None, Some(x)) => {
                    node_at(x, length, element_length).map_err(|_| {
                        schema(
                            format!("supports[{i}].X_m"),
                            &format!("X = {x} m is not a mesh node"),
                        )
                    })? + 1
                }
                _ => {
                    return Err(schema(
                        format!("supports[{i}]"),
                        "give exactly one of node, X_m",
                    ))
                }
            };
            supports.push(SupportSpec {
                layer: s.layer,
                node,
                components: s.fix.clone(),
            });
        }

        let mut loads = LoadCase::default();
        for (i, l) in self.loads.iter().enumerate() {
            match (l.x_m, l.f_n, &l.q_n_per_m) {
                (Some(x), Some(f), None) => loads.point_loads.push(PointLoad {
                    layer: l.layer,
                    position: x,
                    magnitude: f,
                }),
                (None, None, Some(q)) => loads.distributed.push(DistributedLoad {
                    layer: l.layer,
                    intensity: match q {
                        IntensityEntry::Uniform(v) => Intensity::Uniform(*v),
                        IntensityEntry::PerElement(v) => Intensity::PerElement(v.clone()),
                    },
                }),
                _ => {
                    return Err(schema(
                        format!("loads[{i}]"),
                        "a load needs either X_m and F_N, or q_N_per_m",
                    ))
                }
            }
        }

        let mut analysis = AnalysisConfig::default();
        if let Some(a) = &self.analysis {
            if let Some(kind) = a.kind {
                analysis.kind = kind;
            }
            if let Some(tol) = a.tol {
                analysis.tol_equilibrium = tol;
                analysis.tol_compatibility = tol;
            }
            if let Some(n) = a.max_iter {
                analysis.max_iterations = n;
            }
        }

        Ok(BeamModelSpec {
            layers,
            n_el: self.n_el,
            supports,
            loads,
            analysis,
        }
        .validate()?)
    }

    /// Lossless description of a model (SI keys, supports by node).
    pub fn from_model(model: &BeamModel) -> Self {
        let layers = model
            .layers()
            .iter()
            .map(|l| LayerEntry {
                e_pa: Some(l.section.young_modulus()),
                g_pa: Some(l.section.shear_modulus()),
                h_m: Some(l.section.thickness()),
                ..LayerEntry::default()
            })
            .collect();
        let supports = model
            .supports()
            .iter()
            .map(|s| SupportEntry {
                layer: s.layer,
                node: Some(s.node),
                x_m: None,
                fix: s.components.clone(),
            })
            .collect();
        let mut loads: Vec<LoadEntry> = model
            .loads()
            .point_loads
            .iter()
            .map(|p| LoadEntry {
                layer: p.layer,
                x_m: Some(p.position),
                f_n: Some(p.magnitude),
                q_n_per_m: None,
            })
            .collect();
        loads.extend(model.loads().distributed.iter().map(|q| LoadEntry {
            layer: q.layer,
            x_m: None,
            f_n: None,
            q_n_per_m: Some(match &q.intensity {
                Intensity::Uniform(v) => IntensityEntry::Uniform(*v),
                Intensity::PerElement(v) => IntensityEntry::PerElement(v.clone()),
            }),
        }));
        let a = model.analysis();
        let tol = (a.tol_equilibrium == a.tol_compatibility).then_some(a.tol_equilibrium);
        ModelFile {
            layers,
            width_m: model.layers()[0].section.width(),
            length_m: model.length(),
            n_el: model.n_el(),
            supports,
            loads,
            analysis: Some(AnalysisEntry {
                kind: Some(a.kind),
                tol,
                max_iter: Some(a.max_iterations),
            }),
        }
    }
}

/// Reads, parses and validates a model file.
pub fn load_model_file(path: &Path) -> Result<BeamModel, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    ModelFile::parse(&text)?.to_model()
}
