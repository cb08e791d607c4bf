//! The two benchmark setups with their published reference values.
//!
//! Glass: `E = 64.5 GPa`, `G = 26.2 GPa`. The point load acts on the top
//! layer at mid-span.

use crate::error::ModelError;
use crate::model::{
    AnalysisConfig, AnalysisKind, BeamModel, BeamModelSpec, Component, LayerSection, LayerSpec,
    LoadCase, SupportSpec,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    /// 1 m beam on supports at `X = 0.1` and `0.9 m`, plies 5/0.38/5 mm.
    SimplySupported,
    /// 1.5 m beam clamped at both ends, plies 2.12/0.76/2.12 mm.
    FixedEnd,
}

impl Preset {
    pub const ALL: [Preset; 2] = [Preset::SimplySupported, Preset::FixedEnd];

    pub fn name(self) -> &'static str {
        match self {
            Preset::SimplySupported => "simply-supported",
            Preset::FixedEnd => "fixed-end",
        }
    }

    pub fn default_n_el(self) -> usize {
        match self {
            Preset::SimplySupported => 40,
            Preset::FixedEnd => 150,
        }
    }

    pub fn reference(self) -> &'static ReferenceData {
        match self {
            Preset::SimplySupported => &SIMPLY_SUPPORTED,
            Preset::FixedEnd => &FIXED_END,
        }
    }

    /// Benchmark model at the default mesh.
    pub fn model(self, load: f64) -> Result<BeamModel, ModelError> {
        self.model_with(load, self.default_n_el(), AnalysisConfig::default())
    }

    pub fn model_with(
        self,
        load: f64,
        n_el: usize,
        analysis: AnalysisConfig,
    ) -> Result<BeamModel, ModelError> {
        match self {
            Preset::SimplySupported => simply_supported(load, n_el, analysis),
            Preset::FixedEnd => fixed_end(load, n_el, analysis),
        }
    }
}

impl std::str::FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "simply-supported" => Ok(Preset::SimplySupported),
            "fixed-end" => Ok(Preset::FixedEnd),
            other => Err(format!(
                "unknown preset `{other}` (expected simply-supported or fixed-end)"
            )),
        }
    }
}

impl std::fmt::Display for Preset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

const GLASS_E: f64 = 64.5e9;
const GLASS_G: f64 = 26.2e9;

fn stack(
    width: f64,
    glass_h: f64,
    pvb: (f64, f64, f64),
    length: f64,
) -> Result<Vec<LayerSpec>, ModelError> {
    let glass = LayerSection::new(GLASS_E, GLASS_G, width, glass_h)?;
    let interlayer = LayerSection::new(pvb.0, pvb.1, width, pvb.2)?;
    Ok(vec![
        LayerSpec::new(glass, length),
        LayerSpec::new(interlayer, length),
        LayerSpec::new(glass, length),
    ])
}

fn node_of(x: f64, length: f64, n_el: usize) -> Result<usize, ModelError> {
    let le = length / n_el as f64;
    crate::model::node_at(x, length, le)
        .map(|j| j + 1)
        .map_err(|_| ModelError::SupportOffNode {
            position: x,
            element_length: le,
        })
}

/// Reactions on the bottom ply: `w` at both supports, `u` at the left one.
pub fn simply_supported(
    load: f64,
    n_el: usize,
    analysis: AnalysisConfig,
) -> Result<BeamModel, ModelError> {
    let length = 1.0;
    let layers = stack(0.1, 5e-3, (3.61e6, 1.28e6, 0.38e-3), length)?;
    let left = node_of(0.1, length, n_el)?;
    let right = node_of(0.9, length, n_el)?;
    BeamModelSpec {
        layers,
        n_el,
        supports: vec![
            SupportSpec {
                layer: 3,
                node: left,
                components: vec![Component::U, Component::W],
            },
            SupportSpec {
                layer: 3,
                node: right,
                components: vec![Component::W],
            },
        ],
        loads: LoadCase::point(1, 0.5 * length, load),
        analysis,
    }
    .validate()
}

/// `u = w = φ = 0` on every layer at both end nodes.
pub fn fixed_end(
    load: f64,
    n_el: usize,
    analysis: AnalysisConfig,
) -> Result<BeamModel, ModelError> {
    let length = 1.5;
    let layers = stack(0.05, 2.12e-3, (2.8e6, 1.0e6, 0.76e-3), length)?;
    let supports = (1..=3)
        .flat_map(|layer| {
            [1, n_el + 1].map(|node| SupportSpec {
                layer,
                node,
                components: Component::ALL.to_vec(),
            })
        })
        .collect();
    BeamModelSpec {
        layers,
        n_el,
        supports,
        loads: LoadCase::point(1, 0.5 * length, load),
        analysis,
    }
    .validate()
}

/// A column of reference values, one per tabulated load.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReferenceColumn {
    pub label: &'static str,
    pub values: &'static [f64],
}

/// Published values for one benchmark. Deflections are in mm, stresses
/// in MPa, both at mid-span of the bottom layer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReferenceData {
    pub loads: &'static [f64],
    /// External reference data (experiment, analytical or 2D model).
    pub deflection: &'static [ReferenceColumn],
    pub stress: &'static [ReferenceColumn],
    pub linear_deflection: &'static [f64],
    pub nonlinear_deflection: &'static [f64],
    pub linear_stress: &'static [f64],
    pub nonlinear_stress: &'static [f64],
    /// `(load, value)` for the equivalent beams.
    pub monolithic_deflection: (f64, f64),
    pub two_layer_deflection: (f64, f64),
    /// `(load, [(η₁, η₂)])` per Newton iteration.
    pub convergence: Option<(f64, &'static [(f64, f64)])>,
}

impl ReferenceData {
    fn position(&self, load: f64) -> Option<usize> {
        self.loads.iter().position(|&f| f == load)
    }

    /// Published deflection of the given model at `load`, in mm.
    pub fn deflection_of(&self, kind: AnalysisKind, load: f64) -> Option<f64> {
        match kind {
            AnalysisKind::Linear => self.position(load).map(|k| self.linear_deflection[k]),
            AnalysisKind::Nonlinear => self.position(load).map(|k| self.nonlinear_deflection[k]),
            AnalysisKind::Monolithic => at(self.monolithic_deflection, load),
            AnalysisKind::TwoLayer => at(self.two_layer_deflection, load),
        }
    }

    /// Published bottom-fiber stress of the given model at `load`, in MPa.
    pub fn stress_of(&self, kind: AnalysisKind, load: f64) -> Option<f64> {
        match kind {
            AnalysisKind::Linear => self.position(load).map(|k| self.linear_stress[k]),
            AnalysisKind::Nonlinear => self.position(load).map(|k| self.nonlinear_stress[k]),
            _ => None,
        }
    }

    /// External reference deflections at `load` as `(label, mm)`.
    pub fn reference_deflections(&self, load: f64) -> Vec<(&'static str, f64)> {
        self.columns(self.deflection, load)
    }

    pub fn reference_stresses(&self, load: f64) -> Vec<(&'static str, f64)> {
        self.columns(self.stress, load)
    }

    fn columns(&self, cols: &[ReferenceColumn], load: f64) -> Vec<(&'static str, f64)> {
        match self.position(load) {
            Some(k) => cols.iter().map(|c| (c.label, c.values[k])).collect(),
            None => Vec::new(),
        }
    }
}

fn at(pair: (f64, f64), load: f64) -> Option<f64> {
    (pair.0 == load).then_some(pair.1)
}

static SIMPLY_SUPPORTED: ReferenceData = ReferenceData {
    loads: &[50.0, 100.0, 150.0, 200.0],
    deflection: &[
        ReferenceColumn {
            label: "exp",
            values: &[1.27, 2.55, 4.12, 5.57],
        },
        ReferenceColumn {
            label: "an",
            values: &[1.34, 2.69, 4.03, 5.38],
        },
    ],
    stress: &[
        ReferenceColumn {
            label: "exp",
            values: &[9.55, 12.34, 21.89, 26.27],
        },
        ReferenceColumn {
            label: "an",
            values: &[7.23, 14.45, 21.68, 28.90],
        },
    ],
    linear_deflection: &[1.34, 2.68, 4.02, 5.37],
    nonlinear_deflection: &[1.34, 2.68, 4.02, 5.35],
    linear_stress: &[7.14, 14.27, 21.41, 28.55],
    nonlinear_stress: &[7.14, 14.28, 21.42, 28.55],
    monolithic_deflection: (50.0, 0.89),
    two_layer_deflection: (50.0, 3.97),
    convergence: None,
};

static FIXED_END: ReferenceData = ReferenceData {
    loads: &[15.0, 30.0, 45.0, 60.0, 90.0, 120.0, 150.0],
    deflection: &[
        ReferenceColumn {
            label: "an",
            values: &[5.92, 8.10, 9.60, 10.78, 12.64, 14.10, 15.34],
        },
        ReferenceColumn {
            label: "num",
            values: &[5.92, 8.10, 9.60, 10.78, 12.63, 14.09, 15.32],
        },
    ],
    stress: &[
        ReferenceColumn {
            label: "an",
            values: &[12.87, 20.69, 27.13, 32.82, 42.82, 51.68, 59.76],
        },
        ReferenceColumn {
            label: "num",
            values: &[12.46, 19.89, 25.94, 31.25, 40.51, 48.64, 56.00],
        },
    ],
    linear_deflection: &[14.44, 28.88, 43.32, 57.76, 86.65, 115.53, 144.41],
    nonlinear_deflection: &[6.00, 8.17, 9.66, 10.83, 12.68, 14.14, 15.36],
    linear_stress: &[19.51, 39.02, 58.53, 78.03, 117.05, 156.07, 195.09],
    nonlinear_stress: &[12.60, 20.12, 26.28, 31.69, 41.18, 49.53, 57.13],
    monolithic_deflection: (15.0, 7.85),
    two_layer_deflection: (15.0, 51.48),
    convergence: Some((
        150.0,
        &[
            (8.49e2, 7.94e-1),
            (1.50e3, 4.65e-1),
            (1.02e2, 6.12e-2),
            (2.07e2, 5.61e-2),
            (2.31e1, 1.11e-2),
            (2.43e1, 7.53e-3),
            (4.93e0, 2.58e-3),
            (1.41e0, 8.17e-4),
            (1.38e-1, 8.23e-5),
            (1.58e-3, 8.33e-7),
            (2.53e-7, 1.18e-10),
        ],
    )),
};
