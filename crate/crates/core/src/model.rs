//! Problem definition: layer stack, section properties, mesh, supports,
//! loads and analysis options.
//!
//! Units are SI throughout (m, N, Pa). Layers are numbered from the top:
//! layer 1 is the upper glass ply, layer 3 the lower one. `Z` and `w` point
//! downward, so a downward load is a positive `F_Z`.
//!
//! Indices in [`SupportSpec`], [`PointLoad`] and [`DistributedLoad`] are
//! 1-based to match that numbering; everything behind [`BeamModel`] is 0-based.

use serde::{Deserialize, Serialize};

use crate::error::ModelError;

/// Number of layers in a laminated glass beam.
pub const LAYER_COUNT: usize = 3;

/// Generalized section stiffnesses `(EA, G·A_s, EI)` seen by a beam element.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectionStiffness {
    pub axial: f64,
    pub shear: f64,
    pub bending: f64,
}

impl SectionStiffness {
    pub fn new(axial: f64, shear: f64, bending: f64) -> Self {
        Self {
            axial,
            shear,
            bending,
        }
    }
}

impl std::ops::Add for SectionStiffness {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self::new(
            self.axial + rhs.axial,
            self.shear + rhs.shear,
            self.bending + rhs.bending,
        )
    }
}

/// Rectangular cross-section of one layer with its elastic constants.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LayerSection {
    young_modulus: f64,
    shear_modulus: f64,
    width: f64,
    thickness: f64,
    area: f64,
    shear_area: f64,
    inertia: f64,
}

impl LayerSection {
    /// Builds the section and derives `A = b·h`, `A_s = 5/6·A`, `I = b·h³/12`.
    pub fn new(
        young_modulus: f64,
        shear_modulus: f64,
        width: f64,
        thickness: f64,
    ) -> Result<Self, ModelError> {
        positive("young_modulus", young_modulus)?;
        positive("shear_modulus", shear_modulus)?;
        positive("width", width)?;
        positive("thickness", thickness)?;
        let area = width * thickness;
        Ok(Self {
            young_modulus,
            shear_modulus,
            width,
            thickness,
            area,
            shear_area: 5.0 / 6.0 * area,
            inertia: width * thickness.powi(3) / 12.0,
        })
    }

    pub fn young_modulus(&self) -> f64 {
        self.young_modulus
    }

    pub fn shear_modulus(&self) -> f64 {
        self.shear_modulus
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn thickness(&self) -> f64 {
        self.thickness
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn shear_area(&self) -> f64 {
        self.shear_area
    }

    pub fn inertia(&self) -> f64 {
        self.inertia
    }

    pub fn stiffness(&self) -> SectionStiffness {
        SectionStiffness::new(
            self.young_modulus * self.area,
            self.shear_modulus * self.shear_area,
            self.young_modulus * self.inertia,
        )
    }
}

fn positive(field: &'static str, value: f64) -> Result<(), ModelError> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(ModelError::NonPositive { field, value })
    }
}

/// Placement of a layer's centerline in the undeformed configuration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LayerGeometry {
    pub origin_x: f64,
    pub origin_z: f64,
    pub length: f64,
}

/// Unvalidated layer input. A missing origin is filled in so that the stack
/// is contiguous with layer 1 centered at `Z = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct LayerSpec {
    pub section: LayerSection,
    pub length: f64,
    pub origin: Option<(f64, f64)>,
}

impl LayerSpec {
    pub fn new(section: LayerSection, length: f64) -> Self {
        Self {
            section,
            length,
            origin: None,
        }
    }
}

/// A validated layer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Layer {
    pub section: LayerSection,
    pub geometry: LayerGeometry,
}

/// Nodal degree of freedom of a layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    /// Axial displacement.
    U,
    /// Deflection, positive downward.
    W,
    /// Cross-section rotation.
    Phi,
}

impl Component {
    pub const ALL: [Component; 3] = [Component::U, Component::W, Component::Phi];

    /// Position of the component within a node's `(u, w, φ)` triple.
    pub fn offset(self) -> usize {
        match self {
            Component::U => 0,
            Component::W => 1,
            Component::Phi => 2,
        }
    }
}

/// Homogeneous support of selected components at one node of one layer.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportSpec {
    pub layer: usize,
    pub node: usize,
    pub components: Vec<Component>,
}

/// Concentrated transverse force `F_Z` (N) acting at abscissa `position` (m).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointLoad {
    pub layer: usize,
    pub position: f64,
    pub magnitude: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Intensity {
    Uniform(f64),
    PerElement(Vec<f64>),
}

/// Distributed transverse load `f_Z` (N/m), constant within each element.
#[derive(Clone, Debug, PartialEq)]
pub struct DistributedLoad {
    pub layer: usize,
    pub intensity: Intensity,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct LoadCase {
    pub point_loads: Vec<PointLoad>,
    pub distributed: Vec<DistributedLoad>,
}

impl LoadCase {
    pub fn point(layer: usize, position: f64, magnitude: f64) -> Self {
        Self {
            point_loads: vec![PointLoad {
                layer,
                position,
                magnitude,
            }],
            distributed: Vec::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnalysisKind {
    /// Finite-strain layered model solved by Newton iteration.
    Nonlinear,
    /// First Newton iterate with linearized strain measures.
    Linear,
    /// Single glass layer of the total laminate thickness.
    Monolithic,
    /// Outer glass plies acting independently.
    TwoLayer,
}

impl AnalysisKind {
    pub fn name(self) -> &'static str {
        match self {
            AnalysisKind::Nonlinear => "nonlinear",
            AnalysisKind::Linear => "linear",
            AnalysisKind::Monolithic => "monolithic",
            AnalysisKind::TwoLayer => "two_layer",
        }
    }
}

impl std::str::FromStr for AnalysisKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "nonlinear" => Ok(AnalysisKind::Nonlinear),
            "linear" => Ok(AnalysisKind::Linear),
            "monolithic" => Ok(AnalysisKind::Monolithic),
            "two_layer" => Ok(AnalysisKind::TwoLayer),
            other => Err(format!("unknown analysis kind `{other}`")),
        }
    }
}

impl std::fmt::Display for AnalysisKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    pub kind: AnalysisKind,
    pub tol_equilibrium: f64,
    pub tol_compatibility: f64,
    pub max_iterations: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            kind: AnalysisKind::Nonlinear,
            tol_equilibrium: 1e-6,
            tol_compatibility: 1e-6,
            max_iterations: 50,
        }
    }
}

impl AnalysisConfig {
    fn validate(&self) -> Result<(), ModelError> {
        if !(self.tol_equilibrium.is_finite() && self.tol_equilibrium > 0.0) {
            return Err(ModelError::Analysis("tol_equilibrium must be positive"));
        }
        if !(self.tol_compatibility.is_finite() && self.tol_compatibility > 0.0) {
            return Err(ModelError::Analysis("tol_compatibility must be positive"));
        }
        if self.max_iterations == 0 {
            return Err(ModelError::Analysis("max_iterations must be at least 1"));
        }
        Ok(())
    }
}

/// Unvalidated problem description; see [`BeamModelSpec::validate`].
#[derive(Clone, Debug, PartialEq)]
pub struct BeamModelSpec {
    pub layers: Vec<LayerSpec>,
    pub n_el: usize,
    pub supports: Vec<SupportSpec>,
    pub loads: LoadCase,
    pub analysis: AnalysisConfig,
}

/// Validated, immutable problem definition.
#[derive(Clone, Debug, PartialEq)]
pub struct BeamModel {
    layers: Vec<Layer>,
    n_el: usize,
    supports: Vec<SupportSpec>,
    loads: LoadCase,
    analysis: AnalysisConfig,
    nodes: Vec<f64>,
}

impl BeamModelSpec {
    pub fn validate(self) -> Result<BeamModel, ModelError> {
        if self.layers.len() != LAYER_COUNT {
            return Err(ModelError::LayerCount(self.layers.len()));
        }
        if self.n_el < 2 {
            return Err(ModelError::TooFewElements {
                min: 2,
                got: self.n_el,
            });
        }
        self.analysis.validate()?;

        let length = self.layers[0].length;
        positive("length", length)?;
        let mut layers: Vec<Layer> = Vec::with_capacity(LAYER_COUNT);
        for (i, spec) in self.layers.iter().enumerate() {
            if (spec.length - length).abs() > 1e-12 * length {
                return Err(ModelError::InconsistentLength {
                    layer: i + 1,
                    expected: length,
                    got: spec.length,
                });
            }
            let h = spec.section.thickness();
            let origin_z = match (layers.last(), spec.origin) {
                (Some(prev), Some((_, oz))) => {
                    let expected = prev.geometry.origin_z + 0.5 * (prev.section.thickness() + h);
                    if (oz - expected).abs() > 1e-9 * h.max(prev.section.thickness()) {
                        return Err(ModelError::NonContiguousStack {
                            layer: i + 1,
                            previous: i,
                            expected,
                            got: oz,
                        });
                    }
                    oz
                }
                (Some(prev), None) => prev.geometry.origin_z + 0.5 * (prev.section.thickness() + h),
                (None, origin) => origin.map_or(0.0, |o| o.1),
            };
            let origin_x = spec.origin.map_or(0.0, |o| o.0);
            layers.push(Layer {
                section: spec.section,
                geometry: LayerGeometry {
                    origin_x,
                    origin_z,
                    length,
                },
            });
        }

        let n_nodes = self.n_el + 1;
        let element_length = length / self.n_el as f64;
        for s in &self.supports {
            check_layer(s.layer)?;
            if s.node == 0 || s.node > n_nodes {
                return Err(ModelError::NodeIndex {
                    node: s.node,
                    count: n_nodes,
                });
            }
            if s.components.is_empty() {
                return Err(ModelError::EmptySupport {
                    layer: s.layer,
                    node: s.node,
                });
            }
        }
        for p in &self.loads.point_loads {
            check_layer(p.layer)?;
            node_at(p.position, length, element_length)?;
        }
        for q in &self.loads.distributed {
            check_layer(q.layer)?;
            if let Intensity::PerElement(v) = &q.intensity {
                if v.len() != self.n_el {
                    return Err(ModelError::DistributedLength {
                        layer: q.layer,
                        expected: self.n_el,
                        got: v.len(),
                    });
                }
            }
        }

        let nodes = (0..n_nodes).map(|j| j as f64 * element_length).collect();
        Ok(BeamModel {
            layers,
            n_el: self.n_el,
            supports: self.supports,
            loads: self.loads,
            analysis: self.analysis,
            nodes,
        })
    }
}

fn check_layer(layer: usize) -> Result<(), ModelError> {
    if layer == 0 || layer > LAYER_COUNT {
        Err(ModelError::LayerIndex {
            layer,
            count: LAYER_COUNT,
        })
    } else {
        Ok(())
    }
}

/// 0-based node index of abscissa `x` on a uniform mesh, if `x` is a node.
pub(crate) fn node_at(x: f64, length: f64, element_length: f64) -> Result<usize, ModelError> {
    let tol = 1e-9 * length;
    if !x.is_finite() || x < -tol || x > length + tol {
        return Err(ModelError::LoadOutsideBeam {
            position: x,
            length,
        });
    }
    let node = (x / element_length).round();
    if (node * element_length - x).abs() > tol {
        return Err(ModelError::LoadOffNode {
            position: x,
            element_length,
        });
    }
    Ok(node as usize)
}

impl BeamModel {
    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn n_el(&self) -> usize {
        self.n_el
    }

    pub fn n_nodes(&self) -> usize {
        self.n_el + 1
    }

    pub fn supports(&self) -> &[SupportSpec] {
        &self.supports
    }

    pub fn loads(&self) -> &LoadCase {
        &self.loads
    }

    pub fn analysis(&self) -> &AnalysisConfig {
        &self.analysis
    }

    pub fn length(&self) -> f64 {
        self.layers[0].geometry.length
    }

    pub fn element_length(&self) -> f64 {
        self.length() / self.n_el as f64
    }

    /// Undeformed nodal abscissae, shared by all layers.
    pub fn node_coordinates(&self) -> &[f64] {
        &self.nodes
    }

    /// `9·(n_el + 1)`.
    pub fn dof_count(&self) -> usize {
        3 * self.layers.len() * self.n_nodes()
    }

    /// `4·(n_el + 1)`.
    pub fn constraint_count(&self) -> usize {
        2 * (self.layers.len() - 1) * self.n_nodes()
    }

    pub fn min_thickness(&self) -> f64 {
        self.layers
            .iter()
            .map(|l| l.section.thickness())
            .fold(f64::INFINITY, f64::min)
    }

    /// 0-based node index at abscissa `x`, or `None` when `x` is not a node.
    pub fn node_index(&self, x: f64) -> Option<usize> {
        node_at(x, self.length(), self.element_length()).ok()
    }

    /// Same model with a different load case.
    pub fn with_loads(&self, loads: LoadCase) -> Result<BeamModel, ModelError> {
        let mut spec = self.to_spec();
        spec.loads = loads;
        spec.validate()
    }

    pub fn with_analysis(&self, analysis: AnalysisConfig) -> Result<BeamModel, ModelError> {
        analysis.validate()?;
        Ok(BeamModel {
            analysis,
            ..self.clone()
        })
    }

    pub fn to_spec(&self) -> BeamModelSpec {
        BeamModelSpec {
            layers: self
                .layers
                .iter()
                .map(|l| LayerSpec {
                    section: l.section,
                    length: l.geometry.length,
                    origin: Some((l.geometry.origin_x, l.geometry.origin_z)),
                })
                .collect(),
            n_el: self.n_el,
            supports: self.supports.clone(),
            loads: self.loads.clone(),
            analysis: self.analysis,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn glass(h: f64) -> LayerSection {
        LayerSection::new(64.5e9, 26.2e9, 0.1, h).unwrap()
    }

    fn spec(n_el: usize) -> BeamModelSpec {
        let pvb = LayerSection::new(3.61e6, 1.28e6, 0.1, 0.38e-3).unwrap();
        BeamModelSpec {
            layers: vec![
                LayerSpec::new(glass(5e-3), 1.0),
                LayerSpec::new(pvb, 1.0),
                LayerSpec::new(glass(5e-3), 1.0),
            ],
            n_el,
            supports: vec![SupportSpec {
                layer: 3,
                node: 5,
                components: vec![Component::U, Component::W],
            }],
            loads: LoadCase::point(1, 0.5, 50.0),
            analysis: AnalysisConfig::default(),
        }
    }

    #[test]
    fn glass_section_properties() {
        let s = glass(0.005);
        assert!((s.area() - 5.0e-4).abs() < 1e-18);
        assert!((s.shear_area() - 4.1667e-4).abs() < 1e-8);
        assert!((s.inertia() - 1.0417e-9).abs() < 1e-13);
        assert_eq!(s.shear_area() / s.area(), 5.0 / 6.0);
    }

    #[test]
    fn unit_section() {
        let s = LayerSection::new(1.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(s.area(), 1.0);
        assert_eq!(s.shear_area(), 5.0 / 6.0);
        assert_eq!(s.inertia(), 1.0 / 12.0);
    }

    #[test]
    fn pvb_section_properties() {
        let s = LayerSection::new(3.61e6, 1.28e6, 0.1, 0.00038).unwrap();
        assert!((s.area() - 3.8e-5).abs() < 1e-18);
        // 0.1 · 0.00038³ / 12
        assert!((s.inertia() - 4.5727e-13).abs() < 1e-17);
    }

    #[test]
    fn non_positive_input_names_field() {
        let err = LayerSection::new(64.5e9, 26.2e9, 0.0, 0.005).unwrap_err();
        assert_eq!(
            err,
            ModelError::NonPositive {
                field: "width",
                value: 0.0
            }
        );
        assert!(matches!(
            LayerSection::new(-1.0, 1.0, 1.0, 1.0),
            Err(ModelError::NonPositive {
                field: "young_modulus",
                ..
            })
        ));
        assert!(LayerSection::new(1.0, 1.0, 1.0, f64::NAN).is_err());
    }

    #[test]
    fn benchmark_counts() {
        let m = spec(40).validate().unwrap();
        assert_eq!(m.n_nodes() * 3, 123);
        assert_eq!(m.dof_count(), 369);
        assert_eq!(m.constraint_count(), 164);
        assert_eq!(m.node_coordinates().len(), 41);
        assert!((m.element_length() - 0.025).abs() < 1e-15);
    }

    #[test]
    fn origins_are_stacked() {
        let m = spec(4).validate().unwrap();
        let z: Vec<f64> = m.layers().iter().map(|l| l.geometry.origin_z).collect();
        assert_eq!(z[0], 0.0);
        assert!((z[1] - 0.5 * (5e-3 + 0.38e-3)).abs() < 1e-15);
        assert!((z[2] - z[1] - 0.5 * (0.38e-3 + 5e-3)).abs() < 1e-15);
    }

    #[test]
    fn rejects_wrong_layer_count() {
        let mut s = spec(40);
        s.layers.pop();
        let err = s.validate().unwrap_err();
        assert_eq!(err, ModelError::LayerCount(2));
        assert!(err.to_string().contains("exactly three layers"));
    }

    #[test]
    fn rejects_off_node_load() {
        let mut s = spec(40);
        s.loads = LoadCase::point(1, 0.41, 50.0);
        let err = s.validate().unwrap_err();
        assert!(matches!(err, ModelError::LoadOffNode { .. }));
        assert!(err.to_string().contains("load not on a node"));
    }

    #[test]
    fn rejects_inconsistent_lengths_and_gaps() {
        let mut s = spec(10);
        s.layers[2].length = 1.1;
        assert!(matches!(
            s.validate(),
            Err(ModelError::InconsistentLength { layer: 3, .. })
        ));

        let mut s = spec(10);
        s.layers[0].origin = Some((0.0, 0.0));
        s.layers[1].origin = Some((0.0, 0.01));
        assert!(matches!(
            s.validate(),
            Err(ModelError::NonContiguousStack { layer: 2, .. })
        ));
    }

    #[test]
    fn rejects_bad_supports_and_settings() {
        let mut s = spec(10);
        s.supports[0].node = 12;
        assert!(matches!(s.validate(), Err(ModelError::NodeIndex { .. })));

        let mut s = spec(10);
        s.supports[0].components.clear();
        assert!(matches!(s.validate(), Err(ModelError::EmptySupport { .. })));

        let mut s = spec(10);
        s.analysis.max_iterations = 0;
        assert!(matches!(s.validate(), Err(ModelError::Analysis(_))));

        let mut s = spec(1);
        s.n_el = 1;
        assert!(matches!(
            s.validate(),
            Err(ModelError::TooFewElements { .. })
        ));
    }

    #[test]
    fn kind_parsing() {
        assert_eq!(
            "two-layer".parse::<AnalysisKind>(),
            Ok(AnalysisKind::TwoLayer)
        );
        assert_eq!(
            "Nonlinear".parse::<AnalysisKind>(),
            Ok(AnalysisKind::Nonlinear)
        );
        assert!("quadratic".parse::<AnalysisKind>().is_err());
    }

    #[test]
    fn section_scaling_identity() {
        for &(b, h) in &[(0.1, 0.005), (0.05, 0.00212), (1.3, 0.7)] {
            let s = LayerSection::new(1.0, 1.0, b, h).unwrap();
            assert!((s.inertia() * 12.0 / b - h.powi(3)).abs() <= 1e-15 * h.powi(3));
        }
    }
}
