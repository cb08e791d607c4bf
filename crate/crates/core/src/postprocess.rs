//! Stress recovery on the mesh nodes, the equivalent monolithic and
//! two-layer reference beams, and comparison against reference values.

use crate::assembly::{properties, Discretization, LayerProperties};
use crate::error::{PostprocessError, SolverError};
use crate::kinematics::{
    recover_stresses, strain_linear, strain_nonlinear, ElementDofs, StressTriple,
};
use crate::model::{AnalysisKind, BeamModel, LayerSection};
use crate::solver::{
    linear_solve_discretization, newton_solve_discretization, Solution, SolveOptions,
};

/// Which strain measures feed the stress recovery.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrainMeasure {
    Finite,
    Linearized,
}

impl From<AnalysisKind> for StrainMeasure {
    fn from(kind: AnalysisKind) -> Self {
        match kind {
            AnalysisKind::Nonlinear => StrainMeasure::Finite,
            _ => StrainMeasure::Linearized,
        }
    }
}

/// Nodal values of one layer. Stresses are least-squares extrapolations
/// of the element-constant values.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LayerField {
    pub axial: Vec<f64>,
    pub deflection: Vec<f64>,
    pub rotation: Vec<f64>,
    pub stress_top: Vec<f64>,
    pub stress_bottom: Vec<f64>,
    pub shear: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NodalField {
    pub x: Vec<f64>,
    /// Top to bottom.
    pub layers: Vec<LayerField>,
}

impl NodalField {
    pub fn bottom(&self) -> &LayerField {
        self.layers.last().expect("a field has at least one layer")
    }

    pub fn top(&self) -> &LayerField {
        &self.layers[0]
    }

    /// Linear interpolation of a nodal array at abscissa `x`.
    pub fn interpolate(&self, values: &[f64], x: f64) -> f64 {
        let n_el = self.x.len() - 1;
        let h = self.x[n_el] / n_el as f64;
        let e = ((x / h).floor().max(0.0) as usize).min(n_el - 1);
        let t = (x - self.x[e]) / h;
        (1.0 - t) * values[e] + t * values[e + 1]
    }

    pub fn length(&self) -> f64 {
        *self.x.last().expect("non-empty mesh")
    }

    /// Bottom-layer deflection at `X = L/2`.
    pub fn mid_span_deflection(&self) -> f64 {
        self.interpolate(&self.bottom().deflection, 0.5 * self.length())
    }

    /// Bottom-fiber stress of the bottom layer at `X = L/2`.
    pub fn mid_span_bottom_stress(&self) -> f64 {
        self.interpolate(&self.bottom().stress_bottom, 0.5 * self.length())
    }
}

/// Global L2 projection of element-constant values onto continuous
/// piecewise-linear nodal values on a uniform mesh.
pub fn extrapolate_to_nodes(element_values: &[f64], element_length: f64) -> Vec<f64> {
    let n_el = element_values.len();
    let n = n_el + 1;
    // tridiagonal mass matrix (L/6)·[[2, 1], [1, 2]] per element
    let off = element_length / 6.0;
    let mut diag = vec![0.0; n];
    let mut rhs = vec![0.0; n];
    for (e, &s) in element_values.iter().enumerate() {
        diag[e] += 2.0 * off;
        diag[e + 1] += 2.0 * off;
        rhs[e] += 0.5 * s * element_length;
        rhs[e + 1] += 0.5 * s * element_length;
    }
    // Thomas algorithm; the matrix is diagonally dominant
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = off / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let m = diag[i] - off * c[i - 1];
        c[i] = off / m;
        d[i] = (rhs[i] - off * d[i - 1]) / m;
    }
    let mut x = d;
    for i in (0..n - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    x
}

pub fn element_stresses(
    section: &LayerSection,
    elements: &[ElementDofs],
    measure: StrainMeasure,
) -> Vec<StressTriple> {
    elements
        .iter()
        .map(|dofs| {
            let strain = match measure {
                StrainMeasure::Finite => strain_nonlinear(dofs),
                StrainMeasure::Linearized => strain_linear(dofs),
            };
            recover_stresses(section, &strain)
        })
        .collect()
}

/// Nodal displacements and extrapolated stresses of every layer.
/// `sections` gives the stress-recovery section of each layer of `disc`.
pub fn nodal_field(
    sections: &[LayerSection],
    disc: &Discretization,
    displacements: &[f64],
    measure: StrainMeasure,
) -> NodalField {
    let l = disc.element_length();
    let x = (0..disc.n_nodes()).map(|j| j as f64 * l).collect();
    let layers = sections
        .iter()
        .enumerate()
        .map(|(layer, section)| {
            let nodal = disc.nodal_values(displacements, layer);
            let elements: Vec<ElementDofs> = (0..disc.n_el())
                .map(|e| disc.element_dofs(displacements, layer, e))
                .collect();
            let s = element_stresses(section, &elements, measure);
            let project = |f: fn(&StressTriple) -> f64| {
                extrapolate_to_nodes(&s.iter().map(f).collect::<Vec<_>>(), l)
            };
            LayerField {
                axial: nodal.iter().map(|v| v[0]).collect(),
                deflection: nodal.iter().map(|v| v[1]).collect(),
                rotation: nodal.iter().map(|v| v[2]).collect(),
                stress_top: project(|t| t.top),
                stress_bottom: project(|t| t.bottom),
                shear: project(|t| t.shear),
            }
        })
        .collect();
    NodalField { x, layers }
}

/// Outcome of one analysis kind.
#[derive(Clone, Debug, PartialEq)]
pub struct Response {
    pub kind: AnalysisKind,
    pub field: NodalField,
    pub solution: Solution,
}

impl Response {
    pub fn mid_span_deflection(&self) -> f64 {
        self.field.mid_span_deflection()
    }

    pub fn mid_span_bottom_stress(&self) -> f64 {
        self.field.mid_span_bottom_stress()
    }

    pub fn iterations(&self) -> usize {
        self.solution.iterations()
    }
}

/// Runs the analysis selected in the model's settings.
pub fn analyze(model: &BeamModel) -> Result<Response, SolverError> {
    let kind = model.analysis().kind;
    match kind {
        AnalysisKind::Nonlinear | AnalysisKind::Linear => {
            let disc = Discretization::from_model(model);
            let options: SolveOptions = (*model.analysis()).into();
            let solution = if kind == AnalysisKind::Nonlinear {
                newton_solve_discretization(&disc, options)?
            } else {
                linear_solve_discretization(&disc, options)?
            };
            let sections: Vec<LayerSection> = model.layers().iter().map(|l| l.section).collect();
            let field = nodal_field(&sections, &disc, &solution.state.displacements, kind.into());
            Ok(Response {
                kind,
                field,
                solution,
            })
        }
        AnalysisKind::Monolithic => equivalent_monolithic(model),
        AnalysisKind::TwoLayer => equivalent_two_layer(model),
    }
}

/// Single glass beam of the total laminate thickness, linear kinematics.
pub fn equivalent_monolithic(model: &BeamModel) -> Result<Response, SolverError> {
    let glass = model.layers()[0].section;
    let total: f64 = model.layers().iter().map(|l| l.section.thickness()).sum();
    let section = LayerSection::new(
        glass.young_modulus(),
        glass.shear_modulus(),
        glass.width(),
        total,
    )
    .expect("section of a validated model");
    single_layer_response(
        model,
        AnalysisKind::Monolithic,
        properties(&section),
        section,
    )
}

/// The two glass plies bending independently with a shared deflection.
/// Stresses are reported for the bottom ply.
pub fn equivalent_two_layer(model: &BeamModel) -> Result<Response, SolverError> {
    let layers = model.layers();
    let (top, bottom) = (layers[0].section, layers[layers.len() - 1].section);
    let props = LayerProperties {
        stiffness: top.stiffness() + bottom.stiffness(),
        thickness: top.thickness() + bottom.thickness(),
    };
    single_layer_response(model, AnalysisKind::TwoLayer, props, bottom)
}

fn single_layer_response(
    model: &BeamModel,
    kind: AnalysisKind,
    props: LayerProperties,
    stress_section: LayerSection,
) -> Result<Response, SolverError> {
    let disc = Discretization::single_layer(model, props);
    let solution = linear_solve_discretization(&disc, (*model.analysis()).into())?;
    let field = nodal_field(
        &[stress_section],
        &disc,
        &solution.state.displacements,
        StrainMeasure::Linearized,
    );
    Ok(Response {
        kind,
        field,
        solution,
    })
}

/// `(computed − reference) / reference`.
pub fn relative_error(computed: f64, reference: f64) -> Result<f64, PostprocessError> {
    if reference == 0.0 {
        Err(PostprocessError::ZeroReference)
    } else {
        Ok((computed - reference) / reference)
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct ReferenceComparison {
    pub quantity: String,
    pub computed: f64,
    pub reference: f64,
    pub relative_error: f64,
}

impl ReferenceComparison {
    pub fn new(
        quantity: impl Into<String>,
        computed: f64,
        reference: f64,
    ) -> Result<Self, PostprocessError> {
        Ok(Self {
            quantity: quantity.into(),
            computed,
            reference,
            relative_error: relative_error(computed, reference)?,
        })
    }

    pub fn percent(&self) -> f64 {
        100.0 * self.relative_error
    }
}
