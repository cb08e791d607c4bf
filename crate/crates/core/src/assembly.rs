//! Global numbering, assembly of the tangent, constraint Jacobian and
//! residual vectors, and elimination of supported DOFs.
//!
//! DOFs are numbered layer-major: `3·n_nodes·layer + 3·node + component`,
//! so the material tangent is block diagonal per layer and only the
//! constraint terms couple layers.

use crate::constraints::{
    constraint_hessian_diagonal, constraint_jacobian_block, constraint_values, InterfacePair,
    MultiplierVector,
};
use crate::element::{
    external_force, internal_energy, internal_force, tangent_stiffness, ElementLoad,
};
use crate::error::SolverError;
use crate::kinematics::ElementDofs;
use crate::model::{BeamModel, Component, Intensity, LayerSection, SectionStiffness, SupportSpec};
use crate::solver::SystemState;
use crate::sparse::{CooMatrix, CsrMatrix};

/// Maps `(layer, node, component)` to global indices and tracks supports.
#[derive(Clone, Debug, PartialEq)]
pub struct DofMap {
    n_layers: usize,
    n_nodes: usize,
    fixed: Vec<bool>,
    free: Vec<usize>,
    free_index: Vec<Option<usize>>,
}

impl DofMap {
    /// `supports` use 1-based layer and node numbers.
    pub fn new(n_layers: usize, n_nodes: usize, supports: &[SupportSpec]) -> Self {
        let total = 3 * n_layers * n_nodes;
        let mut fixed = vec![false; total];
        for s in supports {
            for &c in &s.components {
                fixed[3 * n_nodes * (s.layer - 1) + 3 * (s.node - 1) + c.offset()] = true;
            }
        }
        let free: Vec<usize> = (0..total).filter(|&i| !fixed[i]).collect();
        let mut free_index = vec![None; total];
        for (k, &i) in free.iter().enumerate() {
            free_index[i] = Some(k);
        }
        Self {
            n_layers,
            n_nodes,
            fixed,
            free,
            free_index,
        }
    }

    /// 0-based layer and node.
    pub fn index(&self, layer: usize, node: usize, component: Component) -> usize {
        3 * self.n_nodes * layer + 3 * node + component.offset()
    }

    pub fn n_layers(&self) -> usize {
        self.n_layers
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn total(&self) -> usize {
        self.fixed.len()
    }

    pub fn free(&self) -> &[usize] {
        &self.free
    }

    pub fn fixed(&self) -> Vec<usize> {
        (0..self.total()).filter(|&i| self.fixed[i]).collect()
    }

    pub fn is_fixed(&self, i: usize) -> bool {
        self.fixed[i]
    }

    pub fn free_index(&self, i: usize) -> Option<usize> {
        self.free_index[i]
    }

    pub fn node_of(&self, i: usize) -> usize {
        (i % (3 * self.n_nodes)) / 3
    }

    pub fn constraint_count(&self) -> usize {
        2 * self.n_layers.saturating_sub(1) * self.n_nodes
    }
}

/// Everything the assembler needs about one layer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LayerProperties {
    pub stiffness: SectionStiffness,
    pub thickness: f64,
}

/// A stack of tied layers on a shared uniform mesh with its loads.
///
/// Built from a [`BeamModel`] for the laminated analyses, or as a single
/// layer for the equivalent reference beams.
#[derive(Clone, Debug, PartialEq)]
pub struct Discretization {
    layers: Vec<LayerProperties>,
    n_el: usize,
    element_length: f64,
    dofs: DofMap,
    distributed: Vec<Vec<f64>>,
    external: Vec<f64>,
}

impl Discretization {
    pub fn from_model(model: &BeamModel) -> Self {
        let layers = model
            .layers()
            .iter()
            .map(|l| LayerProperties {
                stiffness: l.section.stiffness(),
                thickness: l.section.thickness(),
            })
            .collect();
        Self::build(model, layers, model.supports().to_vec(), None)
    }

    /// One layer carrying every support and load of `model`.
    pub(crate) fn single_layer(model: &BeamModel, layer: LayerProperties) -> Self {
        let mut merged: Vec<SupportSpec> = Vec::new();
        for s in model.supports() {
            match merged.iter_mut().find(|m| m.node == s.node) {
                Some(m) => {
                    for &c in &s.components {
                        if !m.components.contains(&c) {
                            m.components.push(c);
                        }
                    }
                }
                None => merged.push(SupportSpec {
                    layer: 1,
                    node: s.node,
                    components: s.components.clone(),
                }),
            }
        }
        Self::build(model, vec![layer], merged, Some(0))
    }

    /// Unloaded stack of `n_el` equal elements over `length`; `supports`
    /// use 1-based layer and node numbers.
    pub fn new(
        layers: Vec<LayerProperties>,
        n_el: usize,
        length: f64,
        supports: &[SupportSpec],
    ) -> Self {
        let dofs = DofMap::new(layers.len(), n_el + 1, supports);
        Self {
            distributed: vec![vec![0.0; n_el]; layers.len()],
            external: vec![0.0; dofs.total()],
            layers,
            n_el,
            element_length: length / n_el as f64,
            dofs,
        }
    }

    /// Adds a transverse force at a node (0-based layer and node).
    pub fn add_nodal_force(&mut self, layer: usize, node: usize, magnitude: f64) {
        let i = self.dofs.index(layer, node, Component::W);
        self.external[i] += magnitude;
    }

    /// Adds an element-constant transverse intensity on one layer.
    pub fn add_distributed(&mut self, layer: usize, intensity: &[f64]) {
        for (e, &q) in intensity.iter().enumerate() {
            self.distributed[layer][e] += q;
            if q == 0.0 {
                continue;
            }
            let load = ElementLoad {
                distributed: q,
                point: [0.0; 2],
            };
            let f = external_force(&load, self.element_length).0;
            let base = self.dofs.index(layer, e, Component::U);
            for (k, v) in f.iter().enumerate() {
                self.external[base + k] += v;
            }
        }
    }

    fn build(
        model: &BeamModel,
        layers: Vec<LayerProperties>,
        supports: Vec<SupportSpec>,
        target_layer: Option<usize>,
    ) -> Self {
        let mut disc = Self::new(layers, model.n_el(), model.length(), &supports);
        let on = |layer: usize| target_layer.unwrap_or(layer - 1);
        for q in &model.loads().distributed {
            let values = match &q.intensity {
                Intensity::Uniform(v) => vec![*v; model.n_el()],
                Intensity::PerElement(v) => v.clone(),
            };
            disc.add_distributed(on(q.layer), &values);
        }
        for p in &model.loads().point_loads {
            let node = model
                .node_index(p.position)
                .expect("point load position validated as a node");
            disc.add_nodal_force(on(p.layer), node, p.magnitude);
        }
        disc
    }

    pub fn layers(&self) -> &[LayerProperties] {
        &self.layers
    }

    pub fn n_el(&self) -> usize {
        self.n_el
    }

    pub fn n_nodes(&self) -> usize {
        self.n_el + 1
    }

    pub fn element_length(&self) -> f64 {
        self.element_length
    }

    pub fn dofs(&self) -> &DofMap {
        &self.dofs
    }

    /// Element-constant distributed intensities per layer.
    pub fn distributed(&self) -> &[Vec<f64>] {
        &self.distributed
    }

    /// Global external force vector over all DOFs.
    pub fn external_force(&self) -> &[f64] {
        &self.external
    }

    pub fn min_thickness(&self) -> f64 {
        self.layers
            .iter()
            .map(|l| l.thickness)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn element_dofs(&self, displacements: &[f64], layer: usize, element: usize) -> ElementDofs {
        let base = self.dofs.index(layer, element, Component::U);
        let mut v = [0.0; 6];
        v.copy_from_slice(&displacements[base..base + 6]);
        ElementDofs::new(v, self.element_length)
    }

    /// `(u, w, φ)` of every node of one layer.
    pub fn nodal_values(&self, displacements: &[f64], layer: usize) -> Vec<[f64; 3]> {
        (0..self.n_nodes())
            .map(|j| {
                let base = self.dofs.index(layer, j, Component::U);
                [
                    displacements[base],
                    displacements[base + 1],
                    displacements[base + 2],
                ]
            })
            .collect()
    }

    /// Total strain energy of the stack.
    pub fn energy(&self, displacements: &[f64]) -> f64 {
        let mut total = 0.0;
        for (layer, props) in self.layers.iter().enumerate() {
            for e in 0..self.n_el {
                total += internal_energy(
                    &props.stiffness,
                    &self.element_dofs(displacements, layer, e),
                );
            }
        }
        total
    }

    fn check_state(&self, state: &SystemState) -> Result<(), SolverError> {
        if state.displacements.len() != self.dofs.total() {
            return Err(SolverError::DimensionMismatch {
                what: "displacement vector",
                expected: self.dofs.total(),
                got: state.displacements.len(),
            });
        }
        if state.multipliers.len() != self.dofs.constraint_count() {
            return Err(SolverError::DimensionMismatch {
                what: "multiplier vector",
                expected: self.dofs.constraint_count(),
                got: state.multipliers.len(),
            });
        }
        Ok(())
    }

    /// Assembles over all DOFs, supported ones included.
    pub fn assemble_full(&self, state: &SystemState) -> Result<GlobalSystem, SolverError> {
        self.check_state(state)?;
        let n = self.dofs.total();
        let n_nodes = self.n_nodes();
        let m = self.dofs.constraint_count();
        let d = &state.displacements;

        let mut k = CooMatrix::with_capacity(n, n, 36 * self.layers.len() * self.n_el + 2 * m);
        let mut r: Vec<f64> = self.external.iter().map(|f| -f).collect();
        for (layer, props) in self.layers.iter().enumerate() {
            for e in 0..self.n_el {
                let dofs = self.element_dofs(d, layer, e);
                let base = self.dofs.index(layer, e, Component::U);
                let f = internal_force(&props.stiffness, &dofs).0;
                let kt = tangent_stiffness(&props.stiffness, &dofs).0;
                for (a, row) in kt.iter().enumerate() {
                    r[base + a] += f[a];
                    for (b, &v) in row.iter().enumerate() {
                        k.push(base + a, base + b, v);
                    }
                }
            }
        }

        let mut c_mat = CooMatrix::with_capacity(m, n, 6 * m);
        let mut gaps = vec![0.0; m];
        for iface in 0..self.layers.len().saturating_sub(1) {
            let h = InterfacePair {
                upper: self.layers[iface].thickness,
                lower: self.layers[iface + 1].thickness,
            };
            for j in 0..n_nodes {
                let up = self.dofs.index(iface, j, Component::U);
                let lo = self.dofs.index(iface + 1, j, Component::U);
                let upper = [d[up], d[up + 1], d[up + 2]];
                let lower = [d[lo], d[lo + 1], d[lo + 2]];
                let row =
                    MultiplierVector::index(n_nodes, iface, j, crate::constraints::Direction::X);
                let c = constraint_values(upper, lower, h);
                gaps[row] = c.c_x;
                gaps[row + 1] = c.c_z;

                let jac = constraint_jacobian_block(upper[2], lower[2], h);
                let cols = [up, up + 1, up + 2, lo, lo + 1, lo + 2];
                for (dir, jrow) in jac.iter().enumerate() {
                    for (&col, &v) in cols.iter().zip(jrow) {
                        if v != 0.0 {
                            c_mat.push(row + dir, col, v);
                        }
                    }
                }

                let lambda = state.multipliers.pair(iface, j);
                let [ka, kb] = constraint_hessian_diagonal(lambda, upper[2], lower[2], h);
                k.push(up + 2, up + 2, ka);
                k.push(lo + 2, lo + 2, kb);
            }
        }

        let primal_keys = (0..n).map(|i| self.dofs.node_of(i)).collect();
        let dual_keys = (0..m).map(|row| (row / 2) % n_nodes).collect();
        Ok(GlobalSystem {
            stiffness: k.to_csr(),
            jacobian: c_mat.to_csr(),
            force_residual: r,
            gaps,
            external_norm: norm(&self.external),
            min_thickness: self.min_thickness(),
            primal_keys,
            dual_keys,
        })
    }

    /// Assembles and deletes the rows and columns of supported DOFs.
    pub fn assemble(&self, state: &SystemState) -> Result<GlobalSystem, SolverError> {
        Ok(apply_dirichlet(&self.assemble_full(state)?, &self.dofs))
    }
}

/// Linearized KKT data at one state.
#[derive(Clone, Debug, PartialEq)]
pub struct GlobalSystem {
    /// `K_t + K_λ`.
    pub stiffness: CsrMatrix,
    /// Constraint Jacobian `C`.
    pub jacobian: CsrMatrix,
    /// `f_int − f_ext`.
    pub force_residual: Vec<f64>,
    /// Constraint values `c`.
    pub gaps: Vec<f64>,
    /// `‖f_ext‖₂` over all DOFs.
    pub external_norm: f64,
    pub min_thickness: f64,
    /// Mesh node of every column of `K`, used to order the factorization.
    pub primal_keys: Vec<usize>,
    /// Mesh node of every row of `C`.
    pub dual_keys: Vec<usize>,
}

impl GlobalSystem {
    pub fn n_primal(&self) -> usize {
        self.stiffness.nrows()
    }

    pub fn n_dual(&self) -> usize {
        self.jacobian.nrows()
    }
}

/// Removes supported DOFs (homogeneous supports only).
pub fn apply_dirichlet(system: &GlobalSystem, dofs: &DofMap) -> GlobalSystem {
    let free = dofs.free();
    let all_rows: Vec<usize> = (0..system.n_dual()).collect();
    GlobalSystem {
        stiffness: system.stiffness.select(free, free),
        jacobian: system.jacobian.select(&all_rows, free),
        force_residual: free.iter().map(|&i| system.force_residual[i]).collect(),
        gaps: system.gaps.clone(),
        external_norm: system.external_norm,
        min_thickness: system.min_thickness,
        primal_keys: free.iter().map(|&i| system.primal_keys[i]).collect(),
        dual_keys: system.dual_keys.clone(),
    }
}

/// Assembles the reduced system of a laminated model at `state`.
pub fn assemble(model: &BeamModel, state: &SystemState) -> Result<GlobalSystem, SolverError> {
    Discretization::from_model(model).assemble(state)
}

/// Stiffness of a rectangular section built from the given properties.
pub(crate) fn properties(section: &LayerSection) -> LayerProperties {
    LayerProperties {
        stiffness: section.stiffness(),
        thickness: section.thickness(),
    }
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
