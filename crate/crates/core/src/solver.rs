//! Newton iteration on the KKT conditions of the constrained energy
//! minimum, and the one-step linear model.
//!
//! Every step solves
//!
//! ```text
//! [ K  Cᵀ ] [ δd ]     [ f_int − f_ext ]
//! [ C  0  ] [ λ  ] = − [ c             ]
//! ```
//!
//! with `K = K_t + K_λ` at the current state. Displacements are updated
//! incrementally; multipliers are replaced by the new solution.

use crate::assembly::{norm, Discretization, GlobalSystem};
use crate::constraints::MultiplierVector;
use crate::error::SolverError;
use crate::kkt::{solve_bordered, LinearSolver, OrderingKeys};
use crate::model::{AnalysisConfig, BeamModel};

#[derive(Clone, Debug, PartialEq)]
pub struct SystemState {
    /// All DOFs, supported ones included (they stay zero).
    pub displacements: Vec<f64>,
    pub multipliers: MultiplierVector,
    pub iteration: usize,
}

impl SystemState {
    pub fn zeros(disc: &Discretization) -> Self {
        let n_nodes = disc.n_nodes();
        Self {
            displacements: vec![0.0; disc.dofs().total()],
            multipliers: MultiplierVector::zeros(disc.layers().len().saturating_sub(1), n_nodes),
            iteration: 0,
        }
    }
}

/// Normalized equilibrium and compatibility residuals.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ResidualPair {
    pub equilibrium: f64,
    pub compatibility: f64,
}

impl ResidualPair {
    pub fn is_finite(&self) -> bool {
        self.equilibrium.is_finite() && self.compatibility.is_finite()
    }

    pub fn within(&self, options: &SolveOptions) -> bool {
        self.equilibrium <= options.tol_equilibrium
            && self.compatibility <= options.tol_compatibility
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IterationRecord {
    /// 1-based iteration number.
    pub iteration: usize,
    pub residuals: ResidualPair,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ConvergenceLog {
    records: Vec<IterationRecord>,
}

impl ConvergenceLog {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[IterationRecord] {
        &self.records
    }

    pub fn last(&self) -> Option<&IterationRecord> {
        self.records.last()
    }

    fn push(&mut self, record: IterationRecord) {
        self.records.push(record);
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions {
    pub tol_equilibrium: f64,
    pub tol_compatibility: f64,
    pub max_iterations: usize,
    pub linear_solver: LinearSolver,
}

impl Default for SolveOptions {
    fn default() -> Self {
        AnalysisConfig::default().into()
    }
}

impl From<AnalysisConfig> for SolveOptions {
    fn from(a: AnalysisConfig) -> Self {
        Self {
            tol_equilibrium: a.tol_equilibrium,
            tol_compatibility: a.tol_compatibility,
            max_iterations: a.max_iterations,
            linear_solver: LinearSolver::default(),
        }
    }
}

/// Final state and residual history of a solve.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub state: SystemState,
    pub log: ConvergenceLog,
}

impl Solution {
    pub fn iterations(&self) -> usize {
        self.state.iteration
    }
}

/// `η₁ = ‖f_int − f_ext + Cᵀλ‖ / ‖f_ext‖` over free DOFs and
/// `η₂ = ‖c‖ / min h`. Without external load `η₁` is the bare norm.
pub fn residuals(system: &GlobalSystem, multipliers: &[f64]) -> ResidualPair {
    let ct_lambda = system.jacobian.transpose_mul_vec(multipliers);
    let r: Vec<f64> = system
        .force_residual
        .iter()
        .zip(&ct_lambda)
        .map(|(a, b)| a + b)
        .collect();
    let scale = if system.external_norm > 0.0 {
        system.external_norm
    } else {
        1.0
    };
    ResidualPair {
        equilibrium: norm(&r) / scale,
        compatibility: norm(&system.gaps) / system.min_thickness,
    }
}

/// Solves the bordered system for the free-DOF increment and the new
/// multipliers.
pub fn solve_kkt(
    system: &GlobalSystem,
    linear_solver: LinearSolver,
) -> Result<(Vec<f64>, Vec<f64>), SolverError> {
    let f: Vec<f64> = system.force_residual.iter().map(|v| -v).collect();
    let g: Vec<f64> = system.gaps.iter().map(|v| -v).collect();
    let keys = OrderingKeys {
        primal: Some(&system.primal_keys),
        dual: Some(&system.dual_keys),
    };
    let s = solve_bordered(
        &system.stiffness,
        &system.jacobian,
        &f,
        &g,
        &keys,
        linear_solver,
    )?;
    Ok((s.primal, s.dual))
}

/// Step-by-step Newton driver.
#[derive(Clone, Debug)]
pub struct NewtonIteration<'a> {
    disc: &'a Discretization,
    options: SolveOptions,
    state: SystemState,
    system: GlobalSystem,
    log: ConvergenceLog,
}

impl<'a> NewtonIteration<'a> {
    pub fn new(disc: &'a Discretization, options: SolveOptions) -> Result<Self, SolverError> {
        let state = SystemState::zeros(disc);
        let system = disc.assemble(&state)?;
        Ok(Self {
            disc,
            options,
            state,
            system,
            log: ConvergenceLog::default(),
        })
    }

    /// Performs one update and logs the residuals of the new state.
    pub fn step(&mut self) -> Result<IterationRecord, SolverError> {
        let (delta, lambda) = solve_kkt(&self.system, self.options.linear_solver)?;
        for (&i, dv) in self.disc.dofs().free().iter().zip(&delta) {
            self.state.displacements[i] += dv;
        }
        self.state
            .multipliers
            .as_mut_slice()
            .copy_from_slice(&lambda);
        self.state.iteration += 1;

        self.system = self.disc.assemble(&self.state)?;
        let record = IterationRecord {
            iteration: self.state.iteration,
            residuals: residuals(&self.system, self.state.multipliers.as_slice()),
        };
        if !record.residuals.is_finite() || self.state.displacements.iter().any(|v| !v.is_finite())
        {
            return Err(SolverError::NonFinite {
                iteration: self.state.iteration,
            });
        }
        self.log.push(record);
        Ok(record)
    }

    pub fn is_converged(&self) -> bool {
        self.log
            .last()
            .is_some_and(|r| r.residuals.within(&self.options))
    }

    pub fn state(&self) -> &SystemState {
        &self.state
    }

    pub fn log(&self) -> &ConvergenceLog {
        &self.log
    }

    pub fn into_solution(self) -> Solution {
        Solution {
            state: self.state,
            log: self.log,
        }
    }
}

/// Full-load Newton iteration from the undeformed state.
pub fn newton_solve_discretization(
    disc: &Discretization,
    options: SolveOptions,
) -> Result<Solution, SolverError> {
    if norm(disc.external_force()) == 0.0 {
        return Ok(Solution {
            state: SystemState::zeros(disc),
            log: ConvergenceLog::default(),
        });
    }
    let mut newton = NewtonIteration::new(disc, options)?;
    while newton.log().len() < options.max_iterations {
        newton.step()?;
        if newton.is_converged() {
            return Ok(newton.into_solution());
        }
    }
    Err(SolverError::Diverged {
        log: newton.into_solution().log,
    })
}

/// One KKT solve at the undeformed state.
pub fn linear_solve_discretization(
    disc: &Discretization,
    options: SolveOptions,
) -> Result<Solution, SolverError> {
    if norm(disc.external_force()) == 0.0 {
        return Ok(Solution {
            state: SystemState::zeros(disc),
            log: ConvergenceLog::default(),
        });
    }
    let mut newton = NewtonIteration::new(disc, options)?;
    newton.step()?;
    Ok(newton.into_solution())
}

/// Newton solve of a laminated model with its analysis settings.
pub fn newton_solve(model: &BeamModel) -> Result<Solution, SolverError> {
    newton_solve_discretization(
        &Discretization::from_model(model),
        (*model.analysis()).into(),
    )
}

/// First Newton iterate of a laminated model.
pub fn linear_solve(model: &BeamModel) -> Result<Solution, SolverError> {
    linear_solve_discretization(
        &Discretization::from_model(model),
        (*model.analysis()).into(),
    )
}
