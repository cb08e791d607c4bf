use thiserror::Error;

use crate::solver::ConvergenceLog;

/// Problem-definition errors raised while building or validating a model.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum ModelError {
    #[error("`{field}` must be positive and finite, got {value}")]
    NonPositive { field: &'static str, value: f64 },
    #[error("a laminated beam model needs exactly three layers, got {0}")]
    LayerCount(usize),
    #[error("at least {min} elements per layer are required, got {got}")]
    TooFewElements { min: usize, got: usize },
    #[error("layer {layer} has length {got} m but layer 1 has length {expected} m")]
    InconsistentLength {
        layer: usize,
        expected: f64,
        got: f64,
    },
    #[error("layer {layer} origin does not stack contiguously on layer {previous}: expected O_Z = {expected}, got {got}")]
    NonContiguousStack {
        layer: usize,
        previous: usize,
        expected: f64,
        got: f64,
    },
    #[error("layer index {layer} out of range 1..={count}")]
    LayerIndex { layer: usize, count: usize },
    #[error("node index {node} out of range 1..={count}")]
    NodeIndex { node: usize, count: usize },
    #[error("support on layer {layer}, node {node} fixes no components")]
    EmptySupport { layer: usize, node: usize },
    #[error("load not on a node: X = {position} m (element length {element_length} m)")]
    LoadOffNode { position: f64, element_length: f64 },
    #[error("support not on a node: X = {position} m (element length {element_length} m)")]
    SupportOffNode { position: f64, element_length: f64 },
    #[error("load position X = {position} m outside the beam [0, {length}] m")]
    LoadOutsideBeam { position: f64, length: f64 },
    #[error(
        "distributed load on layer {layer} has {got} element intensities, expected {expected}"
    )]
    DistributedLength {
        layer: usize,
        expected: usize,
        got: usize,
    },
    #[error("invalid analysis settings: {0}")]
    Analysis(&'static str),
}

/// Errors from kinematic evaluations.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum KinematicsError {
    #[error("abscissa X = {x} outside the layer [0, {length}]")]
    OutsideLayer { x: f64, length: f64 },
    #[error("nodal field has {got} nodes, at least 2 are required")]
    FieldTooShort { got: usize },
    #[error("finite-difference step {step} underflows at X = {x}")]
    StepUnderflow { step: f64, x: f64 },
}

/// Errors from assembly and the Newton/KKT solver.
#[derive(Error, Debug, Clone)]
pub enum SolverError {
    #[error("dimension mismatch in {what}: expected {expected}, got {got}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("KKT matrix is singular (pivot {pivot:e} at step {step} of {size}); the model probably lacks supports against rigid-body motion")]
    SingularKkt {
        step: usize,
        size: usize,
        pivot: f64,
    },
    #[error("Newton iteration did not converge within {} iterations", log.len())]
    Diverged { log: ConvergenceLog },
    #[error("non-finite residual at iteration {iteration}")]
    NonFinite { iteration: usize },
}

/// Errors from post-processing.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum PostprocessError {
    #[error("relative error undefined for a zero reference value")]
    ZeroReference,
}
