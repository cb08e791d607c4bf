//! Finite-element analysis of three-layer laminated glass beams.
//!
//! Each layer is a geometrically exact Reissner beam discretized with
//! two-node, one-point integrated elements. Adjacent layers are tied at
//! every node by Lagrange multipliers, and the resulting saddle-point
//! problem is solved by Newton iteration under the full load.
//!
//! ```no_run
//! use laminated_beam::cli::Preset;
//! use laminated_beam::postprocess::analyze;
//!
//! let model = Preset::FixedEnd.model(150.0)?;
//! let response = analyze(&model)?;
//! println!("w = {:.2} mm after {} iterations",
//!          1e3 * response.mid_span_deflection(), response.iterations());
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod assembly;
pub mod cli;
pub mod constraints;
pub mod element;
pub mod error;
pub mod kinematics;
pub mod kkt;
pub mod model;
pub mod postprocess;
pub mod solver;
pub mod sparse;

pub use error::{KinematicsError, ModelError, PostprocessError, SolverError};
pub use model::{
    AnalysisConfig, AnalysisKind, BeamModel, BeamModelSpec, Component, LayerSection, LayerSpec,
    LoadCase, SupportSpec,
};
pub use postprocess::{analyze, Response};
pub use solver::{linear_solve, newton_solve, ConvergenceLog, Solution, SystemState};
