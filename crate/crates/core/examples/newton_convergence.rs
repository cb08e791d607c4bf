//! Drives the Newton iteration one step at a time and prints both
//! residual norms, showing the quadratic tail.

use laminated_beam::assembly::Discretization;
use laminated_beam::cli::Preset;
use laminated_beam::solver::{NewtonIteration, SolveOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = Preset::FixedEnd.model(150.0)?;
    let disc = Discretization::from_model(&model);
    let mut newton = NewtonIteration::new(&disc, SolveOptions::from(*model.analysis()))?;
    println!("{:>4} {:>14} {:>14}", "k", "eta1", "eta2");
    while !newton.is_converged() {
        let record = newton.step()?;
        println!(
            "{:>4} {:>14.6e} {:>14.6e}",
            record.iteration, record.residuals.equilibrium, record.residuals.compatibility
        );
        if record.iteration >= 50 {
            return Err("no convergence".into());
        }
    }
    let w = newton.state().displacements[disc.dofs().index(
        2,
        disc.n_el() / 2,
        laminated_beam::Component::W,
    )];
    println!("mid-span deflection of the bottom ply: {:.4} mm", 1e3 * w);
    Ok(())
}
