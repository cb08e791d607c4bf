//! Stress recovery: element strains to extreme-fibre and shear stresses,
//! then projection to the nodes, printed along the span.

use laminated_beam::cli::Preset;
use laminated_beam::postprocess::analyze;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let model = Preset::SimplySupported.model(100.0)?;
    let response = analyze(&model)?;
    let field = &response.field;
    println!(
        "{:>6} {:>10} {:>10} {:>10} {:>10}",
        "X [m]", "S_top1", "S_bot1", "S_bot3", "T2"
    );
    for j in (0..field.x.len()).step_by(4) {
        println!(
            "{:>6.3} {:>10.3} {:>10.3} {:>10.3} {:>10.4}",
            field.x[j],
            1e-6 * field.layers[0].stress_top[j],
            1e-6 * field.layers[0].stress_bottom[j],
            1e-6 * field.layers[2].stress_bottom[j],
            1e-6 * field.layers[1].shear[j],
        );
    }
    println!("(stresses in MPa)");
    Ok(())
}
