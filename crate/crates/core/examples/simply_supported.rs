//! Four-point-free bending of the simply supported laminate: load sweep
//! with the layered, monolithic and two-layer models side by side.

use laminated_beam::cli::Preset;
use laminated_beam::model::{AnalysisConfig, AnalysisKind};
use laminated_beam::postprocess::analyze;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let preset = Preset::SimplySupported;
    println!(
        "{:>6} {:>10} {:>10} {:>10} {:>10}",
        "F [N]", "nonlinear", "linear", "monolith", "2-layer"
    );
    for load in [50.0, 100.0, 150.0, 200.0] {
        let mut row = format!("{load:>6}");
        for kind in [
            AnalysisKind::Nonlinear,
            AnalysisKind::Linear,
            AnalysisKind::Monolithic,
            AnalysisKind::TwoLayer,
        ] {
            let model = preset.model_with(
                load,
                preset.default_n_el(),
                AnalysisConfig {
                    kind,
                    ..AnalysisConfig::default()
                },
            )?;
            let w = analyze(&model)?.mid_span_deflection();
            row.push_str(&format!(" {:>10.4}", 1e3 * w));
        }
        println!("{row}   (mid-span w, mm)");
    }
    Ok(())
}
