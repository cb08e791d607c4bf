//! Writes a preset as a JSON model file, reads it back and runs it
//! through the same path as the command-line tool.

use laminated_beam::cli::{run, ModelFile, ModelSource, Preset, RunConfig};
use laminated_beam::model::AnalysisKind;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("laminated-beam-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("fixed_end.json");
    let model = Preset::FixedEnd.model(45.0)?;
    std::fs::write(&path, ModelFile::from_model(&model).to_json())?;
    println!("wrote {}", path.display());

    let config = RunConfig {
        source: ModelSource::File(path),
        kinds: vec![AnalysisKind::Nonlinear, AnalysisKind::Linear],
        ..RunConfig::preset(Preset::FixedEnd, dir.join("out"))
    };
    let summary = run(&config)?;
    for r in &summary.runs {
        println!(
            "{:<10} w = {:.3} {}  files: {}",
            r.kind.name(),
            r.mid_span_deflection,
            summary.deflection_unit,
            r.files.join(", ")
        );
    }
    Ok(())
}
