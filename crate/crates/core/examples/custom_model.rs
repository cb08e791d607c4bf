//! Builds a laminate from scratch: a cantilever of two glass plies on a
//! stiff ionoplast interlayer under a uniform load.

use laminated_beam::model::{
    AnalysisConfig, BeamModelSpec, Component, DistributedLoad, Intensity, LayerSection, LayerSpec,
    LoadCase, SupportSpec,
};
use laminated_beam::postprocess::analyze;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let width = 0.2;
    let glass = LayerSection::new(70e9, 28.7e9, width, 0.006)?;
    let interlayer = LayerSection::new(300e6, 100e6, width, 0.00152)?;
    let length = 0.8;
    let spec = BeamModelSpec {
        layers: vec![
            LayerSpec::new(glass, length),
            LayerSpec::new(interlayer, length),
            LayerSpec::new(glass, length),
        ],
        n_el: 64,
        // clamp every ply at the root
        supports: (1..=3)
            .map(|layer| SupportSpec {
                layer,
                node: 1,
                components: Component::ALL.to_vec(),
            })
            .collect(),
        loads: LoadCase {
            point_loads: vec![],
            distributed: vec![DistributedLoad {
                layer: 1,
                intensity: Intensity::Uniform(400.0),
            }],
        },
        analysis: AnalysisConfig::default(),
    };
    let model = spec.validate()?;
    let response = analyze(&model)?;
    let tip = model.n_nodes() - 1;
    let field = &response.field;
    println!("converged in {} iterations", response.iterations());
    println!(
        "tip deflection  {:.3} mm",
        1e3 * field.bottom().deflection[tip]
    );
    println!(
        "root S_top1     {:.2} MPa",
        1e-6 * field.top().stress_top[0]
    );
    println!(
        "root S_bot3     {:.2} MPa",
        1e-6 * field.bottom().stress_bottom[0]
    );
    Ok(())
}
