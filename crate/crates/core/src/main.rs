use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use laminated_beam::cli::{run, ModelSource, Preset, RunConfig, Units};
use laminated_beam::AnalysisKind;

/// Laminated glass beam analysis.
#[derive(Parser, Debug)]
#[command(version, about)]
struct Args {
    /// Benchmark setup: simply-supported or fixed-end.
    #[arg(long, conflicts_with = "model", required_unless_present = "model")]
    preset: Option<Preset>,
    /// JSON model file.
    #[arg(long)]
    model: Option<PathBuf>,
    /// Analyses to run: nonlinear, linear, monolithic, two-layer.
    #[arg(long, value_delimiter = ',', default_value = "nonlinear")]
    kind: Vec<AnalysisKind>,
    /// Point-load magnitudes in N.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    load: Option<Vec<f64>>,
    /// Elements per layer.
    #[arg(long)]
    n_el: Option<usize>,
    /// Tolerance on both residuals.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_iter: Option<usize>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// si (m, Pa) or paper (mm, MPa).
    #[arg(long, default_value = "paper")]
    units: Units,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let source = match (args.preset, args.model) {
        (Some(p), _) => ModelSource::Preset(p),
        (None, Some(path)) => ModelSource::File(path),
        (None, None) => unreachable!("clap requires one source"),
    };
    let config = RunConfig {
        source,
        kinds: args.kind,
        loads: args.load,
        n_el: args.n_el,
        tol: args.tol,
        max_iter: args.max_iter,
        out: args.out,
        units: args.units,
    };
    match run(&config) {
        Ok(summary) => {
            for r in &summary.runs {
                println!(
                    "{:<10} F = {:>7} N  w = {:.4} {}  S_bot3 = {:.3} {}  iterations {}",
                    r.kind.name(),
                    r.load_n,
                    r.mid_span_deflection,
                    summary.deflection_unit,
                    r.mid_span_bottom_stress,
                    summary.stress_unit,
                    r.iterations
                );
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
