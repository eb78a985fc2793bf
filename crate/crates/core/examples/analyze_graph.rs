//! Full report for one graph: from a file if a path is given, else a fresh CDPAM graph.

use cdpam::cli::read_graph;
use cdpam::generator::{generate_cdpam, ModelParams};
use cdpam::report::{AnalysisOptions, AnalysisReport};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = match std::env::args().nth(1) {
        Some(path) => read_graph(path.as_ref())?,
        None => generate_cdpam(&ModelParams::standard(0.6, 3000, 1))?,
    };
    let opts = AnalysisOptions {
        bootstrap: Some(200),
        seed: 1,
        ..AnalysisOptions::default()
    };
    let report = AnalysisReport::compute(&g, &opts)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}
