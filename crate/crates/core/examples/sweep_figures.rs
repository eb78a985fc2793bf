//! Writes the curve CSVs for a small beta/size grid into a directory.
//!
//! cargo run --release --example sweep_figures -- out_dir

use std::path::PathBuf;

use cdpam::cli::{run_sweep, sweep_csvs, GrowthArgs};
use cdpam::report::AnalysisOptions;

fn main() -> cdpam::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "sweep_out".into()));
    let growth = GrowthArgs { m0: 7, m: 5, theta: 0.5 };
    let betas: Vec<f64> = (0..6).map(|i| 0.6 * 10f64.powi(i)).collect();
    let cells = run_sweep(&growth, &betas, &[500, 2000], &[1, 2, 3], true, &AnalysisOptions::default());
    std::fs::create_dir_all(&dir).map_err(|source| cdpam::Error::Io { path: dir.clone(), source })?;
    for (name, bytes) in sweep_csvs(&growth, &cells)? {
        let path = dir.join(name);
        std::fs::write(&path, &bytes).map_err(|source| cdpam::Error::Io { path: path.clone(), source })?;
        println!("{} ({} rows)", path.display(), bytes.iter().filter(|&&b| b == b'\n').count() - 1);
    }
    Ok(())
}
