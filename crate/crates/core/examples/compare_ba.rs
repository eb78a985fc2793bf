//! CDPAM against BA on shared seeds: near beta = theta and in the BA limit.

use cdpam::generator::ModelParams;
use cdpam::report::{compare, AnalysisOptions};

fn main() -> cdpam::Result<()> {
    let seeds: Vec<u64> = (1..=5).collect();
    for beta in [0.6, 600000.0] {
        let c = compare(&ModelParams::standard(beta, 3000, 0), &seeds, &AnalysisOptions::default())?;
        println!("beta = {beta}");
        for (metric, d) in &c.delta {
            println!(
                "  {metric:>16}: cdpam {:>12.4} ba {:>12.4} delta {:>12.4} (sd {:.4})",
                d.cdpam_mean.unwrap_or(f64::NAN),
                d.ba_mean.unwrap_or(f64::NAN),
                d.delta_mean.unwrap_or(f64::NAN),
                d.delta_std.unwrap_or(f64::NAN)
            );
        }
    }
    Ok(())
}
