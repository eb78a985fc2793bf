//! Fiedler value and spectral radius of CDPAM and BA graphs, dense and iterative.

use std::time::Instant;

use cdpam::generator::{generate_ba, generate_cdpam, ModelParams};
use cdpam::spectral::{algebraic_connectivity, spectral_radius, SpectralOptions};
use cdpam::Graph;

fn show(name: &str, g: &Graph) -> cdpam::Result<()> {
    for (label, opts) in [
        ("dense", SpectralOptions::default()),
        ("lanczos", SpectralOptions { dense_cutoff: 2, ..Default::default() }),
    ] {
        let t = Instant::now();
        let l2 = algebraic_connectivity(g, &opts)?;
        let rho = spectral_radius(g, &opts)?;
        println!("{name:>10} {label:>8}: lambda2 {l2:.8}  rho {rho:.8}  ({:.2?})", t.elapsed());
    }
    Ok(())
}

fn main() -> cdpam::Result<()> {
    let p = ModelParams::standard(0.6, 1500, 3);
    show("cdpam 0.6", &generate_cdpam(&p)?)?;
    show("ba", &generate_ba(&p)?)?;
    Ok(())
}
