//! Power-law tail fit of a degree sequence, with the bootstrap p-value.

use cdpam::generator::{generate_cdpam, ModelParams};
use cdpam::powerlaw::{fit_powerlaw, ks_pvalue};
use cdpam::theory::gamma_theoretical;

fn main() -> cdpam::Result<()> {
    for beta in [0.6, 3.0, 600.0] {
        let g = generate_cdpam(&ModelParams::standard(beta, 10_000, 11))?;
        let degrees: Vec<u64> = g.degrees().map(|k| k as u64).collect();
        let fit = fit_powerlaw(&degrees)?;
        let p = ks_pvalue(&degrees, &fit, 200, 5)?;
        println!(
            "beta {beta:>6}: gamma_hat {:.3} (theory {:.3})  x_min {}  tail {}  ks {:.4}  p {p:.3}",
            fit.gamma_hat,
            gamma_theoretical(beta, 0.5)?,
            fit.x_min,
            fit.tail_size,
            fit.ks_distance
        );
    }
    Ok(())
}
