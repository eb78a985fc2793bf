//! Closed-form exponent, offset and expected diameter across beta.

use cdpam::theory::{expected_degree, expected_diameter, TheoryParams};

fn main() -> cdpam::Result<()> {
    println!("{:>9} {:>7} {:>7} {:>7} {:>10} {:>10}", "beta", "gamma", "c", "K", "k(1e4|50)", "D(1e4)");
    for beta in [0.6, 1.2, 1.8, 2.4, 3.0, 6.0, 60.0, 300.0, 600.0, 600000.0] {
        let p = TheoryParams::new(5, beta, 0.5)?;
        println!(
            "{beta:>9} {:>7.3} {:>7.4} {:>7.4} {:>10.2} {:>10.4}",
            p.gamma(),
            p.c(),
            p.k_coef(),
            expected_degree(1e4, 50.0, &p)?,
            expected_diameter(10_000, &p)?
        );
    }
    Ok(())
}
