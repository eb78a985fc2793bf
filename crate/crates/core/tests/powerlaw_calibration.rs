mod common;

use cdpam::generator::{generate_ba, generate_cdpam, ModelParams};
use cdpam::powerlaw::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn synthetic(n: usize, x_min: u64, gamma: f64, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| sample_tail(x_min, gamma, &mut rng)).collect()
}

fn degrees(g: &cdpam::Graph) -> Vec<u64> {
    g.degrees().map(|k| k as u64).collect()
}

#[test]
fn sampler_matches_fitted_cdf() {
    let data = synthetic(200_000, 4, 2.3, 3);
    for x in [4u64, 5, 8, 20, 100] {
        let emp = data.iter().filter(|&&v| v <= x).count() as f64 / data.len() as f64;
        assert!((emp - fitted_cdf(x, 4, 2.3)).abs() < 0.005, "x = {x}");
    }
}

#[test]
fn recovers_exponents_on_large_samples() {
    for (i, gamma) in [2.1, 2.5, 2.9].into_iter().enumerate() {
        let fit = fit_powerlaw(&synthetic(100_000, 5, gamma, 40 + i as u64)).unwrap();
        assert!((fit.gamma_hat - gamma).abs() <= 0.05, "{gamma}: {fit:?}");
    }
    let fit = fit_powerlaw(&synthetic(10_000, 5, 2.5, 8)).unwrap();
    assert!((2.4..=2.6).contains(&fit.gamma_hat));
}

#[test]
fn options_bound_the_cutoff_scan() {
    let data = synthetic(5000, 1, 2.2, 12);
    let narrow = FitOptions { xmin_quantile: 0.5, min_tail: 10 };
    let fit = fit_powerlaw_with(&data, &narrow).unwrap();
    let mut sorted = data.clone();
    sorted.sort_unstable();
    assert!(fit.x_min <= sorted[2499]);
    let strict = FitOptions { xmin_quantile: 1.0, min_tail: 6000 };
    assert!(matches!(fit_powerlaw_with(&data, &strict), Err(cdpam::Error::UnfittableData(_))));
}

#[test]
fn pvalue_is_calibrated_on_well_specified_data() {
    let ps: Vec<f64> = (0..20)
        .map(|rep| {
            let data = synthetic(2000, 3, 2.5, 1000 + rep);
            let fit = fit_powerlaw(&data).unwrap();
            ks_pvalue(&data, &fit, 100, rep).unwrap()
        })
        .collect();
    let mean = common::mean(&ps);
    assert!((0.3..=0.7).contains(&mean), "mean p {mean}: {ps:?}");
}

#[test]
fn pvalue_rejects_misspecified_data() {
    // Geometric data has no power-law tail.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let data: Vec<u64> = (0..3000)
        .map(|_| {
            let u: f64 = rand::Rng::random(&mut rng);
            1 + (u.ln() / 0.7f64.ln()).floor() as u64
        })
        .collect();
    let fit = fit_powerlaw(&data).unwrap();
    let p = ks_pvalue(&data, &fit, 200, 1).unwrap();
    assert!(p < 0.1, "{p} {fit:?}");
}

#[test]
fn generated_degree_tails() {
    let median_gamma = |beta: Option<f64>| {
        let gs: Vec<f64> = (0..10)
            .map(|seed| {
                let p = ModelParams::standard(beta.unwrap_or(1.0), 10_000, seed);
                let g = match beta {
                    Some(_) => generate_cdpam(&p).unwrap(),
                    None => generate_ba(&p).unwrap(),
                };
                fit_powerlaw(&degrees(&g)).unwrap().gamma_hat
            })
            .collect();
        common::median(&gs)
    };
    let at3 = median_gamma(Some(3.0));
    assert!((at3 - 2.78).abs() <= 0.15, "{at3}");
    assert!((at3 - 2.714).abs() <= 0.15, "{at3}");
    let ba = median_gamma(None);
    assert!((2.8..=3.2).contains(&ba), "{ba}");
    let limit = median_gamma(Some(600000.0));
    assert!((limit - ba).abs() <= 0.15);

    let p = ModelParams::standard(0.6, 10_000, 4);
    let low = fit_powerlaw(&degrees(&generate_cdpam(&p).unwrap())).unwrap().gamma_hat;
    let high = fit_powerlaw(&degrees(&generate_cdpam(&ModelParams { beta: 600.0, ..p }).unwrap())).unwrap().gamma_hat;
    assert!(low < high, "{low} vs {high}");
}
