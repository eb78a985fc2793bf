//! Power-law tail fitting for integer data.
//!
//! For each candidate lower cutoff `x_min` the exponent is the discrete
//! maximum-likelihood estimate in its continuous approximation,
//!
//! ```text
//! gamma_hat = 1 + n_tail / sum_i ln(x_i / (x_min - 0.5))
//! ```
//!
//! and the fit is scored by the Kolmogorov–Smirnov distance between the
//! empirical tail CDF and the fitted law. The reported fit is the candidate
//! with the smallest distance. The fitted law is the continuous power law
//! on `[x_min - 0.5, inf)` binned to the nearest integer, which has the
//! closed-form tail `P(X >= x) = ((x - 0.5) / (x_min - 0.5))^(1 - gamma)`
//! and the exact sampler `round((x_min - 0.5) * U^(-1 / (gamma - 1)))`.
//!
//! The goodness-of-fit p-value is a semi-parametric bootstrap: synthetic
//! datasets keep the empirical body below `x_min` and draw the tail from the
//! fitted law, each one is refitted from scratch, and `p` is the fraction
//! whose distance is at least the observed one.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};

pub const MIN_SAMPLES: usize = 50;
pub const MIN_TAIL: usize = 10;
pub const MIN_BOOTSTRAP: usize = 100;
pub const DEFAULT_BOOTSTRAP: usize = 1000;
/// Candidate cutoffs are limited to values at or below this quantile.
pub const XMIN_QUANTILE: f64 = 0.99;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub gamma_hat: f64,
    pub x_min: u64,
    pub ks_distance: f64,
    pub tail_size: usize,
}

/// `P(X <= x)` of the binned continuous law with cutoff `x_min`.
pub fn fitted_cdf(x: u64, x_min: u64, gamma: f64) -> f64 {
    if x < x_min {
        return 0.0;
    }
    1.0 - ((x as f64 + 0.5) / (x_min as f64 - 0.5)).powf(1.0 - gamma)
}

/// One draw from the binned continuous law.
pub fn sample_tail<R: Rng + ?Sized>(x_min: u64, gamma: f64, rng: &mut R) -> u64 {
    let u = 1.0 - rng.random::<f64>();
    let y = (x_min as f64 - 0.5) * u.powf(-1.0 / (gamma - 1.0));
    (y + 0.5).floor() as u64
}

/// Sorted distinct values with counts and suffix sums.
struct Tallies {
    values: Vec<u64>,
    counts: Vec<usize>,
    suffix_count: Vec<usize>,
    suffix_log: Vec<f64>,
}

impl Tallies {
    fn new(samples: &[u64]) -> Self {
        let mut sorted = samples.to_vec();
        sorted.sort_unstable();
        let mut values = Vec::new();
        let mut counts = Vec::new();
        for x in sorted {
            if values.last() == Some(&x) {
                *counts.last_mut().unwrap() += 1;
            } else {
                values.push(x);
                counts.push(1);
            }
        }
        let d = values.len();
        let mut suffix_count = vec![0; d + 1];
        let mut suffix_log = vec![0.0; d + 1];
        for i in (0..d).rev() {
            suffix_count[i] = suffix_count[i + 1] + counts[i];
            suffix_log[i] = suffix_log[i + 1] + counts[i] as f64 * (values[i] as f64).ln();
        }
        Self {
            values,
            counts,
            suffix_count,
            suffix_log,
        }
    }

    fn exponent(&self, i: usize) -> f64 {
        let x_min = self.values[i] as f64;
        let n = self.suffix_count[i] as f64;
        1.0 + n / (self.suffix_log[i] - n * (x_min - 0.5).ln())
    }

    fn ks(&self, i: usize, gamma: f64) -> f64 {
        let x_min = self.values[i];
        let n = self.suffix_count[i] as f64;
        let mut below = 0usize;
        let mut worst = 0.0f64;
        for j in i..self.values.len() {
            let x = self.values[j];
            let before = below as f64 / n;
            if x > x_min {
                worst = worst.max((before - fitted_cdf(x - 1, x_min, gamma)).abs());
            }
            below += self.counts[j];
            worst = worst.max((below as f64 / n - fitted_cdf(x, x_min, gamma)).abs());
        }
        worst
    }
}

fn check_samples(samples: &[u64]) -> Result<()> {
    if samples.len() < MIN_SAMPLES {
        return Err(Error::UnfittableData(format!(
            "{} samples, need at least {MIN_SAMPLES}",
            samples.len()
        )));
    }
    if samples.contains(&0) {
        return Err(invalid("power-law samples must be positive integers"));
    }
    Ok(())
}

/// Limits on the cutoff scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitOptions {
    /// Candidate cutoffs must not exceed this sample quantile.
    pub xmin_quantile: f64,
    /// Candidate cutoffs must leave at least this many samples in the tail.
    pub min_tail: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            xmin_quantile: XMIN_QUANTILE,
            min_tail: MIN_TAIL,
        }
    }
}

/// Scans candidate cutoffs and returns the fit with the smallest KS distance.
pub fn fit_powerlaw(samples: &[u64]) -> Result<PowerLawFit> {
    fit_powerlaw_with(samples, &FitOptions::default())
}

pub fn fit_powerlaw_with(samples: &[u64], opts: &FitOptions) -> Result<PowerLawFit> {
    check_samples(samples)?;
    let tallies = Tallies::new(samples);
    if tallies.values.len() < 2 {
        return Err(Error::UnfittableData("all samples are equal".into()));
    }
    let rank = ((opts.xmin_quantile * samples.len() as f64).ceil() as usize).clamp(1, samples.len());
    let cap = {
        let mut seen = 0;
        let idx = tallies
            .counts
            .iter()
            .position(|&c| {
                seen += c;
                seen >= rank
            })
            .unwrap();
        tallies.values[idx]
    };
    let mut best: Option<PowerLawFit> = None;
    for i in 0..tallies.values.len() {
        if tallies.values[i] > cap || tallies.suffix_count[i] < opts.min_tail {
            break;
        }
        let gamma_hat = tallies.exponent(i);
        if !(gamma_hat.is_finite() && gamma_hat > 1.0) {
            continue;
        }
        let ks_distance = tallies.ks(i, gamma_hat);
        if best.is_none_or(|b| ks_distance < b.ks_distance) {
            best = Some(PowerLawFit {
                gamma_hat,
                x_min: tallies.values[i],
                ks_distance,
                tail_size: tallies.suffix_count[i],
            });
        }
    }
    best.ok_or_else(|| Error::UnfittableData(format!("no cutoff leaves a tail of {} samples", opts.min_tail)))
}

/// Bootstrap p-value of `fit` on `samples`. Replicate `r` draws from the
/// ChaCha8 stream `r` under `seed`, so the result does not depend on how
/// replicates are scheduled.
pub fn ks_pvalue(samples: &[u64], fit: &PowerLawFit, n_boot: usize, seed: u64) -> Result<f64> {
    ks_pvalue_with(samples, fit, n_boot, seed, &FitOptions::default())
}

/// As [`ks_pvalue`], refitting each replicate under `opts`.
pub fn ks_pvalue_with(samples: &[u64], fit: &PowerLawFit, n_boot: usize, seed: u64, opts: &FitOptions) -> Result<f64> {
    check_samples(samples)?;
    if n_boot < MIN_BOOTSTRAP {
        return Err(invalid(format!("n_boot = {n_boot}, need at least {MIN_BOOTSTRAP}")));
    }
    let tail = samples.iter().filter(|&&x| x >= fit.x_min).count();
    if !(fit.gamma_hat.is_finite() && fit.gamma_hat > 1.0)
        || fit.x_min == 0
        || tail != fit.tail_size
        || !(0.0..=1.0).contains(&fit.ks_distance)
    {
        return Err(invalid("fit does not belong to these samples"));
    }
    let body: Vec<u64> = samples.iter().copied().filter(|&x| x < fit.x_min).collect();
    let n = samples.len();
    let p_tail = tail as f64 / n as f64;

    let outcomes: Vec<Option<bool>> = (0..n_boot as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(r);
            let synthetic: Vec<u64> = (0..n)
                .map(|_| {
                    if body.is_empty() || rng.random::<f64>() < p_tail {
                        sample_tail(fit.x_min, fit.gamma_hat, &mut rng)
                    } else {
                        body[rng.random_range(0..body.len())]
                    }
                })
                .collect();
            fit_powerlaw_with(&synthetic, opts).ok().map(|f| f.ks_distance >= fit.ks_distance)
        })
        .collect();
    let valid = outcomes.iter().flatten().count();
    if valid == 0 {
        return Err(Error::UnfittableData("no bootstrap replicate could be fitted".into()));
    }
    let worse = outcomes.iter().flatten().filter(|&&w| w).count();
    Ok(worse as f64 / valid as f64)
}
