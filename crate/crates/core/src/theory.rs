//! Closed-form mean-field results for the context model.
//!
//! With `gamma = 1 + 2 beta / (beta + theta)` and
//! `c = 2 m theta / (beta + theta)`, node degrees follow the shifted
//! power-law trajectory `k_i(t) = (m - c) (t / t_i)^(1 / (gamma - 1)) + c`
//! and the degree density decays as `(k - c)^(-gamma)`. Path and distance
//! formulas are built on the coefficient
//! `K = (beta + theta)(m - c) / (2 beta) = (m - c) / (gamma - 1)`.
//!
//! Logarithms are natural throughout.

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::generator::validate_weights;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Default additive constant in the distance and diameter numerators.
pub const DEFAULT_DISTANCE_OFFSET: f64 = EULER_GAMMA;

/// Above this, harmonic numbers use the asymptotic expansion.
pub const HARMONIC_EXACT_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TheoryParams {
    m: usize,
    beta: f64,
    theta: f64,
    r: f64,
}

impl TheoryParams {
    pub fn new(m: usize, beta: f64, theta: f64) -> Result<Self> {
        if m == 0 {
            return Err(invalid("m must be at least 1"));
        }
        validate_weights(beta, theta)?;
        Ok(Self {
            m,
            beta,
            theta,
            r: DEFAULT_DISTANCE_OFFSET,
        })
    }

    /// Overrides the constant `r` subtracted in the distance numerator.
    pub fn with_distance_offset(mut self, r: f64) -> Self {
        self.r = r;
        self
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn distance_offset(&self) -> f64 {
        self.r
    }

    pub fn gamma(&self) -> f64 {
        1.0 + 2.0 * self.beta / (self.beta + self.theta)
    }

    pub fn c(&self) -> f64 {
        2.0 * self.m as f64 * self.theta / (self.beta + self.theta)
    }

    /// Path coefficient `K`.
    pub fn k_coef(&self) -> f64 {
        (self.beta + self.theta) * (self.m as f64 - self.c()) / (2.0 * self.beta)
    }

    /// Growth exponent `1 / (gamma - 1)` of the degree trajectory.
    pub fn growth_exponent(&self) -> f64 {
        (self.beta + self.theta) / (2.0 * self.beta)
    }
}

pub fn gamma_theoretical(beta: f64, theta: f64) -> Result<f64> {
    validate_weights(beta, theta)?;
    Ok(1.0 + 2.0 * beta / (beta + theta))
}

pub fn c_offset(m: usize, beta: f64, theta: f64) -> Result<f64> {
    Ok(TheoryParams::new(m, beta, theta)?.c())
}

/// Mean-field degree at time `t` of a node that arrived at `t_i`.
pub fn expected_degree(t: f64, t_i: f64, p: &TheoryParams) -> Result<f64> {
    if !(t_i > 0.0 && t >= t_i && t.is_finite()) {
        return Err(invalid(format!("need t >= t_i > 0, got t = {t}, t_i = {t_i}")));
    }
    let c = p.c();
    Ok((p.m as f64 - c) * (t / t_i).powf(p.growth_exponent()) + c)
}

/// Asymptotic degree density `(gamma - 1)(m - c)^(gamma - 1)(k - c)^(-gamma)`,
/// normalized on `k >= m`.
pub fn degree_density(k: f64, p: &TheoryParams) -> Result<f64> {
    let c = p.c();
    if !(k > c) {
        return Err(invalid(format!("degree density needs k > c = {c}, got {k}")));
    }
    let g = p.gamma();
    let scale = p.m as f64 - c;
    Ok((g - 1.0) * (((g - 1.0) * scale.ln() - g * (k - c).ln()).exp()))
}

/// Which form of the pairwise link probability to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LinkVariant {
    /// Leading term plus `m (1 - 2 theta) / (2 beta t_j)`.
    #[default]
    AsPrinted,
    /// Leading term only, which is what substituting the degree trajectory
    /// into the mean-field attachment rate yields.
    DerivationConsistent,
}

/// Probability that node `t_j` links to the older node `t_i`.
pub fn link_probability(t_i: f64, t_j: f64, p: &TheoryParams, variant: LinkVariant) -> Result<f64> {
    if !(t_i > 0.0 && t_i < t_j) {
        return Err(invalid(format!("need 0 < t_i < t_j, got t_i = {t_i}, t_j = {t_j}")));
    }
    let a = p.growth_exponent();
    let lead = p.k_coef() / (t_i.powf(a) * t_j.powf(1.0 - a));
    Ok(match variant {
        LinkVariant::DerivationConsistent => lead,
        LinkVariant::AsPrinted => lead + p.m as f64 * (1.0 - 2.0 * p.theta) / (2.0 * p.beta * t_j),
    })
}

/// `H_n`, by compensated summation up to [`HARMONIC_EXACT_LIMIT`] and by
/// the asymptotic series beyond.
pub fn harmonic(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(invalid("harmonic number needs n >= 1"));
    }
    if n <= HARMONIC_EXACT_LIMIT {
        // Summing small terms first keeps the Kahan correction tiny.
        let (mut sum, mut comp) = (0.0f64, 0.0f64);
        for k in (1..=n).rev() {
            let y = 1.0 / k as f64 - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        Ok(sum)
    } else {
        let x = n as f64;
        let inv2 = 1.0 / (x * x);
        Ok(x.ln() + EULER_GAMMA + 0.5 / x - inv2 / 12.0 + inv2 * inv2 / 120.0)
    }
}

fn check_pair(t_i: f64, t_j: f64, n: u64) -> Result<()> {
    if !(t_i > 0.0 && t_i < t_j && t_j <= n as f64) {
        return Err(invalid(format!(
            "need 0 < t_i < t_j <= n, got t_i = {t_i}, t_j = {t_j}, n = {n}"
        )));
    }
    Ok(())
}

/// Probability that nodes `t_i < t_j` are joined by a path of length at most
/// `l` in a network of `n` nodes.
pub fn path_probability(t_i: f64, t_j: f64, l: u32, n: u64, p: &TheoryParams) -> Result<f64> {
    check_pair(t_i, t_j, n)?;
    if l == 0 {
        return Err(invalid("path length must be at least 1"));
    }
    let a = p.growth_exponent();
    let log_rate = l as f64 * p.k_coef().ln() + (l - 1) as f64 * harmonic(n)?.ln()
        - a * t_i.ln()
        - (1.0 - a) * t_j.ln();
    Ok(-(-log_rate.exp()).exp_m1())
}

fn log_scale(n: u64, p: &TheoryParams) -> Result<f64> {
    let kh = p.k_coef() * harmonic(n)?;
    if kh <= 1.0 {
        return Err(Error::DegenerateParameters(format!(
            "K * H_n = {kh} <= 1, distance denominator is not positive"
        )));
    }
    Ok(kh.ln())
}

/// Expected hop distance between nodes that arrived at `t_i < t_j`.
pub fn expected_distance(t_i: f64, t_j: f64, n: u64, p: &TheoryParams) -> Result<f64> {
    check_pair(t_i, t_j, n)?;
    let denom = log_scale(n, p)?;
    let a = p.growth_exponent();
    let numer = (1.0 - a) * t_j.ln() + a * t_i.ln() - p.k_coef().ln() - p.r;
    Ok(numer / denom + 0.5)
}

/// Expected diameter: the expected distance between the first and the last node.
pub fn expected_diameter(n: u64, p: &TheoryParams) -> Result<f64> {
    if n < 2 {
        return Err(invalid("expected diameter needs n >= 2"));
    }
    expected_distance(1.0, n as f64, n, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(m: usize, beta: f64, theta: f64) -> TheoryParams {
        TheoryParams::new(m, beta, theta).unwrap()
    }

    #[test]
    fn gamma_matches_table_values() {
        for (beta, want) in [(0.6, 2.090_909_090_909_091), (3.0, 2.714_285_714_285_714), (600.0, 2.998_334_721_065_779)] {
            assert!((gamma_theoretical(beta, 0.5).unwrap() - want).abs() < 1e-12);
        }
        assert!(gamma_theoretical(0.5, 0.5).is_err());
        assert!(gamma_theoretical(0.5, 0.6).is_err());
        assert!(gamma_theoretical(-1.0, 0.5).is_err());
    }

    #[test]
    fn gamma_stays_inside_open_interval() {
        for beta in [0.51, 0.6, 1.0, 10.0, 1e3, 1e6] {
            let g = gamma_theoretical(beta, 0.5).unwrap();
            assert!(g > 2.0 && g < 3.0, "{g}");
        }
        assert!(gamma_theoretical(1e9, 1e-9).unwrap() > 2.999_999);
        assert!(gamma_theoretical(1.0, 0.999_999).unwrap() < 2.000_001);
    }

    #[test]
    fn offset_values() {
        assert!((c_offset(5, 0.6, 0.5).unwrap() - 50.0 / 11.0).abs() < 1e-12);
        assert!((c_offset(5, 600.0, 0.5).unwrap() - 5.0 / 600.5).abs() < 1e-15);
        assert!(c_offset(5, 1.0, 1e-12).unwrap() < 1e-10);
        let c = c_offset(5, 3.0, 0.5).unwrap();
        assert!((c - 10.0 / 7.0).abs() < 1e-12);
    }

    #[test]
    fn k_coefficient_identities() {
        for beta in [0.6, 1.2, 3.0, 60.0, 6e5] {
            let p = params(5, beta, 0.5);
            let printed = (beta + 0.5) * (5.0 - p.c()) / (2.0 * beta);
            assert!((p.k_coef() - printed).abs() < 1e-12);
            assert!((p.k_coef() - (5.0 - p.c()) / (p.gamma() - 1.0)).abs() < 1e-12);
            assert!(p.k_coef() > 0.0);
        }
    }

    #[test]
    fn trajectory_starts_at_m() {
        for beta in [0.6, 3.0, 600.0] {
            let p = params(5, beta, 0.5);
            assert!((expected_degree(37.0, 37.0, &p).unwrap() - 5.0).abs() < 1e-12);
        }
        assert!(expected_degree(1.0, 2.0, &params(5, 3.0, 0.5)).is_err());
    }

    #[test]
    fn trajectory_at_ratio_sixteen() {
        let p = params(5, 0.6, 0.5);
        // (5 - 50/11) * 16^(11/12) + 50/11
        let want = (5.0 - 50.0 / 11.0) * 16f64.powf(11.0 / 12.0) + 50.0 / 11.0;
        let got = expected_degree(16.0, 1.0, &p).unwrap();
        assert!((got - want).abs() < 1e-12);
        assert!((got - 10.32).abs() < 0.01, "{got}");
    }

    #[test]
    fn trajectory_ba_limit_is_square_root() {
        let p = params(5, 1.0, 1e-12);
        assert!((expected_degree(4.0, 1.0, &p).unwrap() - 10.0).abs() < 1e-9);
    }

    #[test]
    fn density_at_m() {
        let p = params(5, 3.0, 0.5);
        let want = (p.gamma() - 1.0) / (5.0 - p.c());
        assert!((degree_density(5.0, &p).unwrap() - want).abs() < 1e-12);
        assert!(degree_density(50.0, &p).unwrap() < degree_density(20.0, &p).unwrap());
        assert!(degree_density(p.c(), &p).is_err());
    }

    #[test]
    fn link_variants_agree_at_half_theta() {
        let p = params(5, 3.0, 0.5);
        let a = link_probability(10.0, 1000.0, &p, LinkVariant::AsPrinted).unwrap();
        let b = link_probability(10.0, 1000.0, &p, LinkVariant::DerivationConsistent).unwrap();
        assert_eq!(a, b);
        let q = params(5, 3.0, 0.2);
        let a = link_probability(10.0, 1000.0, &q, LinkVariant::AsPrinted).unwrap();
        let b = link_probability(10.0, 1000.0, &q, LinkVariant::DerivationConsistent).unwrap();
        assert!((a - b - 5.0 * 0.6 / 6000.0).abs() < 1e-15);
        assert!(link_probability(10.0, 10.0, &p, LinkVariant::AsPrinted).is_err());
    }

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(1).unwrap(), 1.0);
        assert_eq!(harmonic(2).unwrap(), 1.5);
        assert!((harmonic(10).unwrap() - 7381.0 / 2520.0).abs() < 1e-15);
        assert!(harmonic(0).is_err());
        // Both branches meet at the switch-over point.
        let below = harmonic(HARMONIC_EXACT_LIMIT).unwrap();
        let above = harmonic(HARMONIC_EXACT_LIMIT + 1).unwrap();
        assert!((above - below - 1.0 / (HARMONIC_EXACT_LIMIT + 1) as f64).abs() < 1e-12);
        let big = harmonic(1_000_000_000).unwrap();
        assert!((big - 21.300_481_502_347_944).abs() < 1e-10);
    }

    #[test]
    fn path_probability_limits() {
        let p = params(5, 3.0, 0.5);
        let n = 10_000;
        assert!(path_probability(1.0, 100.0, 0, n, &p).is_err());
        assert!(path_probability(5.0, 5.0, 2, n, &p).is_err());
        assert!(path_probability(5.0, 20_000.0, 2, n, &p).is_err());
        let far = path_probability(3.0, 9000.0, 40, n, &p).unwrap();
        assert!((far - 1.0).abs() < 1e-12);
    }

    #[test]
    fn diameter_is_first_to_last_distance() {
        let p = params(5, 3.0, 0.5);
        for n in [10u64, 100, 10_000, 1_000_000] {
            let d = expected_diameter(n, &p).unwrap();
            assert_eq!(d, expected_distance(1.0, n as f64, n, &p).unwrap());
        }
        assert!(expected_diameter(1, &p).is_err());
    }

    #[test]
    fn tiny_k_times_h_is_degenerate() {
        // beta barely above theta drives m - c, and so K, towards zero.
        let p = params(1, 1.0, 0.999);
        assert!(matches!(expected_diameter(3, &p), Err(Error::DegenerateParameters(_))));
    }

    #[test]
    fn distance_offset_is_configurable() {
        let p = params(5, 3.0, 0.5);
        let q = p.with_distance_offset(0.0);
        let d_default = expected_diameter(1000, &p).unwrap();
        let d_zero = expected_diameter(1000, &q).unwrap();
        let denom = (p.k_coef() * harmonic(1000).unwrap()).ln();
        assert!((d_zero - d_default - EULER_GAMMA / denom).abs() < 1e-12);
    }
}
