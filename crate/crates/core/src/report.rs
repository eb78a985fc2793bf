//! Combined per-graph reports and paired model comparisons.
//!
//! [`AnalysisReport`] serializes to one flat JSON object. A metric that
//! cannot be computed is written as `null` and gets a sibling `<key>_reason`
//! string, e.g. `"assortativity": null, "assortativity_reason": "..."`.

use serde::ser::{Serialize, SerializeMap, Serializer};

use crate::error::{Error, Result};
use crate::generator::{generate, Model, ModelParams, Sampler};
use crate::graph::Graph;
use crate::metrics::{
    assortativity, bfs_diameter_with_cutoff, global_clustering, triangle_count, Diameter,
    DEFAULT_EXACT_DIAMETER_CUTOFF,
};
use crate::powerlaw::{fit_powerlaw_with, ks_pvalue_with, FitOptions};
use crate::spectral::{algebraic_connectivity, spectral_radius, SpectralOptions};

/// A value or the reason it is missing.
pub type Field<T> = std::result::Result<T, String>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisOptions {
    pub exact_diameter_cutoff: usize,
    pub spectral: SpectralOptions,
    pub fit: FitOptions,
    /// Bootstrap replicates for the power-law p-value, or `None` to skip it.
    pub bootstrap: Option<usize>,
    /// Seed for the bootstrap.
    pub seed: u64,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            exact_diameter_cutoff: DEFAULT_EXACT_DIAMETER_CUTOFF,
            spectral: SpectralOptions::default(),
            fit: FitOptions::default(),
            bootstrap: None,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub clustering: f64,
    pub assortativity: Field<f64>,
    pub triangles: u64,
    pub diameter: Field<usize>,
    pub diameter_is_estimate: bool,
    pub lambda2: Field<f64>,
    pub spectral_radius: Field<f64>,
    pub gamma_hat: Field<f64>,
    pub x_min: Field<u64>,
    pub ks: Field<f64>,
    pub p_value: Field<f64>,
    pub nodes: usize,
    pub edges: usize,
}

fn reason(e: Error) -> String {
    e.to_string()
}

impl AnalysisReport {
    /// Runs every measurement. Only an empty graph is a hard error; any
    /// single metric that fails is recorded as missing.
    pub fn compute(g: &Graph, opts: &AnalysisOptions) -> Result<Self> {
        opts.spectral.validate()?;
        let clustering = global_clustering(g)?;
        let (diameter, diameter_is_estimate) = match bfs_diameter_with_cutoff(g, opts.exact_diameter_cutoff)? {
            Diameter::Finite { hops, is_estimate } => (Ok(hops), is_estimate),
            Diameter::Infinite => (Err("graph is disconnected".to_string()), false),
        };
        let degrees: Vec<u64> = g.degrees().map(|k| k as u64).collect();
        let fit = fit_powerlaw_with(&degrees, &opts.fit).map_err(reason);
        let p_value = match (&fit, opts.bootstrap) {
            (_, None) => Err("not requested".to_string()),
            (Err(why), Some(_)) => Err(why.clone()),
            (Ok(f), Some(n_boot)) => ks_pvalue_with(&degrees, f, n_boot, opts.seed, &opts.fit).map_err(reason),
        };
        Ok(Self {
            clustering,
            assortativity: assortativity(g).map_err(reason),
            triangles: triangle_count(g),
            diameter,
            diameter_is_estimate,
            lambda2: algebraic_connectivity(g, &opts.spectral).map_err(reason),
            spectral_radius: spectral_radius(g, &opts.spectral).map_err(reason),
            gamma_hat: fit.as_ref().map(|f| f.gamma_hat).map_err(Clone::clone),
            x_min: fit.as_ref().map(|f| f.x_min).map_err(Clone::clone),
            ks: fit.as_ref().map(|f| f.ks_distance).map_err(Clone::clone),
            p_value,
            nodes: g.node_count(),
            edges: g.edge_count(),
        })
    }

    /// Numeric metric by report key, if defined.
    pub fn metric(&self, key: &str) -> Option<f64> {
        match key {
            "clustering" => Some(self.clustering),
            "assortativity" => self.assortativity.clone().ok(),
            "triangles" => Some(self.triangles as f64),
            "diameter" => self.diameter.clone().ok().map(|d| d as f64),
            "lambda2" => self.lambda2.clone().ok(),
            "spectral_radius" => self.spectral_radius.clone().ok(),
            "gamma_hat" => self.gamma_hat.clone().ok(),
            "ks" => self.ks.clone().ok(),
            _ => None,
        }
    }
}

fn entry<M: SerializeMap, T: Serialize>(map: &mut M, key: &str, field: &Field<T>) -> std::result::Result<(), M::Error> {
    match field {
        Ok(v) => map.serialize_entry(key, v),
        Err(why) => {
            map.serialize_entry(key, &())?;
            map.serialize_entry(&format!("{key}_reason"), why)
        }
    }
}

impl Serialize for AnalysisReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("clustering", &self.clustering)?;
        entry(&mut map, "assortativity", &self.assortativity)?;
        map.serialize_entry("triangles", &self.triangles)?;
        entry(&mut map, "diameter", &self.diameter)?;
        map.serialize_entry("diameter_is_estimate", &self.diameter_is_estimate)?;
        entry(&mut map, "lambda2", &self.lambda2)?;
        entry(&mut map, "spectral_radius", &self.spectral_radius)?;
        entry(&mut map, "gamma_hat", &self.gamma_hat)?;
        entry(&mut map, "x_min", &self.x_min)?;
        entry(&mut map, "ks", &self.ks)?;
        entry(&mut map, "p_value", &self.p_value)?;
        map.serialize_entry("nodes", &self.nodes)?;
        map.serialize_entry("edges", &self.edges)?;
        map.end()
    }
}

/// Metrics summarized by [`compare`].
pub const COMPARED_METRICS: [&str; 7] = [
    "gamma_hat",
    "clustering",
    "assortativity",
    "triangles",
    "diameter",
    "lambda2",
    "spectral_radius",
];

/// Paired statistics for one metric over seeds where both models define it.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct DeltaSummary {
    pub pairs: usize,
    pub cdpam_mean: Option<f64>,
    pub ba_mean: Option<f64>,
    /// Mean of CDPAM minus BA.
    pub delta_mean: Option<f64>,
    /// Sample standard deviation of the paired differences.
    pub delta_std: Option<f64>,
    /// `sqrt((s_cdpam^2 + s_ba^2) / 2)` from the two sample variances.
    pub pooled_std: Option<f64>,
}

fn mean(x: &[f64]) -> Option<f64> {
    (!x.is_empty()).then(|| x.iter().sum::<f64>() / x.len() as f64)
}

fn sample_var(x: &[f64]) -> Option<f64> {
    let mu = mean(x)?;
    (x.len() > 1).then(|| x.iter().map(|v| (v - mu).powi(2)).sum::<f64>() / (x.len() - 1) as f64)
}

impl DeltaSummary {
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Self {
        let a: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let b: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        let d: Vec<f64> = pairs.iter().map(|p| p.0 - p.1).collect();
        let pooled = sample_var(&a).zip(sample_var(&b)).map(|(va, vb)| ((va + vb) / 2.0).sqrt());
        Self {
            pairs: pairs.len(),
            cdpam_mean: mean(&a),
            ba_mean: mean(&b),
            delta_mean: mean(&d),
            delta_std: sample_var(&d).map(f64::sqrt),
            pooled_std: pooled,
        }
    }
}

/// CDPAM and BA grown on the same seeds, with per-metric deltas.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Comparison {
    pub m0: usize,
    pub m: usize,
    pub beta: f64,
    pub theta: f64,
    pub n: usize,
    pub seeds: Vec<u64>,
    pub cdpam: Vec<AnalysisReport>,
    pub ba: Vec<AnalysisReport>,
    pub delta: std::collections::BTreeMap<&'static str, DeltaSummary>,
}

/// Grows both models for every seed in `seeds` and analyzes them. The
/// `seed` in `params` is ignored; the bootstrap seed for run `s` is `s`.
pub fn compare(params: &ModelParams, seeds: &[u64], opts: &AnalysisOptions) -> Result<Comparison> {
    use rayon::prelude::*;
    if seeds.is_empty() {
        return Err(crate::error::invalid("compare needs at least one seed"));
    }
    params.validate()?;
    let runs: Vec<(AnalysisReport, AnalysisReport)> = seeds
        .par_iter()
        .map(|&seed| {
            let p = ModelParams { seed, ..*params };
            let o = AnalysisOptions { seed, ..*opts };
            let a = AnalysisReport::compute(&generate(&p, Model::Cdpam, Sampler::Incremental)?, &o)?;
            let b = AnalysisReport::compute(&generate(&p, Model::Ba, Sampler::Incremental)?, &o)?;
            Ok((a, b))
        })
        .collect::<Result<_>>()?;
    let (cdpam, ba): (Vec<_>, Vec<_>) = runs.into_iter().unzip();
    let delta = COMPARED_METRICS
        .iter()
        .map(|&key| {
            let pairs: Vec<(f64, f64)> = cdpam
                .iter()
                .zip(&ba)
                .filter_map(|(a, b)| Some((a.metric(key)?, b.metric(key)?)))
                .collect();
            (key, DeltaSummary::from_pairs(&pairs))
        })
        .collect();
    Ok(Comparison {
        m0: params.m0,
        m: params.m,
        beta: params.beta,
        theta: params.theta,
        n: params.n_steps,
        seeds: seeds.to_vec(),
        cdpam,
        ba,
        delta,
    })
}
