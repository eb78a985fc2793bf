//! Context-dependent preferential attachment (CDPAM) graphs.
//!
//! Growing networks where a newcomer attaches to node `i` with weight
//! `beta * k_i + theta * (k_i - mean_degree)`, alongside the
//! degree-proportional (Barabási–Albert) baseline, the mean-field closed
//! forms for the model, and the measurements used to compare the two:
//! clustering, assortativity, triangles, hop diameter, algebraic
//! connectivity, spectral radius and power-law tail fits.
//!
//! ```no_run
//! use cdpam::generator::{generate_cdpam, ModelParams};
//! use cdpam::metrics::global_clustering;
//!
//! let g = generate_cdpam(&ModelParams::standard(0.6, 5000, 1)).unwrap();
//! println!("clustering = {}", global_clustering(&g).unwrap());
//! ```

pub mod cli;
pub mod error;
pub mod generator;
pub mod graph;
pub mod metrics;
pub mod powerlaw;
pub mod report;
pub mod spectral;
pub mod theory;

pub use error::{Error, Result};
pub use generator::{generate_ba, generate_cdpam, Model, ModelParams};
pub use graph::Graph;
pub use theory::TheoryParams;
