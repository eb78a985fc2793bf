//! Algebraic connectivity and spectral radius.
//!
//! Algebraic connectivity is the second-smallest eigenvalue of the
//! Laplacian `L = D - A` (the Fiedler value), which is positive exactly when
//! the graph is connected. The spectral radius is the largest adjacency
//! eigenvalue; for a symmetric nonnegative matrix it equals the largest
//! eigenvalue modulus.
//!
//! Graphs up to `dense_cutoff` nodes go through a full symmetric
//! eigendecomposition. Larger graphs use a restarted Lanczos iteration with
//! full re-orthogonalization, which needs only matrix-vector products. For
//! the Fiedler value every Krylov vector is kept orthogonal to the all-ones
//! null vector, so the smallest Ritz value on that complement converges to
//! `lambda_2`. For the spectral radius the Krylov space grows from the
//! degree vector, which overlaps strongly with the Perron vector of a
//! hub-dominated graph.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::metrics::is_connected;

const PARALLEL_MATVEC: usize = 4096;
const MAX_KRYLOV: usize = 320;
const RITZ_CHECK_EVERY: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralOptions {
    /// Relative eigenvalue tolerance.
    pub tolerance: f64,
    /// Matrix-vector product budget for the iterative path.
    pub max_iterations: usize,
    /// Largest node count handled by the dense path.
    pub dense_cutoff: usize,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-8,
            max_iterations: 10_000,
            dense_cutoff: 2000,
        }
    }
}

impl SpectralOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance <= 1e-2) {
            return Err(invalid(format!("tolerance {} outside (0, 1e-2]", self.tolerance)));
        }
        if self.dense_cutoff < 2 {
            return Err(invalid("dense_cutoff must be at least 2"));
        }
        if self.max_iterations == 0 {
            return Err(invalid("max_iterations must be positive"));
        }
        Ok(())
    }
}

fn laplacian_matvec(g: &Graph, x: &[f64], y: &mut [f64]) {
    let row = |i: usize| g.degree(i) as f64 * x[i] - g.neighbors(i).iter().map(|&j| x[j]).sum::<f64>();
    if x.len() >= PARALLEL_MATVEC {
        y.par_iter_mut().enumerate().for_each(|(i, yi)| *yi = row(i));
    } else {
        y.iter_mut().enumerate().for_each(|(i, yi)| *yi = row(i));
    }
}

fn adjacency_matvec(g: &Graph, x: &[f64], y: &mut [f64]) {
    let row = |i: usize| g.neighbors(i).iter().map(|&j| x[j]).sum::<f64>();
    if x.len() >= PARALLEL_MATVEC {
        y.par_iter_mut().enumerate().for_each(|(i, yi)| *yi = row(i));
    } else {
        y.iter_mut().enumerate().for_each(|(i, yi)| *yi = row(i));
    }
}

fn dense_laplacian(g: &Graph) -> DMatrix<f64> {
    let n = g.node_count();
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = g.degree(i) as f64;
        for &j in g.neighbors(i) {
            m[(i, j)] = -1.0;
        }
    }
    m
}

fn dense_adjacency(g: &Graph) -> DMatrix<f64> {
    let n = g.node_count();
    let mut m = DMatrix::zeros(n, n);
    for (i, j) in g.edges() {
        m[(i, j)] = 1.0;
        m[(j, i)] = 1.0;
    }
    m
}

fn sorted_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Full Laplacian spectrum, ascending. Intended for small graphs.
pub fn laplacian_spectrum(g: &Graph) -> Vec<f64> {
    sorted_eigenvalues(dense_laplacian(g))
}

/// Full adjacency spectrum, ascending. Intended for small graphs.
pub fn adjacency_spectrum(g: &Graph) -> Vec<f64> {
    sorted_eigenvalues(dense_adjacency(g))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    y.iter_mut().zip(x).for_each(|(yi, xi)| *yi += alpha * xi);
}

/// Removes the component along the all-ones direction.
fn center(x: &mut [f64]) {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    x.iter_mut().for_each(|v| *v -= mean);
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum End {
    Smallest,
    Largest,
}

struct Lanczos<'a, F> {
    apply: F,
    n: usize,
    centered: bool,
    end: End,
    opts: &'a SpectralOptions,
}

impl<F: Fn(&[f64], &mut [f64])> Lanczos<'_, F> {
    /// Smallest or largest eigenvalue (restricted to the complement of the
    /// ones vector when `centered`), with explicit restarts from the current
    /// Ritz vector.
    fn run(&self, mut start: Vec<f64>) -> Result<f64> {
        let krylov = MAX_KRYLOV.min(self.n - usize::from(self.centered)).max(1);
        let mut matvecs = 0;
        let mut best = (f64::NAN, f64::INFINITY);
        loop {
            if self.centered {
                center(&mut start);
            }
            let s = norm(&start);
            if s == 0.0 {
                return Err(invalid("Lanczos start vector vanished"));
            }
            start.iter_mut().for_each(|v| *v /= s);

            let mut basis: Vec<Vec<f64>> = vec![start];
            let (mut alpha, mut beta) = (Vec::new(), Vec::new());
            let mut w = vec![0.0; self.n];
            loop {
                let j = basis.len() - 1;
                (self.apply)(&basis[j], &mut w);
                matvecs += 1;
                let a = dot(&basis[j], &w);
                alpha.push(a);
                // Two passes of classical Gram-Schmidt against the whole basis,
                // plus the ones vector when centered.
                for _ in 0..2 {
                    if self.centered {
                        center(&mut w);
                    }
                    for v in &basis {
                        let h = dot(v, &w);
                        axpy(-h, v, &mut w);
                    }
                }
                let b = norm(&w);
                let exhausted = b <= 1e-14 * a.abs().max(1.0) || basis.len() == krylov;
                let budget_gone = matvecs >= self.opts.max_iterations;
                if exhausted || budget_gone || basis.len() % RITZ_CHECK_EVERY == 0 {
                    let (theta, coeffs) = self.ritz(&alpha, &beta);
                    let residual = b * coeffs[coeffs.len() - 1].abs();
                    if residual < best.1 {
                        best = (theta, residual);
                    }
                    let converged = residual <= self.opts.tolerance * theta.abs()
                        || b <= 1e-14 * a.abs().max(1.0);
                    if converged {
                        return Ok(theta);
                    }
                    if budget_gone {
                        return Err(Error::NoConvergence {
                            iterations: matvecs,
                            estimate: best.0,
                            residual: best.1,
                        });
                    }
                    if basis.len() == krylov {
                        let mut ritz = vec![0.0; self.n];
                        for (v, c) in basis.iter().zip(&coeffs) {
                            axpy(*c, v, &mut ritz);
                        }
                        start = ritz;
                        break;
                    }
                }
                beta.push(b);
                w.iter_mut().for_each(|x| *x /= b);
                basis.push(std::mem::replace(&mut w, vec![0.0; self.n]));
            }
        }
    }

    /// Extreme eigenpair of the tridiagonal projection.
    fn ritz(&self, alpha: &[f64], beta: &[f64]) -> (f64, Vec<f64>) {
        let k = alpha.len();
        let mut t = DMatrix::zeros(k, k);
        for i in 0..k {
            t[(i, i)] = alpha[i];
            if i + 1 < k {
                t[(i, i + 1)] = beta[i];
                t[(i + 1, i)] = beta[i];
            }
        }
        let eig = SymmetricEigen::new(t);
        let pick = (0..k)
            .reduce(|best, i| {
                let better = match self.end {
                    End::Smallest => eig.eigenvalues[i] < eig.eigenvalues[best],
                    End::Largest => eig.eigenvalues[i] > eig.eigenvalues[best],
                };
                if better {
                    i
                } else {
                    best
                }
            })
            .unwrap();
        (eig.eigenvalues[pick], eig.eigenvectors.column(pick).iter().copied().collect())
    }
}

/// Fiedler value of the Laplacian. Zero for disconnected graphs and for a single node.
pub fn algebraic_connectivity(g: &Graph, opts: &SpectralOptions) -> Result<f64> {
    opts.validate()?;
    if g.is_empty() {
        return Err(invalid("algebraic connectivity of an empty graph"));
    }
    let n = g.node_count();
    if n == 1 || !is_connected(g) {
        return Ok(0.0);
    }
    if n <= opts.dense_cutoff {
        return Ok(laplacian_spectrum(g)[1].max(0.0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f1ed);
    let start: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    Lanczos {
        apply: |x: &[f64], y: &mut [f64]| laplacian_matvec(g, x, y),
        n,
        centered: true,
        end: End::Smallest,
        opts,
    }
    .run(start)
}

/// Largest adjacency eigenvalue.
pub fn spectral_radius(g: &Graph, opts: &SpectralOptions) -> Result<f64> {
    opts.validate()?;
    if g.is_empty() {
        return Err(invalid("spectral radius of an empty graph"));
    }
    if g.edge_count() == 0 {
        return Ok(0.0);
    }
    let n = g.node_count();
    if n <= opts.dense_cutoff {
        return Ok(adjacency_spectrum(g).last().copied().unwrap_or(0.0).max(0.0));
    }
    let start: Vec<f64> = g.degrees().map(|k| k as f64 + 1.0).collect();
    Lanczos {
        apply: |x: &[f64], y: &mut [f64]| adjacency_matvec(g, x, y),
        n,
        centered: false,
        end: End::Largest,
        opts,
    }
    .run(start)
}
