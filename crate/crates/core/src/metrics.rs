//! Structural metrics: clustering, assortativity, triangles, hop diameter
//! and the degree histogram.

use std::collections::{BTreeMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

/// Graphs up to this many nodes get an exact all-sources BFS diameter.
pub const DEFAULT_EXACT_DIAMETER_CUTOFF: usize = 20_000;

const SWEEP_STARTS: usize = 4;
const SWEEP_ROUNDS: usize = 3;

/// Size of the sorted intersection of two sorted slices.
fn intersection_len(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Fraction of neighbor pairs of `node` that are adjacent. Nodes of degree
/// below two have no pairs and score zero.
pub fn local_clustering(g: &Graph, node: usize) -> Result<f64> {
    if node >= g.node_count() {
        return Err(invalid(format!("node {node} out of range")));
    }
    let nbrs = g.neighbors(node);
    let k = nbrs.len();
    if k < 2 {
        return Ok(0.0);
    }
    let links: usize = nbrs.iter().map(|&u| intersection_len(nbrs, g.neighbors(u))).sum::<usize>() / 2;
    Ok(2.0 * links as f64 / (k * (k - 1)) as f64)
}

/// Neighbor lists restricted to higher-ranked nodes, ranking by (degree, id).
fn forward_lists(g: &Graph) -> Vec<Vec<usize>> {
    let above = |u: usize, v: usize| (g.degree(v), v) > (g.degree(u), u);
    (0..g.node_count())
        .map(|u| g.neighbors(u).iter().copied().filter(|&v| above(u, v)).collect())
        .collect()
}

/// Number of triangles through each node.
pub fn node_triangles(g: &Graph) -> Vec<u64> {
    let forward = forward_lists(g);
    let mut counts = vec![0u64; g.node_count()];
    let mut common = Vec::new();
    for u in 0..g.node_count() {
        for &v in &forward[u] {
            common.clear();
            let (a, b) = (&forward[u], &forward[v]);
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        common.push(a[i]);
                        i += 1;
                        j += 1;
                    }
                }
            }
            counts[u] += common.len() as u64;
            counts[v] += common.len() as u64;
            for &w in &common {
                counts[w] += 1;
            }
        }
    }
    counts
}

/// Number of triangles. Each one is found exactly once, from its
/// lowest-ranked vertex along the degree orientation.
pub fn triangle_count(g: &Graph) -> u64 {
    let forward = forward_lists(g);
    (0..g.node_count())
        .into_par_iter()
        .map(|u| {
            forward[u]
                .iter()
                .map(|&v| intersection_len(&forward[u], &forward[v]) as u64)
                .sum::<u64>()
        })
        .sum()
}

/// Mean of [`local_clustering`] over all nodes.
pub fn global_clustering(g: &Graph) -> Result<f64> {
    if g.is_empty() {
        return Err(invalid("clustering of an empty graph"));
    }
    let total: f64 = node_triangles(g)
        .iter()
        .enumerate()
        .map(|(u, &t)| {
            let k = g.degree(u) as f64;
            if k < 2.0 {
                0.0
            } else {
                2.0 * t as f64 / (k * (k - 1.0))
            }
        })
        .sum();
    Ok(total / g.node_count() as f64)
}

/// Degree assortativity in the Newman form
///
/// ```text
///   sum_ij (a_ij - k_i k_j / 2M) k_i k_j  /  sum_ij (k_i delta_ij - k_i k_j / 2M) k_i k_j
/// ```
///
/// Expanding both sums gives `(2M S_a - S_2^2) / (2M S_3 - S_2^2)` where
/// `S_a = sum_ij a_ij k_i k_j` and `S_p = sum_i k_i^p`, all integers, so the
/// ratio is formed from exact values.
pub fn assortativity(g: &Graph) -> Result<f64> {
    let m = g.edge_count() as i128;
    if m == 0 {
        return Err(Error::UndefinedAssortativity("graph has no edges"));
    }
    let (mut s2, mut s3) = (0i128, 0i128);
    for k in g.degrees() {
        let k = k as i128;
        s2 += k * k;
        s3 += k * k * k;
    }
    let sa: i128 = g
        .edges()
        .map(|(u, v)| 2 * g.degree(u) as i128 * g.degree(v) as i128)
        .sum();
    let numer = 2 * m * sa - s2 * s2;
    let denom = 2 * m * s3 - s2 * s2;
    if denom == 0 {
        return Err(Error::UndefinedAssortativity("degree-regular graph"));
    }
    Ok(numer as f64 / denom as f64)
}

/// Hop diameter, possibly a lower-bound estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Diameter {
    Finite { hops: usize, is_estimate: bool },
    /// The graph is disconnected.
    Infinite,
}

impl Diameter {
    pub fn hops(self) -> Option<usize> {
        match self {
            Diameter::Finite { hops, .. } => Some(hops),
            Diameter::Infinite => None,
        }
    }

    pub fn is_estimate(self) -> bool {
        matches!(self, Diameter::Finite { is_estimate: true, .. })
    }
}

/// BFS from `source`, returning (eccentricity, farthest node, nodes reached).
fn bfs(g: &Graph, source: usize, dist: &mut [u32], queue: &mut VecDeque<usize>) -> (usize, usize, usize) {
    dist.fill(u32::MAX);
    queue.clear();
    dist[source] = 0;
    queue.push_back(source);
    let (mut far, mut far_d, mut reached) = (source, 0, 1);
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        for &v in g.neighbors(u) {
            if dist[v] == u32::MAX {
                dist[v] = du + 1;
                reached += 1;
                if du + 1 > far_d || (du + 1 == far_d && v < far) {
                    far_d = du + 1;
                    far = v;
                }
                queue.push_back(v);
            }
        }
    }
    (far_d as usize, far, reached)
}

pub fn is_connected(g: &Graph) -> bool {
    if g.is_empty() {
        return true;
    }
    let mut dist = vec![0; g.node_count()];
    bfs(g, 0, &mut dist, &mut VecDeque::new()).2 == g.node_count()
}

pub fn bfs_diameter(g: &Graph) -> Result<Diameter> {
    bfs_diameter_with_cutoff(g, DEFAULT_EXACT_DIAMETER_CUTOFF)
}

/// Exact diameter (max BFS eccentricity over all sources) when the graph
/// has at most `exact_cutoff` nodes. Larger graphs get the best lower bound
/// from iterated double sweeps started at the max-degree node and a few
/// seeded random nodes.
pub fn bfs_diameter_with_cutoff(g: &Graph, exact_cutoff: usize) -> Result<Diameter> {
    if g.is_empty() {
        return Err(invalid("diameter of an empty graph"));
    }
    if !is_connected(g) {
        return Ok(Diameter::Infinite);
    }
    let n = g.node_count();
    if n <= exact_cutoff {
        let hops = (0..n)
            .into_par_iter()
            .map_init(
                || (vec![0u32; n], VecDeque::new()),
                |(dist, queue), s| bfs(g, s, dist, queue).0,
            )
            .max()
            .unwrap_or(0);
        return Ok(Diameter::Finite { hops, is_estimate: false });
    }

    let mut dist = vec![0u32; n];
    let mut queue = VecDeque::new();
    let hub = (0..n).max_by_key(|&u| (g.degree(u), std::cmp::Reverse(u))).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
    let mut starts = vec![hub];
    starts.extend((1..SWEEP_STARTS).map(|_| rng.random_range(0..n)));
    let mut best = 0;
    for start in starts {
        let (_, mut from, _) = bfs(g, start, &mut dist, &mut queue);
        for _ in 0..SWEEP_ROUNDS {
            let (ecc, far, _) = bfs(g, from, &mut dist, &mut queue);
            if ecc <= best {
                break;
            }
            best = ecc;
            from = far;
        }
    }
    Ok(Diameter::Finite { hops: best, is_estimate: true })
}

/// Degree → number of nodes with that degree, ascending by degree.
pub fn degree_histogram(g: &Graph) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for k in g.degrees() {
        *hist.entry(k).or_insert(0) += 1;
    }
    hist
}

/// Structural summary of one graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsReport {
    pub node_count: usize,
    pub edge_count: usize,
    pub clustering: f64,
    /// `None` when undefined (no edges or a regular graph).
    pub assortativity: Option<f64>,
    pub triangles: u64,
    pub diameter: Diameter,
    pub degree_histogram: BTreeMap<usize, usize>,
}

impl MetricsReport {
    pub fn compute(g: &Graph, exact_diameter_cutoff: usize) -> Result<Self> {
        let assortativity = match assortativity(g) {
            Ok(r) => Some(r),
            Err(Error::UndefinedAssortativity(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(Self {
            node_count: g.node_count(),
            edge_count: g.edge_count(),
            clustering: global_clustering(g)?,
            assortativity,
            triangles: triangle_count(g),
            diameter: bfs_diameter_with_cutoff(g, exact_diameter_cutoff)?,
            degree_histogram: degree_histogram(g),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn path(n: usize) -> Graph {
        graph(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>())
    }

    fn cycle(n: usize) -> Graph {
        graph(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
    }

    fn star(leaves: usize) -> Graph {
        graph(leaves + 1, &(1..=leaves).map(|i| (0, i)).collect::<Vec<_>>())
    }

    fn k4_minus_edge() -> Graph {
        graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    }

    #[test]
    fn local_clustering_cases() {
        assert_eq!(local_clustering(&Graph::complete(3).unwrap(), 1).unwrap(), 1.0);
        assert_eq!(local_clustering(&path(3), 1).unwrap(), 0.0);
        assert_eq!(local_clustering(&path(3), 0).unwrap(), 0.0);
        assert!((local_clustering(&k4_minus_edge(), 0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!(local_clustering(&path(3), 3).is_err());
    }

    #[test]
    fn global_clustering_cases() {
        assert_eq!(global_clustering(&Graph::complete(6).unwrap()).unwrap(), 1.0);
        assert_eq!(global_clustering(&star(5)).unwrap(), 0.0);
        assert!((global_clustering(&k4_minus_edge()).unwrap() - 5.0 / 6.0).abs() < 1e-15);
        assert!(global_clustering(&Graph::default()).is_err());
    }

    #[test]
    fn assortativity_cases() {
        assert!((assortativity(&path(4)).unwrap() + 0.5).abs() < 1e-15);
        assert!((assortativity(&star(3)).unwrap() + 1.0).abs() < 1e-15);
        assert!(matches!(assortativity(&cycle(5)), Err(Error::UndefinedAssortativity(_))));
        assert!(matches!(assortativity(&graph(3, &[])), Err(Error::UndefinedAssortativity(_))));
    }

    #[test]
    fn triangle_cases() {
        assert_eq!(triangle_count(&Graph::complete(4).unwrap()), 4);
        assert_eq!(triangle_count(&Graph::complete(7).unwrap()), 35);
        assert_eq!(triangle_count(&cycle(5)), 0);
        assert_eq!(triangle_count(&k4_minus_edge()), 2);
        assert_eq!(node_triangles(&k4_minus_edge()), vec![2, 2, 1, 1]);
    }

    #[test]
    fn diameter_cases() {
        let exact = |hops| Diameter::Finite { hops, is_estimate: false };
        assert_eq!(bfs_diameter(&Graph::complete(5).unwrap()).unwrap(), exact(1));
        assert_eq!(bfs_diameter(&path(5)).unwrap(), exact(4));
        assert_eq!(bfs_diameter(&cycle(6)).unwrap(), exact(3));
        assert_eq!(bfs_diameter(&graph(1, &[])).unwrap(), exact(0));
        assert_eq!(bfs_diameter(&graph(4, &[(0, 1), (2, 3)])).unwrap(), Diameter::Infinite);
        assert!(bfs_diameter(&Graph::default()).is_err());
    }

    #[test]
    fn double_sweep_is_flagged_and_exact_on_paths() {
        let d = bfs_diameter_with_cutoff(&path(50), 10).unwrap();
        assert_eq!(d, Diameter::Finite { hops: 49, is_estimate: true });
        let d = bfs_diameter_with_cutoff(&cycle(40), 10).unwrap();
        assert_eq!(d.hops(), Some(20));
    }

    #[test]
    fn histogram_cases() {
        let h = degree_histogram(&Graph::complete(7).unwrap());
        assert_eq!(h.into_iter().collect::<Vec<_>>(), vec![(6, 7)]);
        let h = degree_histogram(&star(4));
        assert_eq!(h.into_iter().collect::<Vec<_>>(), vec![(1, 4), (4, 1)]);
        let mut g = Graph::complete(7).unwrap();
        g.attach_node(&[0, 1, 2, 3, 4]).unwrap();
        let h = degree_histogram(&g);
        assert_eq!(h.into_iter().collect::<Vec<_>>(), vec![(5, 1), (6, 2), (7, 5)]);
    }

    #[test]
    fn report_histogram_invariants() {
        let r = MetricsReport::compute(&k4_minus_edge(), 100).unwrap();
        assert_eq!(r.degree_histogram.values().sum::<usize>(), r.node_count);
        assert_eq!(
            r.degree_histogram.iter().map(|(k, c)| k * c).sum::<usize>(),
            2 * r.edge_count
        );
        assert_eq!(r.assortativity.map(|a| a < 0.0), Some(true));
        let r = MetricsReport::compute(&Graph::complete(4).unwrap(), 100).unwrap();
        assert_eq!(r.assortativity, None);
    }
}
