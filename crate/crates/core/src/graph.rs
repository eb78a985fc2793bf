//! Append-only simple undirected graph.
//!
//! Node ids are contiguous and equal to arrival order: the seed network
//! occupies `0..m0` and every attached node takes the next id. Neighbor
//! lists are kept sorted, which for append-only growth is free: a newly
//! attached node always has the largest id, so pushing it onto each
//! target's list preserves order.

use std::io::{BufRead, Write};

use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// The complete graph `K_n`.
    pub fn complete(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("complete graph needs at least one node"));
        }
        let adjacency = (0..n)
            .map(|i| (0..n).filter(|&j| j != i).collect())
            .collect();
        Ok(Self {
            adjacency,
            edge_count: n * (n - 1) / 2,
        })
    }

    /// Builds a graph from an explicit edge list. Self-loops, duplicate
    /// edges and out-of-range endpoints are rejected.
    pub fn from_edges(node_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); node_count];
        for &(u, v) in edges {
            if u >= node_count || v >= node_count {
                return Err(invalid(format!(
                    "edge ({u}, {v}) out of range for {node_count} nodes"
                )));
            }
            if u == v {
                return Err(invalid(format!("self-loop at node {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(invalid(format!("duplicate edge ({u}, {})", w[0])));
            }
        }
        Ok(Self {
            adjacency,
            edge_count: edges.len(),
        })
    }

    /// Appends a node linked to every id in `targets` and returns its id.
    pub fn attach_node(&mut self, targets: &[usize]) -> Result<usize> {
        if targets.is_empty() {
            return Err(invalid("attach_node needs at least one target"));
        }
        let id = self.adjacency.len();
        let mut sorted = targets.to_vec();
        sorted.sort_unstable();
        if let Some(&t) = sorted.iter().find(|&&t| t >= id) {
            return Err(invalid(format!("target {t} does not exist (node count {id})")));
        }
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(invalid(format!("duplicate target {}", w[0])));
        }
        for &t in &sorted {
            self.adjacency[t].push(id);
        }
        self.edge_count += sorted.len();
        self.adjacency.push(sorted);
        Ok(id)
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn degrees(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.adjacency.iter().map(Vec::len)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().min().unwrap_or(0)
    }

    /// Sorted neighbor ids of `node`.
    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.node_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            let start = list.partition_point(|&v| v <= u);
            list[start..].iter().map(move |&v| (u, v))
        })
    }

    /// Average degree `2|E| / |N|`.
    pub fn mean_degree(&self) -> Result<f64> {
        if self.is_empty() {
            return Err(invalid("mean degree of an empty graph"));
        }
        Ok(2.0 * self.edge_count as f64 / self.node_count() as f64)
    }

    /// Walks the whole structure and checks symmetry, simplicity, sortedness
    /// and the degree-sum identity.
    pub fn validate(&self) -> Result<()> {
        let n = self.node_count();
        let mut degree_sum = 0;
        for (u, list) in self.adjacency.iter().enumerate() {
            degree_sum += list.len();
            for w in list.windows(2) {
                if w[0] >= w[1] {
                    return Err(invalid(format!("neighbors of {u} not strictly sorted")));
                }
            }
            for &v in list {
                if v >= n || v == u {
                    return Err(invalid(format!("bad neighbor {v} of {u}")));
                }
                if self.adjacency[v].binary_search(&u).is_err() {
                    return Err(invalid(format!("asymmetric edge ({u}, {v})")));
                }
            }
        }
        if degree_sum != 2 * self.edge_count {
            return Err(invalid(format!(
                "degree sum {degree_sum} != 2 * edge count {}",
                self.edge_count
            )));
        }
        Ok(())
    }

    /// Canonical edge list: `u v` per line with `u < v`, lexicographic order.
    pub fn write_edge_list<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}")?;
        }
        out.flush()
    }

    pub fn to_edge_list_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_edge_list(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("edge list is ascii")
    }

    /// Parses an edge list. The node count is one past the largest id seen.
    pub fn read_edge_list<R: BufRead>(input: R) -> Result<Self> {
        let mut edges = Vec::new();
        let mut max_id = None;
        for (idx, line) in input.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.map_err(|e| Error::Parse {
                line: lineno,
                message: e.to_string(),
            })?;
            let mut fields = line.split_whitespace();
            let (Some(a), Some(b), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected two node ids, got {line:?}"),
                });
            };
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|e| Error::Parse {
                    line: lineno,
                    message: format!("bad node id {s:?}: {e}"),
                })
            };
            let (u, v) = (parse(a)?, parse(b)?);
            if u == v {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("self-loop at node {u}"),
                });
            }
            max_id = max_id.max(Some(u.max(v)));
            edges.push((u.min(v), u.max(v)));
        }
        let n = max_id.map_or(0, |m| m + 1);
        let mut sorted = edges.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            let line = edges.iter().rposition(|e| *e == w[0]).unwrap() + 1;
            return Err(Error::Parse {
                line,
                message: format!("duplicate edge ({}, {})", w[0].0, w[0].1),
            });
        }
        Self::from_edges(n, &edges)
    }
}
