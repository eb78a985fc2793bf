//! Dense brute-force reference implementations shared by several test targets.
#![allow(dead_code)]

use cdpam::Graph;
use rand::Rng;

/// Random simple graph on 1..=max_n nodes; edge density and connectivity vary.
pub fn random_graph<R: Rng>(rng: &mut R, max_n: usize) -> Graph {
    let n = rng.random_range(1..=max_n);
    let p: f64 = rng.random_range(0.02..0.9);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn dense(g: &Graph) -> Vec<Vec<i64>> {
    let n = g.node_count();
    let mut a = vec![vec![0i64; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = 1;
        a[v][u] = 1;
    }
    a
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != 0 {
                for j in 0..n {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    c
}

/// trace(A^3) / 6.
pub fn triangles(g: &Graph) -> u64 {
    let a = dense(g);
    let a3 = matmul(&matmul(&a, &a), &a);
    let trace: i64 = (0..a.len()).map(|i| a3[i][i]).sum();
    assert_eq!(trace % 6, 0);
    (trace / 6) as u64
}

/// Mean over nodes of the fraction of adjacent neighbor pairs, by triple enumeration.
pub fn clustering(g: &Graph) -> f64 {
    let a = dense(g);
    let n = a.len();
    let mut total = 0.0;
    for i in 0..n {
        let (mut pairs, mut closed) = (0u64, 0u64);
        for j in 0..n {
            for k in j + 1..n {
                if a[i][j] == 1 && a[i][k] == 1 {
                    pairs += 1;
                    closed += a[j][k] as u64;
                }
            }
        }
        if pairs > 0 {
            total += closed as f64 / pairs as f64;
        }
    }
    total / n as f64
}

/// Pearson correlation of endpoint degrees over both orientations of every edge.
pub fn assortativity(g: &Graph) -> Option<f64> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (u, v) in g.edges() {
        let (du, dv) = (g.degree(u) as f64, g.degree(v) as f64);
        xs.extend([du, dv]);
        ys.extend([dv, du]);
    }
    if xs.is_empty() {
        return None;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let vx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let vy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if vx == 0.0 || vy == 0.0 {
        return None;
    }
    Some(cov / (vx * vy).sqrt())
}

/// Floyd–Warshall; `None` when some pair is unreachable.
pub fn diameter(g: &Graph) -> Option<usize> {
    let n = g.node_count();
    const INF: usize = usize::MAX / 4;
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    let worst = d.iter().flatten().copied().max().unwrap_or(0);
    (worst < INF).then_some(worst)
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    let frob: f64 = a.iter().flatten().map(|x| x * x).sum();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off <= 1e-28 * frob {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn laplacian_eigenvalues(g: &Graph) -> Vec<f64> {
    let a = dense(g);
    let n = a.len();
    let l = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { g.degree(i) as f64 } else { -(a[i][j] as f64) })
                .collect()
        })
        .collect();
    jacobi_eigenvalues(l)
}

pub fn adjacency_eigenvalues(g: &Graph) -> Vec<f64> {
    jacobi_eigenvalues(dense(g).into_iter().map(|r| r.into_iter().map(|x| x as f64).collect()).collect())
}

/// Oracle Fiedler value: zero for a single node, else the second-smallest Laplacian eigenvalue.
pub fn fiedler(g: &Graph) -> f64 {
    let ev = laplacian_eigenvalues(g);
    if ev.len() < 2 {
        0.0
    } else {
        ev[1].max(0.0)
    }
}

pub fn spectral_radius(g: &Graph) -> f64 {
    adjacency_eigenvalues(g).last().copied().unwrap_or(0.0).max(0.0)
}

pub fn median(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let k = v.len();
    if k % 2 == 1 {
        v[k / 2]
    } else {
        (v[k / 2 - 1] + v[k / 2]) / 2.0
    }
}

pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}
