//! Weighted draws of distinct targets.
//!
//! Targets are drawn by successive sampling: pick one index with probability
//! proportional to its weight, remove it, repeat. Two indexes implement the
//! same draw sequence: [`WeightIndex`] over arbitrary weights, and
//! [`AffineDegreeIndex`] for weights of the form `a * k_i - b`, where only
//! integer degrees are stored and the uniform shift `b` is applied on the fly.
//! Both consume exactly one uniform per drawn target.

use rand::Rng;

use crate::error::{invalid, Result};

/// Fenwick tree with a top-down search for the first index whose prefix sum
/// exceeds a threshold.
#[derive(Debug, Clone)]
struct Fenwick<T> {
    tree: Vec<T>,
}

impl<T> Fenwick<T>
where
    T: Copy + Default + std::ops::AddAssign,
{
    fn with_len(len: usize) -> Self {
        Self {
            tree: vec![T::default(); len + 1],
        }
    }

    fn from_values(values: &[T]) -> Self {
        let mut tree = vec![T::default(); values.len() + 1];
        tree[1..].copy_from_slice(values);
        for i in 1..tree.len() {
            let parent = i + (i & i.wrapping_neg());
            if parent < tree.len() {
                let v = tree[i];
                tree[parent] += v;
            }
        }
        Self { tree }
    }

    fn len(&self) -> usize {
        self.tree.len() - 1
    }

    fn add(&mut self, index: usize, delta: T) {
        let mut i = index + 1;
        while i < self.tree.len() {
            self.tree[i] += delta;
            i += i & i.wrapping_neg();
        }
    }

    fn prefix(&self, end: usize) -> T {
        let mut acc = T::default();
        let mut i = end;
        while i > 0 {
            acc += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        acc
    }
}

fn top_bit(len: usize) -> usize {
    if len == 0 {
        0
    } else {
        1 << (usize::BITS - 1 - len.leading_zeros())
    }
}

/// Removable weighted index over arbitrary nonnegative weights.
#[derive(Debug, Clone)]
pub struct WeightIndex {
    weights: Vec<f64>,
    tree: Fenwick<f64>,
}

impl WeightIndex {
    pub fn new(weights: &[f64]) -> Result<Self> {
        if let Some((i, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(w.is_finite() && **w >= 0.0))
        {
            return Err(invalid(format!("weight {w} at index {i} is not a finite nonnegative number")));
        }
        Ok(Self {
            weights: weights.to_vec(),
            tree: Fenwick::from_values(weights),
        })
    }

    pub fn total(&self) -> f64 {
        self.tree.prefix(self.tree.len())
    }

    /// Index `i` with `prefix(i) <= u < prefix(i + 1)`.
    pub fn find(&self, u: f64) -> usize {
        let mut pos = 0;
        let mut rem = u;
        let mut step = top_bit(self.tree.len());
        while step > 0 {
            let next = pos + step;
            if next <= self.tree.len() && self.tree.tree[next] <= rem {
                pos = next;
                rem -= self.tree.tree[next];
            }
            step >>= 1;
        }
        self.settle(pos)
    }

    // Rounding can push the search onto a zero-weight slot or past the end.
    fn settle(&self, pos: usize) -> usize {
        if pos < self.weights.len() && self.weights[pos] > 0.0 {
            return pos;
        }
        let end = pos.min(self.weights.len());
        (0..end)
            .rev()
            .chain(end..self.weights.len())
            .find(|&i| self.weights[i] > 0.0)
            .expect("index holds positive weight")
    }

    pub fn remove(&mut self, index: usize) {
        let w = std::mem::take(&mut self.weights[index]);
        self.tree.add(index, -w);
    }
}

/// Draws `m` distinct indices by successive weighted sampling without
/// replacement. Returned in draw order.
pub fn sample_targets<R: Rng + ?Sized>(weights: &[f64], m: usize, rng: &mut R) -> Result<Vec<usize>> {
    let positive = weights.iter().filter(|&&w| w > 0.0).count();
    if m > weights.len() {
        return Err(invalid(format!(
            "cannot draw {m} distinct targets from {} nodes",
            weights.len()
        )));
    }
    if m > positive {
        return Err(invalid(format!(
            "cannot draw {m} distinct targets: only {positive} have positive weight"
        )));
    }
    let mut index = WeightIndex::new(weights)?;
    let mut chosen = Vec::with_capacity(m);
    for _ in 0..m {
        let u = rng.random::<f64>() * index.total();
        let pick = index.find(u);
        index.remove(pick);
        chosen.push(pick);
    }
    Ok(chosen)
}

/// Index over integer degrees for weights `a * k_i - b` shared by every
/// present node. Slots beyond the current node count hold degree zero and
/// are not present, so they carry no weight.
#[derive(Debug, Clone)]
pub struct AffineDegreeIndex {
    degrees: Vec<i64>,
    present: Vec<bool>,
    degree_tree: Fenwick<i64>,
    count_tree: Fenwick<i64>,
}

impl AffineDegreeIndex {
    pub fn with_capacity(capacity: usize) -> Self {
        Self {
            degrees: vec![0; capacity],
            present: vec![false; capacity],
            degree_tree: Fenwick::with_len(capacity),
            count_tree: Fenwick::with_len(capacity),
        }
    }

    pub fn capacity(&self) -> usize {
        self.degrees.len()
    }

    pub fn insert(&mut self, node: usize, degree: usize) {
        debug_assert!(!self.present[node]);
        self.present[node] = true;
        self.degrees[node] = degree as i64;
        self.degree_tree.add(node, degree as i64);
        self.count_tree.add(node, 1);
    }

    pub fn increment(&mut self, node: usize) {
        self.degrees[node] += 1;
        if self.present[node] {
            self.degree_tree.add(node, 1);
        }
    }

    fn hide(&mut self, node: usize) {
        self.present[node] = false;
        self.degree_tree.add(node, -self.degrees[node]);
        self.count_tree.add(node, -1);
    }

    fn unhide(&mut self, node: usize) {
        self.present[node] = true;
        self.degree_tree.add(node, self.degrees[node]);
        self.count_tree.add(node, 1);
    }

    fn total(&self, a: f64, b: f64) -> f64 {
        let n = self.capacity();
        a * self.degree_tree.prefix(n) as f64 - b * self.count_tree.prefix(n) as f64
    }

    fn find(&self, u: f64, a: f64, b: f64) -> usize {
        let mut pos = 0;
        let mut rem = u;
        let mut step = top_bit(self.capacity());
        while step > 0 {
            let next = pos + step;
            if next <= self.capacity() {
                let block = a * self.degree_tree.tree[next] as f64 - b * self.count_tree.tree[next] as f64;
                if block <= rem {
                    pos = next;
                    rem -= block;
                }
            }
            step >>= 1;
        }
        if pos < self.capacity() && self.present[pos] {
            return pos;
        }
        let end = pos.min(self.capacity());
        (0..end)
            .rev()
            .chain(end..self.capacity())
            .find(|&i| self.present[i])
            .expect("index holds a present node")
    }

    /// Draws `m` distinct present nodes with probability proportional to
    /// `a * k_i - b`, removing each pick before the next draw. Weights are
    /// frozen for the duration of the call.
    pub fn sample<R: Rng + ?Sized>(&mut self, m: usize, a: f64, b: f64, rng: &mut R) -> Vec<usize> {
        let mut chosen = Vec::with_capacity(m);
        for _ in 0..m {
            let u = rng.random::<f64>() * self.total(a, b);
            let pick = self.find(u, a, b);
            self.hide(pick);
            chosen.push(pick);
        }
        for &c in &chosen {
            self.unhide(c);
        }
        chosen
    }
}
