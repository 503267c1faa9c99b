//! Reference implementations used by the test suites.
//!
//! Everything here favors obviousness over speed. Statistics are recomputed
//! from scratch by direct enumeration over a [`SimpleGraph`], and the
//! [`ReplayPartition`] re-derives the core from its definition after every
//! operation instead of tracking it incrementally. Enumeration cost reaches
//! `O(n^4)`, so the expensive oracles refuse graphs with more than
//! [`MAX_ORACLE_VERTICES`] vertices.

use std::collections::{BTreeMap, BTreeSet};

/// Hard cap on the vertex count accepted by the enumeration oracles.
pub const MAX_ORACLE_VERTICES: usize = 20;

fn pair(u: u64, v: u64) -> (u64, u64) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut result: u128 = 1;
    for i in 0..k {
        result = result * (n - i) as u128 / (i + 1) as u128;
    }
    result
}

/// Plain adjacency-set graph for mirroring engine traces in tests.
///
/// Misuse (duplicate edges, unknown vertices) panics: the test drivers are
/// expected to validate operations before applying them here.
#[derive(Debug, Default, Clone)]
pub struct SimpleGraph {
    adjacency: BTreeMap<u64, BTreeSet<u64>>,
    weights: BTreeMap<(u64, u64), f64>,
    colors: BTreeMap<u64, u32>,
}

impl SimpleGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, v: u64) {
        self.add_colored_vertex(v, 0);
    }

    pub fn add_colored_vertex(&mut self, v: u64, color: u32) {
        assert!(
            !self.adjacency.contains_key(&v),
            "vertex {v} already present"
        );
        self.adjacency.insert(v, BTreeSet::new());
        self.colors.insert(v, color);
    }

    pub fn remove_vertex(&mut self, v: u64) {
        let neighbors = self.adjacency.remove(&v).expect("vertex present");
        assert!(neighbors.is_empty(), "vertex {v} still has edges");
        self.colors.remove(&v);
    }

    pub fn add_edge(&mut self, u: u64, v: u64) {
        self.add_weighted_edge(u, v, 1.0);
    }

    pub fn add_weighted_edge(&mut self, u: u64, v: u64, weight: f64) {
        assert_ne!(u, v, "self-loops are not supported");
        assert!(self.adjacency.contains_key(&u), "vertex {u} missing");
        assert!(self.adjacency.contains_key(&v), "vertex {v} missing");
        assert!(
            self.weights.insert(pair(u, v), weight).is_none(),
            "edge {u}-{v} already present"
        );
        self.adjacency.get_mut(&u).unwrap().insert(v);
        self.adjacency.get_mut(&v).unwrap().insert(u);
    }

    pub fn remove_edge(&mut self, u: u64, v: u64) {
        assert!(
            self.weights.remove(&pair(u, v)).is_some(),
            "edge {u}-{v} not present"
        );
        self.adjacency.get_mut(&u).unwrap().remove(&v);
        self.adjacency.get_mut(&v).unwrap().remove(&u);
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn m(&self) -> usize {
        self.weights.len()
    }

    pub fn has_vertex(&self, v: u64) -> bool {
        self.adjacency.contains_key(&v)
    }

    pub fn has_edge(&self, u: u64, v: u64) -> bool {
        self.weights.contains_key(&pair(u, v))
    }

    pub fn weight(&self, u: u64, v: u64) -> f64 {
        self.weights[&pair(u, v)]
    }

    pub fn color(&self, v: u64) -> u32 {
        self.colors[&v]
    }

    pub fn degree(&self, v: u64) -> usize {
        self.adjacency[&v].len()
    }

    pub fn neighbors(&self, v: u64) -> &BTreeSet<u64> {
        &self.adjacency[&v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = u64> + '_ {
        self.adjacency.keys().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (u64, u64, f64)> + '_ {
        self.weights.iter().map(|(&(u, v), &w)| (u, v, w))
    }

    fn assert_small(&self, what: &str) {
        assert!(
            self.n() <= MAX_ORACLE_VERTICES,
            "{what} oracle limited to {MAX_ORACLE_VERTICES} vertices, got {}",
            self.n()
        );
    }

    fn triangles(&self) -> Vec<[u64; 3]> {
        self.assert_small("triangle");
        let ids: Vec<u64> = self.vertices().collect();
        let mut found = Vec::new();
        for i in 0..ids.len() {
            for j in i + 1..ids.len() {
                if !self.has_edge(ids[i], ids[j]) {
                    continue;
                }
                for k in j + 1..ids.len() {
                    if self.has_edge(ids[i], ids[k]) && self.has_edge(ids[j], ids[k]) {
                        found.push([ids[i], ids[j], ids[k]]);
                    }
                }
            }
        }
        found
    }

    /// Largest `h` with at least `h` vertices of degree `>= h`.
    pub fn h_index_brute(&self) -> u64 {
        let mut degrees: Vec<usize> = self.adjacency.values().map(BTreeSet::len).collect();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        let mut h = 0;
        for (i, &d) in degrees.iter().enumerate() {
            if d >= i + 1 {
                h = (i + 1) as u64;
            } else {
                break;
            }
        }
        h
    }

    pub fn triangle_count_brute(&self) -> u64 {
        self.triangles().len() as u64
    }

    /// Sum over triangles of the product of the three edge weights.
    pub fn weighted_triangles_brute(&self) -> f64 {
        self.triangles()
            .iter()
            .map(|&[a, b, c]| self.weight(a, b) * self.weight(a, c) * self.weight(b, c))
            .sum()
    }

    /// Triangle counts keyed by the sorted color triple of their corners.
    pub fn colored_triangles_brute(&self) -> BTreeMap<[u32; 3], u64> {
        let mut census = BTreeMap::new();
        for &[a, b, c] in &self.triangles() {
            let mut colors = [self.color(a), self.color(b), self.color(c)];
            colors.sort_unstable();
            *census.entry(colors).or_insert(0) += 1;
        }
        census
    }

    /// Induced three-vertex census: `result[e]` counts vertex triples whose
    /// induced subgraph has exactly `e` edges.
    pub fn induced_census_brute(&self) -> [u64; 4] {
        self.assert_small("census");
        let ids: Vec<u64> = self.vertices().collect();
        let mut census = [0u64; 4];
        for i in 0..ids.len() {
            for j in i + 1..ids.len() {
                for k in j + 1..ids.len() {
                    let e = usize::from(self.has_edge(ids[i], ids[j]))
                        + usize::from(self.has_edge(ids[i], ids[k]))
                        + usize::from(self.has_edge(ids[j], ids[k]));
                    census[e] += 1;
                }
            }
        }
        census
    }

    /// Non-induced counts of the four three-vertex patterns (empty, one
    /// edge, two-edge path, triangle): each triple with `e` induced edges
    /// contributes `C(e, j)` copies of the `j`-edge pattern.
    pub fn noninduced_brute(&self) -> [u64; 4] {
        let induced = self.induced_census_brute();
        let mut counts = [0u64; 4];
        for (e, &triples) in induced.iter().enumerate() {
            for (j, slot) in counts.iter_mut().enumerate() {
                *slot += triples * binomial(e as u64, j as u64) as u64;
            }
        }
        counts
    }

    /// Two-edge paths, each counted once.
    pub fn p2_brute(&self) -> u64 {
        let mut count = 0;
        for neighbors in self.adjacency.values() {
            let nbrs: Vec<u64> = neighbors.iter().copied().collect();
            for i in 0..nbrs.len() {
                for _ in i + 1..nbrs.len() {
                    count += 1;
                }
            }
        }
        count
    }

    /// Number of `k`-leaf stars: the sum over vertices of `C(degree, k)`.
    pub fn stars_brute(&self, k: u64) -> u128 {
        self.adjacency
            .values()
            .map(|nbrs| binomial(nbrs.len() as u64, k))
            .sum()
    }

    /// Simple paths with the given number of edges, each counted once.
    pub fn paths_brute(&self, edges: usize) -> u64 {
        self.assert_small("path");
        assert!(edges >= 1, "paths need at least one edge");
        let mut ordered = 0u64;
        for start in self.vertices() {
            let mut path = vec![start];
            ordered += self.extend_path(&mut path, edges);
        }
        ordered / 2
    }

    fn extend_path(&self, path: &mut Vec<u64>, remaining: usize) -> u64 {
        if remaining == 0 {
            return 1;
        }
        let last = *path.last().unwrap();
        let mut total = 0;
        for &next in &self.adjacency[&last] {
            if path.contains(&next) {
                continue;
            }
            path.push(next);
            total += self.extend_path(path, remaining - 1);
            path.pop();
        }
        total
    }

    pub fn p3_brute(&self) -> u64 {
        self.paths_brute(3)
    }

    pub fn p4_brute(&self) -> u64 {
        self.paths_brute(4)
    }

    /// Non-backtracking three-edge walks up to direction: every three-edge
    /// path once plus every triangle three times.
    pub fn q_brute(&self) -> u64 {
        self.assert_small("walk");
        let mut ordered = 0u64;
        for (&v1, n1) in &self.adjacency {
            for &v0 in n1 {
                for &v2 in n1 {
                    if v2 == v0 {
                        continue;
                    }
                    for &v3 in &self.adjacency[&v2] {
                        if v3 != v1 {
                            ordered += 1;
                        }
                    }
                }
            }
        }
        debug_assert_eq!(ordered % 2, 0);
        ordered / 2
    }

    /// Four-cycles, each counted once.
    pub fn c4_brute(&self) -> u64 {
        self.assert_small("cycle");
        let mut ordered = 0u64;
        for (&a, na) in &self.adjacency {
            for &b in na {
                for &c in &self.adjacency[&b] {
                    if c == a {
                        continue;
                    }
                    for &d in &self.adjacency[&c] {
                        if d != b && d != a && self.has_edge(d, a) {
                            ordered += 1;
                        }
                    }
                }
            }
        }
        debug_assert_eq!(ordered % 8, 0);
        ordered / 8
    }

    /// Triangles with a pendant edge attached to one corner, each counted
    /// once per (triangle, pendant edge) pair.
    pub fn tadpoles_brute(&self) -> u64 {
        let mut count = 0u64;
        for &[a, b, c] in &self.triangles() {
            for t in [a, b, c] {
                count += self
                    .neighbors(t)
                    .iter()
                    .filter(|&&x| x != a && x != b && x != c)
                    .count() as u64;
            }
        }
        count
    }

    /// Two-edge paths with the given endpoint.
    pub fn endpoint_paths_brute(&self, v: u64) -> u64 {
        let mut count = 0;
        for &u in self.neighbors(v) {
            count += self.neighbors(u).iter().filter(|&&w| w != v).count() as u64;
        }
        count
    }
}

/// One operation against a partition, in engine terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GradualOp {
    InsertZero(u64),
    RemoveZero(u64),
    Increment(u64),
    Decrement(u64),
}

/// Core membership changes produced by one replayed operation, as sets.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct ReplayEvents {
    pub entered: BTreeSet<u64>,
    pub left: BTreeSet<u64>,
}

impl ReplayEvents {
    pub fn is_empty(&self) -> bool {
        self.entered.is_empty() && self.left.is_empty()
    }
}

/// Definition-level replay of the gradual partition.
///
/// The high-set bookkeeping mirrors the production update rules, including
/// the take-the-most-recent choice for displacements and restorations, so
/// that both structures walk through identical high sets. The core,
/// however, is re-derived after every operation from its characterization:
/// survivors that stayed high, plus every high element at value `>= 2h`.
#[derive(Debug, Default, Clone)]
pub struct ReplayPartition {
    values: BTreeMap<u64, u64>,
    high: BTreeSet<u64>,
    boundary: Vec<u64>,
    buckets: BTreeMap<u64, Vec<u64>>,
    core: BTreeSet<u64>,
}

impl ReplayPartition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn h(&self) -> u64 {
        self.high.len() as u64
    }

    pub fn value(&self, x: u64) -> Option<u64> {
        self.values.get(&x).copied()
    }

    pub fn high_set(&self) -> &BTreeSet<u64> {
        &self.high
    }

    pub fn core(&self) -> &BTreeSet<u64> {
        &self.core
    }

    pub fn apply(&mut self, op: GradualOp) -> ReplayEvents {
        match op {
            GradualOp::InsertZero(x) => self.insert(x, 0),
            GradualOp::RemoveZero(x) => {
                assert_eq!(self.value(x), Some(0), "zero-removal of a live element");
                self.remove(x);
            }
            GradualOp::Increment(x) => {
                let v = self.values[&x];
                self.set_value(x, v + 1);
            }
            GradualOp::Decrement(x) => {
                let v = self.values[&x];
                assert!(v >= 1, "decrement underflow");
                self.set_value(x, v - 1);
            }
        }
        self.refresh_core()
    }

    fn insert(&mut self, x: u64, value: u64) {
        assert!(
            self.values.insert(x, value).is_none(),
            "inserting a duplicate"
        );
        self.bucket_push(value, x);
        let h = self.high.len() as u64;
        if value > h {
            self.high.insert(x);
            if let Some(y) = self.boundary.pop() {
                self.high.remove(&y);
                self.bucket_push(h, y);
            } else {
                self.boundary = self.buckets.remove(&(h + 1)).unwrap_or_default();
            }
        }
    }

    fn remove(&mut self, x: u64) {
        let value = self.values.remove(&x).expect("removing a stored element");
        if let Some(pos) = self.boundary.iter().position(|&y| y == x) {
            self.boundary.swap_remove(pos);
        } else {
            self.bucket_drop(value, x);
        }
        if self.high.remove(&x) {
            let h = self.high.len() as u64 + 1;
            if let Some(bucket) = self.buckets.get_mut(&h) {
                let z = bucket.pop().expect("stored buckets are non-empty");
                if bucket.is_empty() {
                    self.buckets.remove(&h);
                }
                self.high.insert(z);
                self.boundary.push(z);
            } else if !self.boundary.is_empty() {
                let moved = std::mem::take(&mut self.boundary);
                self.buckets.insert(h, moved);
            }
        }
    }

    fn set_value(&mut self, x: u64, value: u64) {
        let old = self.values[&x];
        let h = self.high.len() as u64;
        if self.high.contains(&x) && value >= h {
            self.values.insert(x, value);
            if old == value {
                return;
            }
            if let Some(pos) = self.boundary.iter().position(|&y| y == x) {
                self.boundary.swap_remove(pos);
                self.bucket_push(value, x);
            } else if value == h {
                self.bucket_drop(old, x);
                self.boundary.push(x);
            } else {
                self.bucket_drop(old, x);
                self.bucket_push(value, x);
            }
        } else {
            self.remove(x);
            self.insert(x, value);
        }
    }

    fn bucket_push(&mut self, value: u64, x: u64) {
        self.buckets.entry(value).or_default().push(x);
    }

    fn bucket_drop(&mut self, value: u64, x: u64) {
        let bucket = self.buckets.get_mut(&value).expect("bucket exists");
        let pos = bucket
            .iter()
            .position(|&y| y == x)
            .expect("element tracked in its value bucket");
        bucket.swap_remove(pos);
        if bucket.is_empty() {
            self.buckets.remove(&value);
        }
    }

    fn refresh_core(&mut self) -> ReplayEvents {
        let h = self.high.len() as u64;
        let new_core: BTreeSet<u64> = self
            .high
            .iter()
            .copied()
            .filter(|x| self.core.contains(x) || self.values[x] >= 2 * h)
            .collect();
        let events = ReplayEvents {
            entered: new_core.difference(&self.core).copied().collect(),
            left: self.core.difference(&new_core).copied().collect(),
        };
        self.core = new_core;
        events
    }
}
