//! Simple hypergraphs on the vertex set `1..=n`.
//!
//! A [`Hypergraph`] is the single source of combinatorial truth for every
//! other module: matrices, invariants and bound evaluations are all derived
//! from it. Values are immutable once validated.

use std::collections::{BTreeSet, HashSet, VecDeque};

use thiserror::Error;

/// Reasons a raw vertex count plus edge list is not a simple hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("vertex count must be positive")]
    NoVertices,
    #[error("edge {edge} contains vertex {vertex}, outside 1..={n}")]
    OutOfRangeVertex { edge: usize, vertex: usize, n: usize },
    #[error("edge {edge} has {size} distinct vertices; at least 2 are required")]
    EdgeTooSmall { edge: usize, size: usize },
    #[error("edges {first} and {second} are identical")]
    DuplicateEdge { first: usize, second: usize },
    #[error("edge {inner} is a proper subset of edge {outer}")]
    SubsetEdge { inner: usize, outer: usize },
    #[error("operation requires a uniform hypergraph")]
    NotUniform,
    #[error("edge {0:?} is not an edge of the hypergraph")]
    UnknownEdge(Vec<usize>),
    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),
}

/// A finite simple hypergraph with 1-based vertex ids.
///
/// Edges are stored as strictly increasing vertex lists, in the order they
/// were supplied. No edge is contained in another.
#[derive(Debug, Clone)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
    uniformity: Option<usize>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl Hypergraph {
    /// Validates a raw vertex count and edge lists.
    ///
    /// Vertices inside each edge are sorted and deduplicated first, so
    /// `[3, 1, 2]` and `[1, 2, 3, 3]` both denote the edge `{1, 2, 3}`.
    pub fn new(n: usize, raw_edges: Vec<Vec<usize>>) -> Result<Self, HypergraphError> {
        if n == 0 {
            return Err(HypergraphError::NoVertices);
        }
        let mut edges = Vec::with_capacity(raw_edges.len());
        for (idx, mut e) in raw_edges.into_iter().enumerate() {
            e.sort_unstable();
            e.dedup();
            if let Some(&v) = e.iter().find(|&&v| v == 0 || v > n) {
                return Err(HypergraphError::OutOfRangeVertex { edge: idx, vertex: v, n });
            }
            if e.len() < 2 {
                return Err(HypergraphError::EdgeTooSmall { edge: idx, size: e.len() });
            }
            edges.push(e);
        }
        for i in 0..edges.len() {
            for j in (i + 1)..edges.len() {
                let (a, b) = (&edges[i], &edges[j]);
                if a == b {
                    return Err(HypergraphError::DuplicateEdge { first: i, second: j });
                }
                if a.len() < b.len() && is_sorted_subset(a, b) {
                    return Err(HypergraphError::SubsetEdge { inner: i, outer: j });
                }
                if b.len() < a.len() && is_sorted_subset(b, a) {
                    return Err(HypergraphError::SubsetEdge { inner: j, outer: i });
                }
            }
        }
        let uniformity = uniform_size(&edges);
        Ok(Self { n, edges, uniformity })
    }

    /// An edgeless hypergraph declared as `k`-uniform, which is what the
    /// complement of a complete uniform hypergraph looks like.
    pub fn empty(n: usize, k: usize) -> Result<Self, HypergraphError> {
        if n == 0 {
            return Err(HypergraphError::NoVertices);
        }
        Ok(Self { n, edges: Vec::new(), uniformity: Some(k) })
    }

    /// Builds a `k`-uniform hypergraph from edges that are already known to be
    /// valid, sorted and pairwise distinct.
    pub(crate) fn from_trusted(n: usize, k: usize, edges: Vec<Vec<usize>>) -> Self {
        debug_assert!(edges.iter().all(|e| e.len() == k && e.windows(2).all(|w| w[0] < w[1])));
        Self { n, edges, uniformity: Some(k) }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// `Some(k)` when every edge has exactly `k` vertices. An edgeless
    /// hypergraph only carries a `k` when one was declared for it.
    pub fn uniformity(&self) -> Option<usize> {
        self.uniformity
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Vertex adjacency as 0-based neighbour lists (the 2-section graph).
    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut sets = vec![BTreeSet::new(); self.n];
        for e in &self.edges {
            for &a in e {
                for &b in e {
                    if a != b {
                        sets[a - 1].insert(b - 1);
                    }
                }
            }
        }
        sets.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// 2-section adjacency as bitmasks; only valid for `n <= 64`.
    pub(crate) fn neighbour_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bitmask adjacency needs n <= 64");
        let mut masks = vec![0u64; self.n];
        for e in &self.edges {
            let bits = e.iter().fold(0u64, |acc, &v| acc | 1 << (v - 1));
            for &v in e {
                masks[v - 1] |= bits & !(1 << (v - 1));
            }
        }
        masks
    }

    /// True iff every pair of vertices is joined by a walk.
    pub fn is_connected(&self) -> bool {
        let adj = self.neighbours();
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == self.n
    }

    /// All `k`-subsets of the vertex set that are not edges.
    pub fn complement(&self) -> Result<Self, HypergraphError> {
        let k = self.uniformity.ok_or(HypergraphError::NotUniform)?;
        if k > self.n {
            return Err(HypergraphError::InfeasibleParameters(format!(
                "rank {k} exceeds vertex count {}",
                self.n
            )));
        }
        let present: HashSet<&[usize]> = self.edges.iter().map(Vec::as_slice).collect();
        let edges = KSubsets::new(self.n, k).filter(|s| !present.contains(s.as_slice())).collect();
        Ok(Self::from_trusted(self.n, k, edges))
    }

    /// `H - E'`: the same vertex set with the listed edges removed.
    pub fn delete_edges(&self, removed: &[Vec<usize>]) -> Result<Self, HypergraphError> {
        let mut drop = HashSet::new();
        for r in removed {
            let mut key = r.clone();
            key.sort_unstable();
            key.dedup();
            if !self.edges.contains(&key) {
                return Err(HypergraphError::UnknownEdge(r.clone()));
            }
            drop.insert(key);
        }
        let edges = self.edges.iter().filter(|e| !drop.contains(*e)).cloned().collect();
        Ok(Self { n: self.n, edges, uniformity: self.uniformity })
    }

    /// Stable 64-bit FNV-1a digest of `n` and the sorted edge list.
    pub fn edge_hash(&self) -> u64 {
        const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        let mut sorted: Vec<&Vec<usize>> = self.edges.iter().collect();
        sorted.sort();
        let mut h = OFFSET;
        let mut feed = |x: u64| {
            for b in x.to_le_bytes() {
                h ^= u64::from(b);
                h = h.wrapping_mul(PRIME);
            }
        };
        feed(self.n as u64);
        for e in sorted {
            feed(u64::MAX);
            for &v in e {
                feed(v as u64);
            }
        }
        h
    }
}

fn uniform_size(edges: &[Vec<usize>]) -> Option<usize> {
    let k = edges.first()?.len();
    edges.iter().all(|e| e.len() == k).then_some(k)
}

fn is_sorted_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// `C(a, b)` with the convention `C(a, b) = 0` when `b < 0` or `a < b`.
pub fn binomial(a: i64, b: i64) -> u128 {
    if b < 0 || a < b || a < 0 {
        return 0;
    }
    let b = b.min(a - b) as u128;
    let a = a as u128;
    (0..b).fold(1u128, |acc, i| acc * (a - i) / (i + 1))
}

/// Lexicographic iterator over the `k`-subsets of `1..=n`.
#[derive(Debug, Clone)]
pub struct KSubsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl KSubsets {
    pub fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (1..=k).collect());
        Self { n, current }
    }
}

impl Iterator for KSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        // rightmost position that can still be incremented
        let pos = (0..k).rev().find(|&i| next[i] < self.n - (k - 1 - i));
        if let Some(i) = pos {
            next[i] += 1;
            for j in (i + 1)..k {
                next[j] = next[j - 1] + 1;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}
