//! Degree-based scalar invariants, all computed in integer arithmetic
//! except the per-vertex average degrees and the mean degree.

use serde::Serialize;

use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InvariantSet {
    pub n: usize,
    pub m: usize,
    pub k: Option<usize>,
    /// `d_i`: number of edges containing vertex `i` (0-based index).
    pub degrees: Vec<u64>,
    /// `d_ij`: number of edges containing both `i` and `j`; zero diagonal.
    pub codegrees: Vec<Vec<u64>>,
    /// `T_i`: sum of the degrees of the neighbours of `i`.
    pub two_degrees: Vec<u64>,
    /// `s_i = sum_{j ~ i} d_j d_ij / d_i`; `None` for isolated vertices.
    pub average_degrees: Vec<Option<f64>>,
    /// First Zagreb index, `sum d_i^2`.
    pub z1: u64,
    /// `sum_i sum_{j ~ i} d_ij^2` (each unordered pair counted twice).
    pub alpha: u64,
    pub d_max: u64,
    pub d_min: u64,
    pub d_bar: f64,
    pub t_min: u64,
}

impl InvariantSet {
    pub fn of(h: &Hypergraph) -> Self {
        let n = h.vertex_count();
        let mut degrees = vec![0u64; n];
        let mut codegrees = vec![vec![0u64; n]; n];
        for e in h.edges() {
            for &a in e {
                degrees[a - 1] += 1;
                for &b in e {
                    if a != b {
                        codegrees[a - 1][b - 1] += 1;
                    }
                }
            }
        }
        let two_degrees: Vec<u64> = (0..n)
            .map(|i| (0..n).filter(|&j| codegrees[i][j] > 0).map(|j| degrees[j]).sum())
            .collect();
        let average_degrees = (0..n)
            .map(|i| {
                (degrees[i] > 0).then(|| {
                    let num: u64 = (0..n).map(|j| degrees[j] * codegrees[i][j]).sum();
                    num as f64 / degrees[i] as f64
                })
            })
            .collect();
        let z1 = degrees.iter().map(|d| d * d).sum();
        let alpha = codegrees.iter().flatten().map(|c| c * c).sum();
        let d_max = degrees.iter().copied().max().unwrap_or(0);
        let d_min = degrees.iter().copied().min().unwrap_or(0);
        let d_bar = degrees.iter().sum::<u64>() as f64 / n as f64;
        let t_min = two_degrees.iter().copied().min().unwrap_or(0);
        Self {
            n,
            m: h.edge_count(),
            k: h.uniformity(),
            degrees,
            codegrees,
            two_degrees,
            average_degrees,
            z1,
            alpha,
            d_max,
            d_min,
            d_bar,
            t_min,
        }
    }

    pub fn degree_sum(&self) -> u64 {
        self.degrees.iter().sum()
    }

    pub fn is_regular(&self) -> bool {
        self.d_max == self.d_min
    }

    /// Every adjacent pair lies in exactly one edge.
    pub fn is_linear(&self) -> bool {
        self.codegrees.iter().flatten().all(|&c| c <= 1)
    }

    /// Degrees sorted ascending; `[0]` and `[1]` are the two smallest.
    pub fn sorted_degrees(&self) -> Vec<u64> {
        let mut d = self.degrees.clone();
        d.sort_unstable();
        d
    }
}
