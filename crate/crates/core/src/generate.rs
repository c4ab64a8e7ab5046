//! Named hypergraph families, seeded random connected uniform hypergraphs,
//! and exhaustive enumeration of small connected uniform hypergraphs.
//!
//! Random generation uses [`Pcg64`] (PCG XSL RR 128/64) seeded through
//! `SeedableRng::seed_from_u64`, so a `(n, k, m, seed)` tuple reproduces the
//! same edge list on every platform.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::{RngExt, SeedableRng};
use rand_pcg::Pcg64;
use serde::{Deserialize, Serialize};

use crate::hypergraph::{binomial, Hypergraph, HypergraphError, KSubsets};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "family")]
pub enum Family {
    /// All `k`-subsets of `n` vertices, `K^k_n`.
    CompleteUniform { n: usize, k: usize },
    /// One edge covering all `k` vertices.
    SingleEdge { k: usize },
    /// The complete bipartite graph `K_{a,b}`; side `a` is `1..=a`.
    CompleteBipartiteGraph { a: usize, b: usize },
    /// Every `rank`-subset of `left + right` vertices meeting both sides.
    CompleteBipartiteUniform { rank: usize, left: usize, right: usize },
    /// A connected `k`-uniform hypergraph with exactly `m` edges.
    RandomConnectedUniform { n: usize, k: usize, m: usize, seed: u64 },
}

impl Family {
    /// Builds a family member from its CLI name and integer parameters.
    pub fn from_args(name: &str, params: &[usize], seed: u64) -> Result<Self, HypergraphError> {
        let want = |count: usize| {
            if params.len() == count {
                Ok(())
            } else {
                Err(HypergraphError::InfeasibleParameters(format!(
                    "{name} takes {count} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        let family = match FamilyName::from_str(name)? {
            FamilyName::CompleteUniform => {
                want(2)?;
                Family::CompleteUniform { n: params[0], k: params[1] }
            }
            FamilyName::SingleEdge => {
                want(1)?;
                Family::SingleEdge { k: params[0] }
            }
            FamilyName::CompleteBipartiteGraph => {
                want(2)?;
                Family::CompleteBipartiteGraph { a: params[0], b: params[1] }
            }
            FamilyName::CompleteBipartiteUniform => {
                want(3)?;
                Family::CompleteBipartiteUniform { rank: params[0], left: params[1], right: params[2] }
            }
            FamilyName::RandomConnectedUniform => {
                want(3)?;
                Family::RandomConnectedUniform { n: params[0], k: params[1], m: params[2], seed }
            }
        };
        Ok(family)
    }

    pub fn generate(&self) -> Result<Hypergraph, HypergraphError> {
        match *self {
            Family::CompleteUniform { n, k } => complete_uniform(n, k),
            Family::SingleEdge { k } => single_edge(k),
            Family::CompleteBipartiteGraph { a, b } => complete_bipartite_graph(a, b),
            Family::CompleteBipartiteUniform { rank, left, right } => {
                complete_bipartite_uniform(rank, left, right)
            }
            Family::RandomConnectedUniform { n, k, m, seed } => random_connected_uniform(n, k, m, seed),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FamilyName {
    CompleteUniform,
    SingleEdge,
    CompleteBipartiteGraph,
    CompleteBipartiteUniform,
    RandomConnectedUniform,
}

impl FromStr for FamilyName {
    type Err = HypergraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s.chars().filter(|c| c.is_ascii_alphanumeric()).collect::<String>().to_lowercase();
        Ok(match key.as_str() {
            "completeuniform" => Self::CompleteUniform,
            "singleedge" => Self::SingleEdge,
            "completebipartitegraph" => Self::CompleteBipartiteGraph,
            "completebipartiteuniform" => Self::CompleteBipartiteUniform,
            "randomconnecteduniform" => Self::RandomConnectedUniform,
            _ => return Err(HypergraphError::InfeasibleParameters(format!("unknown family `{s}`"))),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::CompleteUniform { n, k } => write!(f, "completeUniform({n},{k})"),
            Family::SingleEdge { k } => write!(f, "singleEdge({k})"),
            Family::CompleteBipartiteGraph { a, b } => write!(f, "completeBipartiteGraph({a},{b})"),
            Family::CompleteBipartiteUniform { rank, left, right } => {
                write!(f, "completeBipartiteUniform({rank},{left},{right})")
            }
            Family::RandomConnectedUniform { n, k, m, seed } => {
                write!(f, "randomConnectedUniform({n},{k},{m},seed={seed})")
            }
        }
    }
}

fn infeasible(msg: String) -> HypergraphError {
    HypergraphError::InfeasibleParameters(msg)
}

pub fn complete_uniform(n: usize, k: usize) -> Result<Hypergraph, HypergraphError> {
    if k < 2 || n < k {
        return Err(infeasible(format!("completeUniform needs 2 <= k <= n, got n={n}, k={k}")));
    }
    Ok(Hypergraph::from_trusted(n, k, KSubsets::new(n, k).collect()))
}

pub fn single_edge(k: usize) -> Result<Hypergraph, HypergraphError> {
    if k < 2 {
        return Err(infeasible(format!("singleEdge needs k >= 2, got {k}")));
    }
    Ok(Hypergraph::from_trusted(k, k, vec![(1..=k).collect()]))
}

pub fn complete_bipartite_graph(a: usize, b: usize) -> Result<Hypergraph, HypergraphError> {
    if a == 0 || b == 0 {
        return Err(infeasible(format!("completeBipartiteGraph needs both sides nonempty, got {a},{b}")));
    }
    let edges = (1..=a).flat_map(|i| (a + 1..=a + b).map(move |j| vec![i, j])).collect();
    Ok(Hypergraph::from_trusted(a + b, 2, edges))
}

pub fn complete_bipartite_uniform(rank: usize, left: usize, right: usize) -> Result<Hypergraph, HypergraphError> {
    let n = left + right;
    if rank < 2 || left == 0 || right == 0 || rank > n {
        return Err(infeasible(format!(
            "completeBipartiteUniform needs rank >= 2, nonempty sides and rank <= {n}"
        )));
    }
    let edges = KSubsets::new(n, rank).filter(|e| e[0] <= left && e[rank - 1] > left).collect();
    Ok(Hypergraph::from_trusted(n, rank, edges))
}

/// Fewest edges a connected `k`-uniform hypergraph on `n > 1` vertices can have.
pub fn min_connected_edges(n: usize, k: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (n - 1).div_ceil(k - 1)
    }
}

/// A connected `k`-uniform hypergraph with exactly `m` distinct edges,
/// deterministic in `seed`.
///
/// A skeleton is grown first: each new edge takes one already-covered vertex
/// and as many uncovered ones as fit. The remaining edges are drawn uniformly
/// from the unused `k`-subsets.
pub fn random_connected_uniform(n: usize, k: usize, m: usize, seed: u64) -> Result<Hypergraph, HypergraphError> {
    if k < 2 || n < k {
        return Err(infeasible(format!("randomConnectedUniform needs 2 <= k <= n, got n={n}, k={k}")));
    }
    let total = binomial(n as i64, k as i64);
    let lo = min_connected_edges(n, k);
    if m < lo.max(1) || m as u128 > total {
        return Err(infeasible(format!("m={m} outside [{}, {total}] for n={n}, k={k}", lo.max(1))));
    }
    let mut rng = Pcg64::seed_from_u64(seed);
    let mut covered = vec![false; n];
    let mut edges: Vec<Vec<usize>> = Vec::with_capacity(m);

    let first = random_subset(&mut rng, n, k);
    for &v in &first {
        covered[v - 1] = true;
    }
    edges.push(first);
    loop {
        let uncovered: Vec<usize> = (1..=n).filter(|&v| !covered[v - 1]).collect();
        if uncovered.is_empty() {
            break;
        }
        let inside: Vec<usize> = (1..=n).filter(|&v| covered[v - 1]).collect();
        let fresh = uncovered.len().min(k - 1);
        let mut edge: Vec<usize> = pick(&mut rng, &uncovered, fresh);
        edge.extend(pick(&mut rng, &inside, k - fresh));
        edge.sort_unstable();
        for &v in &edge {
            covered[v - 1] = true;
        }
        edges.push(edge);
    }
    debug_assert_eq!(edges.len(), lo);

    let missing = m - edges.len();
    if missing > 0 {
        let mut used: HashSet<Vec<usize>> = edges.iter().cloned().collect();
        if 2 * m as u128 > total {
            let pool: Vec<Vec<usize>> = KSubsets::new(n, k).filter(|s| !used.contains(s)).collect();
            let mut chosen = index::sample(&mut rng, pool.len(), missing).into_vec();
            chosen.sort_unstable();
            edges.extend(chosen.into_iter().map(|i| pool[i].clone()));
        } else {
            while edges.len() < m {
                let s = random_subset(&mut rng, n, k);
                if used.insert(s.clone()) {
                    edges.push(s);
                }
            }
        }
    }
    Ok(Hypergraph::from_trusted(n, k, edges))
}

fn random_subset(rng: &mut Pcg64, n: usize, k: usize) -> Vec<usize> {
    let mut s: Vec<usize> = index::sample(rng, n, k).into_iter().map(|i| i + 1).collect();
    s.sort_unstable();
    s
}

fn pick(rng: &mut Pcg64, from: &[usize], count: usize) -> Vec<usize> {
    index::sample(rng, from.len(), count).into_iter().map(|i| from[i]).collect()
}

/// Derives a per-instance seed from a base seed and cell coordinates.
pub fn instance_seed(base: u64, coords: &[u64]) -> u64 {
    let mut rng = Pcg64::seed_from_u64(base);
    let mut s: u64 = rng.random();
    for &c in coords {
        s = Pcg64::seed_from_u64(s ^ c.wrapping_mul(0x9e37_79b9_7f4a_7c15)).random();
    }
    s
}

/// Every connected `k`-uniform hypergraph on exactly `n` labelled vertices
/// with between 1 and `m_max` edges.
pub fn enumerate_connected_uniform(n: usize, k: usize, m_max: usize) -> Vec<Hypergraph> {
    assert!(n <= 64, "enumeration uses 64-bit vertex masks");
    if k < 2 || n < k {
        return Vec::new();
    }
    let subsets: Vec<Vec<usize>> = KSubsets::new(n, k).collect();
    let masks: Vec<u64> = subsets.iter().map(|s| s.iter().fold(0u64, |a, &v| a | 1 << (v - 1))).collect();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let lo = min_connected_edges(n, k).max(1);
    walk(&masks, 0, m_max, lo, full, &mut chosen, &mut |idx: &[usize]| {
        let edge_masks: Vec<u64> = idx.iter().map(|&i| masks[i]).collect();
        if mask_connected(&edge_masks, full) {
            let edges = idx.iter().map(|&i| subsets[i].clone()).collect();
            out.push(Hypergraph::from_trusted(n, k, edges));
        }
    });
    out
}

fn walk(
    masks: &[u64],
    start: usize,
    m_max: usize,
    lo: usize,
    full: u64,
    chosen: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if chosen.len() >= lo {
        let cover = chosen.iter().fold(0u64, |a, &i| a | masks[i]);
        if cover == full {
            emit(chosen);
        }
    }
    if chosen.len() == m_max {
        return;
    }
    for i in start..masks.len() {
        chosen.push(i);
        walk(masks, i + 1, m_max, lo, full, chosen, emit);
        chosen.pop();
    }
}

fn mask_connected(edge_masks: &[u64], full: u64) -> bool {
    let Some(&first) = edge_masks.first() else {
        return full.count_ones() <= 1;
    };
    let mut reach = first;
    loop {
        let next = edge_masks.iter().filter(|&&e| e & reach != 0).fold(reach, |a, &e| a | e);
        if next == reach {
            return reach == full;
        }
        reach = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_uniform_counts() {
        assert_eq!(complete_uniform(4, 3).unwrap().edge_count(), 4);
        assert_eq!(complete_uniform(6, 2).unwrap().edge_count(), 15);
        assert!(complete_uniform(2, 3).is_err());
    }

    #[test]
    fn single_edge_shape() {
        let h = single_edge(5).unwrap();
        assert_eq!(h.vertex_count(), 5);
        assert_eq!(h.edges(), &[vec![1, 2, 3, 4, 5]]);
    }

    #[test]
    fn bipartite_families() {
        let g = complete_bipartite_graph(2, 3).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert!(g.edges().iter().all(|e| e[0] <= 2 && e[1] > 2));
        // C^3_{2,2}: all 4 triples of 4 vertices meet both sides
        assert_eq!(complete_bipartite_uniform(3, 2, 2).unwrap().edge_count(), 4);
        // C^3_{1,3}: triples containing vertex 1
        assert_eq!(complete_bipartite_uniform(3, 1, 3).unwrap().edge_count(), 3);
        assert!(complete_bipartite_uniform(3, 0, 3).is_err());
    }

    #[test]
    fn random_is_deterministic_connected_and_exact() {
        let a = random_connected_uniform(6, 3, 5, 1).unwrap();
        let b = random_connected_uniform(6, 3, 5, 1).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert_eq!(a.edge_count(), 5);
        assert!(a.is_connected());
        assert!(Hypergraph::new(6, a.edges().to_vec()).is_ok());
    }

    #[test]
    fn random_bounds() {
        assert!(random_connected_uniform(7, 3, 2, 0).is_err());
        assert!(random_connected_uniform(7, 3, 3, 0).unwrap().is_connected());
        assert_eq!(random_connected_uniform(5, 3, 10, 4).unwrap().edge_count(), 10);
        assert!(random_connected_uniform(5, 3, 11, 4).is_err());
    }

    #[test]
    fn family_names_parse() {
        let f = Family::from_args("randomConnectedUniform", &[6, 3, 5], 1).unwrap();
        assert_eq!(f, Family::RandomConnectedUniform { n: 6, k: 3, m: 5, seed: 1 });
        assert_eq!(Family::from_args("single-edge", &[3], 0).unwrap(), Family::SingleEdge { k: 3 });
        assert!(Family::from_args("singleEdge", &[3, 4], 0).is_err());
        assert!(Family::from_args("petersen", &[], 0).is_err());
    }

    #[test]
    fn enumeration_small_counts() {
        // connected labelled graphs on 3 vertices: 3 paths + 1 triangle
        assert_eq!(enumerate_connected_uniform(3, 2, 3).len(), 4);
        // labelled trees on 4 vertices (Cayley: 16) are the only ones with 3 edges
        let four = enumerate_connected_uniform(4, 2, 3);
        assert_eq!(four.iter().filter(|h| h.edge_count() == 3).count(), 16);
        assert!(four.iter().all(|h| h.is_connected()));
    }

    #[test]
    fn instance_seeds_differ() {
        assert_ne!(instance_seed(7, &[5, 3, 4, 0]), instance_seed(7, &[5, 3, 4, 1]));
        assert_eq!(instance_seed(7, &[5, 3, 4, 0]), instance_seed(7, &[5, 3, 4, 0]));
    }
}
