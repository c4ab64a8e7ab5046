#![allow(dead_code)]

use hyperspectra::generate::{enumerate_connected_uniform, instance_seed, min_connected_edges, random_connected_uniform};
use hyperspectra::hypergraph::{binomial, Hypergraph};
use rand::{RngExt, SeedableRng};
use rand_pcg::Pcg64;

pub const CORPUS_SEED: u64 = 20_240_601;
pub const RANDOM_COUNT: usize = 500;

/// Every connected `k`-uniform hypergraph with `n <= 6`, `k` in {2, 3} and
/// at most 6 edges.
pub fn exhaustive() -> Vec<Hypergraph> {
    let mut out = Vec::new();
    for k in [2, 3] {
        for n in k..=6 {
            out.extend(enumerate_connected_uniform(n, k, 6));
        }
    }
    out
}

/// Seeded random connected instances with `n <= 8`, `k` in {2, 3, 4} and at
/// most 12 edges.
pub fn random(count: usize) -> Vec<Hypergraph> {
    let mut rng = Pcg64::seed_from_u64(CORPUS_SEED);
    (0..count)
        .map(|i| {
            let k = rng.random_range(2..=4usize);
            let n = rng.random_range(k..=8usize);
            let lo = min_connected_edges(n, k).max(1);
            let hi = (binomial(n as i64, k as i64) as usize).min(12).max(lo);
            let m = rng.random_range(lo..=hi);
            random_connected_uniform(n, k, m, instance_seed(CORPUS_SEED, &[i as u64])).unwrap()
        })
        .collect()
}

pub fn corpus() -> Vec<Hypergraph> {
    let mut all = exhaustive();
    all.extend(random(RANDOM_COUNT));
    all
}

pub fn describe(h: &Hypergraph) -> String {
    format!("n={} edges={:?}", h.vertex_count(), h.edges())
}
