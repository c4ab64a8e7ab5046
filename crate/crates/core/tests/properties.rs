//! Property tests over random connected uniform hypergraphs.

mod common;

use hyperspectra::bounds::{evaluate, evaluate_all, spec, Context, Tolerances};
use hyperspectra::eigen::{Spectra, DEFAULT_TOL};
use hyperspectra::generate::{min_connected_edges, random_connected_uniform};
use hyperspectra::hypergraph::{binomial, Hypergraph};
use hyperspectra::io::{read, serialize, Format};
use hyperspectra::matrix::{adjacency, signless_laplacian};
use hyperspectra::oracle::{exact_charpoly, residuals};
use proptest::prelude::*;

fn hypergraph() -> impl Strategy<Value = Hypergraph> {
    (2usize..=4)
        .prop_flat_map(|k| (Just(k), k..=9usize))
        .prop_flat_map(|(k, n)| {
            let lo = min_connected_edges(n, k).max(1);
            let hi = (binomial(n as i64, k as i64) as usize).min(14).max(lo);
            (Just(n), Just(k), lo..=hi, any::<u64>())
        })
        .prop_map(|(n, k, m, seed)| random_connected_uniform(n, k, m, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn generated_instances_are_connected_uniform(h in hypergraph()) {
        prop_assert!(h.is_connected());
        prop_assert!(h.uniformity().is_some());
    }

    #[test]
    fn file_formats_round_trip(h in hypergraph()) {
        for f in [Format::Text, Format::Json] {
            let back = read(&serialize(&h, f), f).unwrap();
            prop_assert_eq!(back.edges(), h.edges());
            prop_assert_eq!(back.edge_hash(), h.edge_hash());
        }
    }

    #[test]
    fn adjacency_rows_sum_to_degrees(h in hypergraph()) {
        let a = adjacency(&h);
        let mut deg = vec![0.0; h.vertex_count()];
        for e in h.edges() {
            for &v in e {
                deg[v - 1] += 1.0;
            }
        }
        for (r, d) in a.row_sums().iter().zip(&deg) {
            prop_assert!((r - d).abs() < 1e-12);
        }
    }

    #[test]
    fn spectra_match_exact_polynomials(h in hypergraph()) {
        let k = h.uniformity().unwrap();
        let s = Spectra::of(&h, DEFAULT_TOL).unwrap();
        for spectrum in [&s.adjacency, &s.laplacian, &s.signless_laplacian] {
            let p = exact_charpoly(&h, spectrum.kind).unwrap();
            for r in residuals(&p, &spectrum.values, (k - 1) as f64) {
                prop_assert!(r <= 1e-6);
            }
        }
        prop_assert!((s.signless_laplacian.sum() - signless_laplacian(&h).trace()).abs() < 1e-8);
        prop_assert!(s.laplacian.min() > -1e-9);
    }

    #[test]
    fn asserted_bounds_hold(h in hypergraph()) {
        for e in evaluate_all(&h) {
            prop_assert!(!e.is_asserted_failure(), "{} {:?} on {}", e.bound_id, e.slack, common::describe(&h));
        }
    }

    #[test]
    fn evaluation_is_deterministic(h in hypergraph()) {
        prop_assert_eq!(evaluate_all(&h), evaluate_all(&h));
    }

    #[test]
    fn relabelling_preserves_spectra(h in hypergraph(), shift in 1usize..8) {
        let n = h.vertex_count();
        let moved: Vec<Vec<usize>> = h.edges().iter().map(|e| e.iter().map(|&v| (v - 1 + shift) % n + 1).collect()).collect();
        let g = Hypergraph::new(n, moved).unwrap();
        let (a, b) = (Spectra::of(&h, DEFAULT_TOL).unwrap(), Spectra::of(&g, DEFAULT_TOL).unwrap());
        for (x, y) in a.signless_laplacian.values.iter().zip(&b.signless_laplacian.values) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }
}

#[test]
fn context_from_another_hypergraph_is_rejected() {
    let h = random_connected_uniform(6, 3, 4, 1).unwrap();
    let g = random_connected_uniform(6, 3, 4, 2).unwrap();
    assert_ne!(h.edge_hash(), g.edge_hash());
    let ctx = Context::build(&h, DEFAULT_TOL).unwrap();
    assert!(evaluate(&g, spec("B01").unwrap(), &ctx, Tolerances::default()).is_err());
    assert!(evaluate(&h, spec("B01").unwrap(), &ctx, Tolerances::default()).is_ok());
}
