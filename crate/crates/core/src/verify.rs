//! The full invariant suite for one hypergraph: spectral identities, exact
//! oracle agreement, equitable-partition interlacing, edge-deletion
//! monotonicity and the asserted bounds.

use serde::Serialize;

use crate::bounds::{evaluate_catalog, Context, Tolerances};
use crate::eigen::{eigenvalues, Spectra, SpectrumKind, DEFAULT_TOL};
use crate::hypergraph::Hypergraph;
use crate::invariants::InvariantSet;
use crate::matrix::{coarsest_equitable_partition, laplacian, quotient_matrix, Partition};
use crate::oracle::{exact_charpoly, naive_chi, naive_tau, residuals, CHARPOLY_CAP, NAIVE_CAP};
use crate::structure::{strong_chromatic_number, underlying_graph_bipartite, weak_independence_number};

pub const RESIDUAL_TOL: f64 = 1e-6;
pub const IDENTITY_TOL: f64 = 1e-9;
pub const INTERLACE_TOL: f64 = 1e-7;
pub const MONOTONE_TOL: f64 = 1e-8;
pub const POSITIVE_TOL: f64 = 1e-8;
/// Largest edge count for which every single-edge deletion is checked.
pub const DELETION_CAP: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

fn check(name: &'static str, ok: bool, detail: String) -> Check {
    Check { name, status: if ok { Status::Pass } else { Status::Fail }, detail }
}

fn skipped(name: &'static str, detail: impl Into<String>) -> Check {
    Check { name, status: Status::Skipped, detail: detail.into() }
}

/// Runs every check that applies to `h`; checks outside their range are
/// reported as skipped.
pub fn verify(h: &Hypergraph) -> VerifyReport {
    let spectra = match Spectra::of(h, DEFAULT_TOL) {
        Ok(s) => s,
        Err(e) => return VerifyReport { checks: vec![check("eigensolve", false, e.to_string())] },
    };
    let inv = InvariantSet::of(h);
    let s = spectra.summary();
    let mut checks = Vec::new();

    checks.push(check("signless Laplacian is PSD", s.q_min >= -IDENTITY_TOL, format!("q_min = {}", s.q_min)));
    let deg_sum = inv.degree_sum() as f64;
    let tr = spectra.signless_laplacian.sum();
    checks.push(check("trace(Q) = sum of degrees", (tr - deg_sum).abs() <= IDENTITY_TOL * deg_sum.max(1.0), format!("{tr} vs {deg_sum}")));
    checks.push(check("mu_max <= q_max", s.mu_max <= s.q_max + IDENTITY_TOL, format!("{} vs {}", s.mu_max, s.q_max)));

    match h.uniformity() {
        Some(k) => {
            let sq: f64 = spectra.signless_laplacian.values.iter().map(|q| q * q).sum();
            let want = inv.z1 as f64 + inv.alpha as f64 / ((k - 1) * (k - 1)) as f64;
            let ok = (sq - want).abs() <= IDENTITY_TOL * want.max(1.0);
            checks.push(check("trace(Q^2) = Z1 + alpha/(k-1)^2", ok, format!("{sq} vs {want}")));
        }
        None => checks.push(skipped("trace(Q^2) = Z1 + alpha/(k-1)^2", "not uniform")),
    }

    checks.push(positivity(h, s.q_min));
    checks.extend(oracle_residuals(h, &spectra));
    checks.extend(naive_agreement(h));
    checks.push(interlacing(h, &spectra));
    checks.push(deletion_monotonicity(h, &spectra));
    checks.push(asserted_bounds(h));
    VerifyReport { checks }
}

fn positivity(h: &Hypergraph, q_min: f64) -> Check {
    const NAME: &str = "q_min positivity";
    if !h.is_connected() || h.is_empty() {
        return skipped(NAME, "not connected or no edges");
    }
    match h.uniformity() {
        Some(2) => {
            let bipartite = underlying_graph_bipartite(h);
            let zero = q_min < POSITIVE_TOL;
            check(NAME, zero == bipartite, format!("k = 2, q_min = {q_min}, bipartite = {bipartite}"))
        }
        Some(k) => check(NAME, q_min > POSITIVE_TOL, format!("k = {k}, q_min = {q_min}")),
        None => skipped(NAME, "not uniform"),
    }
}

fn oracle_residuals(h: &Hypergraph, spectra: &Spectra) -> Vec<Check> {
    const NAME: &str = "exact characteristic polynomial residuals";
    let Some(k) = h.uniformity() else { return vec![skipped(NAME, "not uniform")] };
    if h.vertex_count() > CHARPOLY_CAP {
        return vec![skipped(NAME, format!("n exceeds {CHARPOLY_CAP}"))];
    }
    [&spectra.adjacency, &spectra.laplacian, &spectra.signless_laplacian]
        .into_iter()
        .map(|spectrum| {
            let p = exact_charpoly(h, spectrum.kind).expect("uniform and within the cap");
            let worst = residuals(&p, &spectrum.values, (k - 1) as f64).into_iter().fold(0.0, f64::max);
            check(NAME, worst <= RESIDUAL_TOL, format!("{:?}: worst residual {worst:e}", spectrum.kind))
        })
        .collect()
}

fn naive_agreement(h: &Hypergraph) -> Vec<Check> {
    if h.vertex_count() > NAIVE_CAP {
        return vec![skipped("naive tau and chi agree", format!("n exceeds {NAIVE_CAP}"))];
    }
    let tau = weak_independence_number(h);
    let naive = naive_tau(h).expect("within the cap");
    let chi = strong_chromatic_number(h).expect("within the cap");
    let naive_c = naive_chi(h).expect("within the cap");
    vec![
        check("naive tau agrees", tau == naive, format!("{tau} vs {naive}")),
        check("naive chi agrees", chi == naive_c, format!("{chi} vs {naive_c}")),
    ]
}

/// Each quotient eigenvalue of an equitable partition is an eigenvalue of
/// `L`. The coarsest partition is used; singletons reproduce `L` itself.
fn interlacing(h: &Hypergraph, spectra: &Spectra) -> Check {
    const NAME: &str = "equitable quotient eigenvalues lie in the L spectrum";
    let n = h.vertex_count();
    let mut worst: f64 = 0.0;
    for p in [coarsest_equitable_partition(h), Partition::singletons(n)] {
        let quotient = match quotient_matrix(h, &p) {
            Ok(q) => q,
            Err(e) => return check(NAME, false, e.to_string()),
        };
        let values = match eigenvalues(&quotient.symmetrized(), SpectrumKind::Quotient, DEFAULT_TOL) {
            Ok(s) => s.values,
            Err(e) => return check(NAME, false, e.to_string()),
        };
        for v in values {
            let gap = spectra.laplacian.values.iter().map(|l| (l - v).abs()).fold(f64::INFINITY, f64::min);
            worst = worst.max(gap);
        }
    }
    check(NAME, worst <= INTERLACE_TOL, format!("largest distance {worst:e}"))
}

/// `mu_i(H) >= mu_i(H - e)` for every single edge `e`.
fn deletion_monotonicity(h: &Hypergraph, spectra: &Spectra) -> Check {
    const NAME: &str = "edge-deletion monotonicity of L";
    if h.edge_count() > DELETION_CAP {
        return skipped(NAME, format!("m exceeds {DELETION_CAP}"));
    }
    let mut worst: f64 = 0.0;
    for e in h.edges() {
        let smaller = h.delete_edges(std::slice::from_ref(e)).expect("edge of h");
        let after = match eigenvalues(&laplacian(&smaller), SpectrumKind::Laplacian, DEFAULT_TOL) {
            Ok(s) => s,
            Err(err) => return check(NAME, false, err.to_string()),
        };
        for (before, after) in spectra.laplacian.values.iter().zip(&after.values) {
            worst = worst.max(after - before);
        }
    }
    check(NAME, worst <= MONOTONE_TOL, format!("largest increase {worst:e}"))
}

fn asserted_bounds(h: &Hypergraph) -> Check {
    const NAME: &str = "asserted bounds";
    let ctx = match Context::build(h, DEFAULT_TOL) {
        Ok(c) => c,
        Err(e) => return check(NAME, false, e.to_string()),
    };
    let evals = evaluate_catalog(h, &ctx, Tolerances::default());
    if evals.iter().all(|e| !e.applicable) {
        return skipped(NAME, evals[0].reason.clone().unwrap_or_default());
    }
    let failed: Vec<&str> = evals.iter().filter(|e| e.is_asserted_failure()).map(|e| e.bound_id).collect();
    let applicable = evals.iter().filter(|e| e.applicable).count();
    check(NAME, failed.is_empty(), format!("{applicable} applicable, failed: {failed:?}"))
}
