use crate::eigen::{eigenvalues, EigenError, Spectra, SpectralSummary, SpectrumKind};
use crate::hypergraph::{binomial, Hypergraph};
use crate::invariants::InvariantSet;
use crate::matrix::{signless_laplacian, SymmetricMatrix};
use crate::structure::{
    complete_bipartite_sides, is_bipartite_semiregular_graph, strong_chromatic_number, underlying_graph_bipartite,
    weak_independence_number, StructureError,
};

/// Largest vertex count for exhaustive `(X, Y)` enumeration.
pub const XY_CAP: usize = 14;
/// Largest edge count of a complement that is built explicitly.
pub const COMPLEMENT_CAP: u128 = 100_000;

/// Extremes over disjoint, mutually non-adjacent, nonempty vertex sets
/// `X` and `Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct XyExtremes {
    /// Largest `max(|X|, |Y|)`.
    pub max_side: usize,
    /// Largest `|X| + |Y|`.
    pub max_total: usize,
    /// Smallest `|X| + |Y|`.
    pub min_total: usize,
    /// False when only singleton pairs were examined.
    pub exhaustive: bool,
}

/// Everything the bound formulas read, computed once per hypergraph.
#[derive(Debug, Clone)]
pub struct Context {
    pub(crate) n: usize,
    pub(crate) edge_hash: u64,
    pub k: Option<usize>,
    pub connected: bool,
    pub inv: InvariantSet,
    pub spectra: Spectra,
    pub summary: SpectralSummary,
    pub q: SymmetricMatrix,
    pub tau: usize,
    pub chi: Result<usize, StructureError>,
    pub two_section_bipartite: bool,
    pub complete_bipartite: Option<(usize, usize)>,
    pub bipartite_semiregular: bool,
    /// `None` when the 2-section graph is complete.
    pub xy: Option<XyExtremes>,
    /// `q_max` of the complement, or why it was not computed.
    pub complement_q_max: Result<f64, String>,
}

impl Context {
    pub fn build(h: &Hypergraph, tol: f64) -> Result<Self, EigenError> {
        let spectra = Spectra::of(h, tol)?;
        let summary = spectra.summary();
        Ok(Self {
            n: h.vertex_count(),
            edge_hash: h.edge_hash(),
            k: h.uniformity(),
            connected: h.is_connected(),
            inv: InvariantSet::of(h),
            q: signless_laplacian(h),
            spectra,
            summary,
            tau: weak_independence_number(h),
            chi: strong_chromatic_number(h),
            two_section_bipartite: underlying_graph_bipartite(h),
            complete_bipartite: complete_bipartite_sides(h),
            bipartite_semiregular: is_bipartite_semiregular_graph(h),
            xy: xy_extremes(h),
            complement_q_max: complement_q_max(h, tol),
        })
    }

    /// True iff this context was built from `h`.
    pub fn matches(&self, h: &Hypergraph) -> bool {
        self.n == h.vertex_count() && self.edge_hash == h.edge_hash()
    }
}

fn complement_q_max(h: &Hypergraph, tol: f64) -> Result<f64, String> {
    let k = h.uniformity().ok_or("not uniform")?;
    let n = h.vertex_count();
    let total = binomial(n as i64, k as i64);
    if total > COMPLEMENT_CAP {
        return Err(format!("resource cap: complement would have {total} candidate edges"));
    }
    let c = h.complement().map_err(|e| e.to_string())?;
    let s = eigenvalues(&signless_laplacian(&c), SpectrumKind::SignlessLaplacian, tol).map_err(|e| e.to_string())?;
    Ok(s.max())
}

/// For each nonempty `X`, the largest valid `Y` is `V \ N[X]`; every
/// smaller nonempty `Y` inside it is valid too. Above [`XY_CAP`] vertices
/// only singleton pairs are used.
fn xy_extremes(h: &Hypergraph) -> Option<XyExtremes> {
    let n = h.vertex_count();
    let adj = h.neighbours();
    let non_adjacent_pair = (0..n).any(|u| adj[u].len() + 1 < n);
    if !non_adjacent_pair {
        return None;
    }
    if n > XY_CAP {
        return Some(XyExtremes { max_side: 1, max_total: 2, min_total: 2, exhaustive: false });
    }
    let masks: Vec<u32> = adj.iter().map(|a| a.iter().fold(0u32, |m, &w| m | 1 << w)).collect();
    let full = (1u32 << n) - 1;
    let mut best = XyExtremes { max_side: 0, max_total: 0, min_total: usize::MAX, exhaustive: true };
    for x in 1..=full {
        let closed = (0..n).filter(|&v| x >> v & 1 == 1).fold(x, |m, v| m | masks[v]);
        let y = full & !closed;
        if y == 0 {
            continue;
        }
        let (sx, sy) = (x.count_ones() as usize, y.count_ones() as usize);
        best.max_side = best.max_side.max(sx.max(sy));
        best.max_total = best.max_total.max(sx + sy);
        best.min_total = best.min_total.min(sx + 1);
    }
    Some(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete_bipartite_graph, complete_uniform};

    #[test]
    fn xy_on_small_graphs() {
        assert_eq!(xy_extremes(&complete_uniform(4, 3).unwrap()), None);
        // K_{2,3}: X and Y on one side only; the side of 3 splits as 2 + 1
        let x = xy_extremes(&complete_bipartite_graph(2, 3).unwrap()).unwrap();
        assert_eq!((x.max_side, x.max_total, x.min_total), (2, 3, 2));
        let path = Hypergraph::new(4, vec![vec![1, 2], vec![2, 3], vec![3, 4]]).unwrap();
        let x = xy_extremes(&path).unwrap();
        // X = {1}, Y = {3, 4}
        assert_eq!((x.max_side, x.max_total), (2, 3));
    }

    #[test]
    fn context_identity() {
        let h = complete_uniform(4, 3).unwrap();
        let ctx = Context::build(&h, 1e-12).unwrap();
        assert!(ctx.matches(&h));
        assert!(!ctx.matches(&complete_uniform(5, 3).unwrap()));
        assert_eq!(ctx.complement_q_max, Ok(0.0));
    }
}
