//! Combinatorial invariants of the 2-section graph: weak independence
//! number `tau`, strong chromatic number `chi`, and the structural
//! predicates that appear in equality characterizations.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::Hypergraph;
use crate::invariants::InvariantSet;

/// Largest vertex count accepted by the exact colouring search.
pub const CHI_CAP: usize = 16;
/// Largest vertex count accepted by the 2-colourability search.
pub const SPLIT_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("{what} refused: n = {n} exceeds the cap of {cap}")]
    TooLarge { what: &'static str, n: usize, cap: usize },
}

/// Weak independence number.
///
/// A weak independent set `S` is independent and every member is adjacent
/// to every vertex outside it, so each member `s` has neighbourhood exactly
/// `V \ S`. Hence `S = V \ N(s)` for any `s` in `S`, and the only candidates
/// are the sets `V \ N(v)`. A candidate is valid iff all of its members
/// share the neighbourhood `N(v)`. Returns 0 when no candidate is valid.
pub fn weak_independence_number(h: &Hypergraph) -> usize {
    let adj = h.neighbours();
    let n = h.vertex_count();
    (0..n)
        .filter_map(|v| {
            let mut is_nb = vec![false; n];
            for &w in &adj[v] {
                is_nb[w] = true;
            }
            let members: Vec<usize> = (0..n).filter(|&u| !is_nb[u]).collect();
            members.iter().all(|&u| adj[u] == adj[v]).then_some(members.len())
        })
        .max()
        .unwrap_or(0)
}

/// Chromatic number of the 2-section graph by branch and bound.
pub fn strong_chromatic_number(h: &Hypergraph) -> Result<usize, StructureError> {
    let n = h.vertex_count();
    if n > CHI_CAP {
        return Err(StructureError::TooLarge { what: "strong chromatic number", n, cap: CHI_CAP });
    }
    let adj = h.neighbour_masks();
    // colour high-degree vertices first
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(adj[v].count_ones()));
    let upper = greedy_colours(&adj, &order);
    let lower = greedy_clique(&adj, &order);
    for c in lower..upper {
        let mut colour = vec![usize::MAX; n];
        if colourable(&adj, &order, 0, c, 0, &mut colour) {
            return Ok(c);
        }
    }
    Ok(upper)
}

fn greedy_colours(adj: &[u64], order: &[usize]) -> usize {
    let mut colour = vec![usize::MAX; adj.len()];
    let mut used = 0;
    for &v in order {
        let c = (0..).find(|&c| order.iter().all(|&w| adj[v] >> w & 1 == 0 || colour[w] != c)).unwrap();
        colour[v] = c;
        used = used.max(c + 1);
    }
    used.max(usize::from(!adj.is_empty()))
}

fn greedy_clique(adj: &[u64], order: &[usize]) -> usize {
    let mut best = usize::from(!adj.is_empty());
    for &start in order {
        let mut clique = 1u64 << start;
        let mut cand = adj[start];
        for &v in order {
            if cand >> v & 1 == 1 {
                clique |= 1 << v;
                cand &= adj[v];
            }
        }
        best = best.max(clique.count_ones() as usize);
    }
    best
}

/// Can the vertices `order[i..]` be coloured with at most `c` colours given
/// the assignment so far? New colours are opened in order, which removes
/// colour-permutation symmetry.
fn colourable(adj: &[u64], order: &[usize], i: usize, c: usize, opened: usize, colour: &mut [usize]) -> bool {
    let Some(&v) = order.get(i) else { return true };
    for k in 0..(opened + 1).min(c) {
        let clash = order[..i].iter().any(|&w| adj[v] >> w & 1 == 1 && colour[w] == k);
        if clash {
            continue;
        }
        colour[v] = k;
        if colourable(adj, order, i + 1, c, opened.max(k + 1), colour) {
            return true;
        }
    }
    colour[v] = usize::MAX;
    false
}

/// 2-colouring of the 2-section graph, one entry per vertex, or `None` if it
/// has an odd cycle. Each component is coloured from its smallest vertex.
pub fn two_colouring(h: &Hypergraph) -> Option<Vec<u8>> {
    let adj = h.neighbours();
    let n = h.vertex_count();
    let mut side = vec![u8::MAX; n];
    for root in 0..n {
        if side[root] != u8::MAX {
            continue;
        }
        side[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    queue.push_back(w);
                } else if side[w] == side[v] {
                    return None;
                }
            }
        }
    }
    Some(side)
}

pub fn underlying_graph_bipartite(h: &Hypergraph) -> bool {
    two_colouring(h).is_some()
}

/// Some split of `V` into two parts has every edge meeting both parts.
pub fn is_bipartite_hypergraph(h: &Hypergraph) -> Result<bool, StructureError> {
    let n = h.vertex_count();
    if n > SPLIT_CAP {
        return Err(StructureError::TooLarge { what: "hypergraph 2-colouring", n, cap: SPLIT_CAP });
    }
    let edges: Vec<u64> = h.edges().iter().map(|e| e.iter().fold(0u64, |m, &v| m | 1 << (v - 1))).collect();
    // edges fully decided once their largest vertex is assigned
    let mut closing: Vec<Vec<u64>> = vec![Vec::new(); n];
    for (&mask, e) in edges.iter().zip(h.edges()) {
        closing[e[e.len() - 1] - 1].push(mask);
    }
    fn split(v: usize, n: usize, left: u64, closing: &[Vec<u64>]) -> bool {
        if v == n {
            return true;
        }
        // vertex 0 goes left by symmetry
        let choices: &[bool] = if v == 0 { &[true] } else { &[true, false] };
        choices.iter().any(|&go_left| {
            let l = if go_left { left | 1 << v } else { left };
            closing[v].iter().all(|&e| e & l != 0 && e & !l != 0) && split(v + 1, n, l, closing)
        })
    }
    Ok(split(0, n, 0, &closing))
}

/// `Some((a, b))` with `a <= b` when `H` is the complete bipartite graph
/// `K_{a,b}`.
pub fn complete_bipartite_sides(h: &Hypergraph) -> Option<(usize, usize)> {
    if h.uniformity() != Some(2) || !h.is_connected() {
        return None;
    }
    let side = two_colouring(h)?;
    let a = side.iter().filter(|&&s| s == 0).count();
    let b = side.len() - a;
    (h.edge_count() == a * b).then_some((a.min(b), a.max(b)))
}

/// A connected bipartite graph whose degrees are constant on each side.
pub fn is_bipartite_semiregular_graph(h: &Hypergraph) -> bool {
    if h.uniformity() != Some(2) || !h.is_connected() {
        return false;
    }
    let Some(side) = two_colouring(h) else { return false };
    let inv = InvariantSet::of(h);
    [0u8, 1].iter().all(|&s| {
        let mut degs = side.iter().zip(&inv.degrees).filter(|(&x, _)| x == s).map(|(_, &d)| d);
        match degs.next() {
            Some(first) => degs.all(|d| d == first),
            None => true,
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StructureProfile {
    pub tau: usize,
    pub chi: usize,
    pub is_regular: bool,
    pub is_linear: bool,
    pub is_bipartite_hypergraph: bool,
    pub underlying_graph_bipartite: bool,
    pub is_complete_bipartite_graph: Option<(usize, usize)>,
    pub is_bipartite_semiregular_graph: bool,
}

pub fn structure_profile(h: &Hypergraph) -> Result<StructureProfile, StructureError> {
    let inv = InvariantSet::of(h);
    Ok(StructureProfile {
        tau: weak_independence_number(h),
        chi: strong_chromatic_number(h)?,
        is_regular: inv.is_regular(),
        is_linear: inv.is_linear(),
        is_bipartite_hypergraph: is_bipartite_hypergraph(h)?,
        underlying_graph_bipartite: underlying_graph_bipartite(h),
        is_complete_bipartite_graph: complete_bipartite_sides(h),
        is_bipartite_semiregular_graph: is_bipartite_semiregular_graph(h),
    })
}
