//! Dense symmetric matrices of a hypergraph: adjacency `A`, degree `D`,
//! Laplacian `L = D - A`, signless Laplacian `Q = D + A`, plus quotient
//! matrices of equitable partitions and two small polynomial tools.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::Hypergraph;

/// Absolute tolerance for comparing block row sums.
pub const EQUITABLE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("matrix is not square: {rows} rows, row {row} has {len} entries")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("entry ({i},{j}) differs from ({j},{i})")]
    NotSymmetric { i: usize, j: usize },
    #[error("entry ({i},{j}) is not finite")]
    NotFinite { i: usize, j: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition is not equitable: vertex {vertex} has a different row sum into block {block}")]
    NotEquitable { vertex: usize, block: usize },
}

/// Dense real symmetric matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetricMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(order: usize) -> Self {
        Self { order, entries: vec![0.0; order * order] }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.entries[i * order + i] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, MatrixError> {
        let order = rows.len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != order {
                return Err(MatrixError::NotSquare { rows: order, row, len: r.len() });
            }
        }
        for i in 0..order {
            for j in 0..order {
                if !rows[i][j].is_finite() {
                    return Err(MatrixError::NotFinite { i, j });
                }
                if rows[i][j] != rows[j][i] {
                    return Err(MatrixError::NotSymmetric { i, j });
                }
            }
        }
        Ok(Self { order, entries: rows.concat() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    /// Sets `(i,j)` and `(j,i)` together.
    fn set_pair(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i * self.order + j] = v;
        self.entries[j * self.order + i] = v;
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.order.max(1)).map(<[f64]>::to_vec).take(self.order).collect()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.order).map(|i| (0..self.order).map(|j| self.get(i, j)).sum()).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { order: self.order, entries: self.entries.iter().map(|x| c * x).collect() }
    }

    fn zip(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        assert_eq!(self.order, other.order, "order mismatch");
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| f(a, b)).collect();
        Self { order: self.order, entries }
    }

    /// Plain row-major product. The result of multiplying two commuting
    /// symmetric matrices (e.g. polynomials in the same matrix) is symmetric
    /// up to rounding; it is re-symmetrized by averaging.
    pub fn mul_commuting(&self, other: &Self) -> Self {
        let n = self.order;
        let mut raw = vec![0.0; n * n];
        for i in 0..n {
            for l in 0..n {
                let a = self.get(i, l);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    raw[i * n + j] += a * other.get(l, j);
                }
            }
        }
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                out.set_pair(i, j, 0.5 * (raw[i * n + j] + raw[j * n + i]));
            }
        }
        out
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.entries.iter().zip(&other.entries).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("finite entries always serialize")
    }
}

/// `A(H)`: entry `(i,j)` is the sum of `1/(|e|-1)` over edges containing
/// both `i` and `j`.
///
/// Per edge size, co-degree counts are accumulated as integers and divided
/// once by `|e| - 1`.
pub fn adjacency(h: &Hypergraph) -> SymmetricMatrix {
    let n = h.vertex_count();
    let mut counts: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for e in h.edges() {
        let c = counts.entry(e.len()).or_insert_with(|| vec![0; n * n]);
        for &a in e {
            for &b in e {
                if a != b {
                    c[(a - 1) * n + (b - 1)] += 1;
                }
            }
        }
    }
    let mut m = SymmetricMatrix::zeros(n);
    for (size, c) in counts {
        let denom = (size - 1) as f64;
        for (slot, &cnt) in m.entries.iter_mut().zip(&c) {
            if cnt > 0 {
                *slot += cnt as f64 / denom;
            }
        }
    }
    m
}

/// `D(H)`: vertex degrees on the diagonal.
pub fn degree_matrix(h: &Hypergraph) -> SymmetricMatrix {
    let n = h.vertex_count();
    let mut m = SymmetricMatrix::zeros(n);
    for e in h.edges() {
        for &v in e {
            m.entries[(v - 1) * n + (v - 1)] += 1.0;
        }
    }
    m
}

pub fn laplacian(h: &Hypergraph) -> SymmetricMatrix {
    degree_matrix(h).sub(&adjacency(h))
}

pub fn signless_laplacian(h: &Hypergraph) -> SymmetricMatrix {
    degree_matrix(h).add(&adjacency(h))
}

/// Disjoint nonempty vertex blocks covering `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn new(n: usize, mut blocks: Vec<Vec<usize>>) -> Result<Self, MatrixError> {
        let mut seen = vec![false; n];
        for b in &mut blocks {
            if b.is_empty() {
                return Err(MatrixError::InvalidPartition("empty block".into()));
            }
            b.sort_unstable();
            for &v in b.iter() {
                if v == 0 || v > n {
                    return Err(MatrixError::InvalidPartition(format!("vertex {v} outside 1..={n}")));
                }
                if std::mem::replace(&mut seen[v - 1], true) {
                    return Err(MatrixError::InvalidPartition(format!("vertex {v} appears twice")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(MatrixError::InvalidPartition(format!("vertex {} is not covered", v + 1)));
        }
        Ok(Self { blocks })
    }

    pub fn singletons(n: usize) -> Self {
        Self { blocks: (1..=n).map(|v| vec![v]).collect() }
    }

    pub fn whole(n: usize) -> Self {
        Self { blocks: vec![(1..=n).collect()] }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    fn block_of(&self, n: usize) -> Vec<usize> {
        let mut of = vec![0; n];
        for (p, b) in self.blocks.iter().enumerate() {
            for &v in b {
                of[v - 1] = p;
            }
        }
        of
    }
}

/// Row sums of `a` from vertex `i` into every block.
fn block_sums(a: &SymmetricMatrix, block_of: &[usize], t: usize, i: usize) -> Vec<f64> {
    let mut sums = vec![0.0; t];
    for (j, &b) in block_of.iter().enumerate() {
        sums[b] += a.get(i, j);
    }
    sums
}

/// Checks whether `p` is equitable for `A(H)` and returns the constants
/// `m_pq` (row sum into block `q` from any vertex of block `p`).
///
/// On failure the first `(vertex, block)` pair (1-based vertex, 1-based
/// block) whose row sum disagrees with the block's first vertex is reported.
pub fn equitable_constants(h: &Hypergraph, p: &Partition) -> Result<Vec<Vec<f64>>, MatrixError> {
    let n = h.vertex_count();
    let a = adjacency(h);
    let block_of = p.block_of(n);
    let t = p.len();
    let mut table = Vec::with_capacity(t);
    for block in p.blocks() {
        let reference = block_sums(&a, &block_of, t, block[0] - 1);
        for &v in &block[1..] {
            let sums = block_sums(&a, &block_of, t, v - 1);
            if let Some(q) = (0..t).find(|&q| (sums[q] - reference[q]).abs() > EQUITABLE_TOL) {
                return Err(MatrixError::NotEquitable { vertex: v, block: q + 1 });
            }
        }
        table.push(reference);
    }
    Ok(table)
}

/// Quotient matrix `M` of an equitable partition: `-m_pq` off the diagonal
/// and `(sum_s m_ps) - m_pp` on it. Every eigenvalue of `M` is an
/// eigenvalue of `L(H)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuotientMatrix {
    pub constants: Vec<Vec<f64>>,
    pub block_sizes: Vec<usize>,
    pub entries: Vec<Vec<f64>>,
}

impl QuotientMatrix {
    pub fn order(&self) -> usize {
        self.entries.len()
    }

    /// `S^{1/2} M S^{-1/2}` with `S = diag(block sizes)`. It is symmetric
    /// because `|V_p| m_pq = |V_q| m_qp`, and it has the spectrum of `M`.
    pub fn symmetrized(&self) -> SymmetricMatrix {
        let t = self.order();
        let mut s = SymmetricMatrix::zeros(t);
        for p in 0..t {
            s.set_pair(p, p, self.entries[p][p]);
            for q in (p + 1)..t {
                let w = (self.block_sizes[p] as f64 / self.block_sizes[q] as f64).sqrt();
                let up = w * self.entries[p][q];
                let down = self.entries[q][p] / w;
                s.set_pair(p, q, 0.5 * (up + down));
            }
        }
        s
    }
}

pub fn quotient_matrix(h: &Hypergraph, p: &Partition) -> Result<QuotientMatrix, MatrixError> {
    let constants = equitable_constants(h, p)?;
    let t = constants.len();
    let entries = (0..t)
        .map(|r| {
            (0..t)
                .map(|c| {
                    if r == c {
                        constants[r].iter().sum::<f64>() - constants[r][r]
                    } else {
                        -constants[r][c]
                    }
                })
                .collect()
        })
        .collect();
    Ok(QuotientMatrix { constants, block_sizes: p.blocks().iter().map(Vec::len).collect(), entries })
}

/// Coarsest equitable partition, found by iterated refinement of the
/// one-block partition on block row sums of `A(H)`.
pub fn coarsest_equitable_partition(h: &Hypergraph) -> Partition {
    let n = h.vertex_count();
    let a = adjacency(h);
    // row sums are multiples of 1/lcm(|e|-1); scale to integers before keying
    let scale = h.edges().iter().map(|e| (e.len() - 1) as u64).fold(1u64, lcm) as f64;
    let mut colour = vec![0usize; n];
    let mut classes = 1;
    loop {
        let mut keys: HashMap<(usize, Vec<i64>), usize> = HashMap::new();
        let mut next = vec![0usize; n];
        for i in 0..n {
            let sums: Vec<i64> =
                block_sums(&a, &colour, classes, i).iter().map(|s| (s * scale).round() as i64).collect();
            let fresh = keys.len();
            next[i] = *keys.entry((colour[i], sums)).or_insert(fresh);
        }
        let refined = keys.len();
        colour = next;
        if refined == classes {
            break;
        }
        classes = refined;
    }
    let mut blocks = vec![Vec::new(); classes];
    for (v, &c) in colour.iter().enumerate() {
        blocks[c].push(v + 1);
    }
    Partition { blocks }
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Evaluates the polynomial (constant term first) at `x` by Horner's rule.
pub fn poly_eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Product of two polynomials, constant term first.
pub fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Minimum and maximum row sums of `P(M)`, where `poly` lists the
/// coefficients of `P` constant term first. For a nonnegative irreducible
/// `M` these bracket `P(rho(M))`.
pub fn row_sum_bracket(m: &SymmetricMatrix, poly: &[f64]) -> (f64, f64) {
    assert!(!poly.is_empty(), "polynomial must have at least one coefficient");
    let n = m.order();
    let id = SymmetricMatrix::identity(n);
    let mut acc = id.scale(poly[poly.len() - 1]);
    for &c in poly.iter().rev().skip(1) {
        acc = acc.mul_commuting(m).add(&id.scale(c));
    }
    let sums = acc.row_sums();
    let low = sums.iter().copied().fold(f64::INFINITY, f64::min);
    let high = sums.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (low, high)
}

/// Characteristic polynomial of the bordered matrix
/// `[[lambda I_n, x], [y^T, a]]`, constant term first:
/// `(t - lambda)^(n-1) (t^2 - (a + lambda) t + a lambda - y.x)`.
pub fn bordered_charpoly(lambda: f64, x: &[f64], y: &[f64], a: f64) -> Vec<f64> {
    assert_eq!(x.len(), y.len(), "border vectors must have equal length");
    assert!(!x.is_empty(), "border vectors must be nonempty");
    let yx: f64 = x.iter().zip(y).map(|(p, q)| p * q).sum();
    let mut poly = vec![a * lambda - yx, -(a + lambda), 1.0];
    for _ in 1..x.len() {
        poly = poly_mul(&poly, &[-lambda, 1.0]);
    }
    poly
}
