//! Independent checks: exact characteristic polynomials of the integer
//! matrices `(k-1) A`, `(k-1) L`, `(k-1) Q`, and unpruned searches for the
//! weak independence and strong chromatic numbers.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::eigen::SpectrumKind;
use crate::hypergraph::Hypergraph;
use crate::invariants::InvariantSet;

pub const CHARPOLY_CAP: usize = 16;
pub const NAIVE_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} refused: n = {n} exceeds the cap of {cap}")]
    TooLarge { what: &'static str, n: usize, cap: usize },
    #[error("exact characteristic polynomials need a uniform hypergraph")]
    NotUniform,
    #[error("no exact oracle for {0:?} matrices")]
    UnsupportedKind(SpectrumKind),
}

/// Integer polynomial, constant term first, without trailing zeros (the
/// zero polynomial is empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerPolynomial {
    coefficients: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    fn float_coefficients(&self) -> Vec<f64> {
        self.coefficients.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.float_coefficients().iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }
}

/// `(k-1)` times the chosen matrix, as exact integers.
pub fn scaled_integer_matrix(h: &Hypergraph, kind: SpectrumKind) -> Result<Vec<Vec<i64>>, OracleError> {
    let k = h.uniformity().ok_or(OracleError::NotUniform)? as i64;
    // (diagonal factor, off-diagonal factor) applied to (k-1) d_i and d_ij
    let (diag, off): (i64, i64) = match kind {
        SpectrumKind::Adjacency => (0, 1),
        SpectrumKind::Laplacian => (1, -1),
        SpectrumKind::SignlessLaplacian => (1, 1),
        SpectrumKind::Quotient => return Err(OracleError::UnsupportedKind(kind)),
    };
    let inv = InvariantSet::of(h);
    let n = h.vertex_count();
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        diag * (k - 1) * inv.degrees[i] as i64
                    } else {
                        off * inv.codegrees[i][j] as i64
                    }
                })
                .collect()
        })
        .collect())
}

/// Characteristic polynomial `det(tI - (k-1)M)` by the Faddeev-LeVerrier
/// recurrence. Every division in the recurrence is exact; it is done in
/// `i128` when nothing overflows and in arbitrary precision otherwise.
///
/// ```
/// use hyperspectra::eigen::SpectrumKind;
/// use hyperspectra::generate::single_edge;
/// use hyperspectra::oracle::{exact_charpoly, IntegerPolynomial};
///
/// // 2Q of the single triple is [[2,1,1],[1,2,1],[1,1,2]]
/// let p = exact_charpoly(&single_edge(3).unwrap(), SpectrumKind::SignlessLaplacian).unwrap();
/// assert_eq!(p, IntegerPolynomial::from_i64(&[-4, 9, -6, 1]));
/// ```
pub fn exact_charpoly(h: &Hypergraph, kind: SpectrumKind) -> Result<IntegerPolynomial, OracleError> {
    let n = h.vertex_count();
    if n > CHARPOLY_CAP {
        return Err(OracleError::TooLarge { what: "exact characteristic polynomial", n, cap: CHARPOLY_CAP });
    }
    let b = scaled_integer_matrix(h, kind)?;
    Ok(charpoly_of(&b))
}

/// Characteristic polynomial of an arbitrary square integer matrix.
pub fn charpoly_of(b: &[Vec<i64>]) -> IntegerPolynomial {
    match faddeev_i128(b) {
        Some(c) => IntegerPolynomial::new(c.into_iter().map(BigInt::from).collect()),
        None => IntegerPolynomial::new(faddeev_big(b)),
    }
}

fn faddeev_i128(b: &[Vec<i64>]) -> Option<Vec<i128>> {
    let n = b.len();
    let b: Vec<Vec<i128>> = b.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect();
    let mut coeffs = vec![0i128; n + 1];
    coeffs[n] = 1;
    let mut m = vec![vec![0i128; n]; n];
    for step in 1..=n {
        // M_step = B M_{step-1} + c_{n-step+1} I
        let mut next = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s: i128 = 0;
                for l in 0..n {
                    s = s.checked_add(b[i][l].checked_mul(m[l][j])?)?;
                }
                next[i][j] = s;
            }
            next[i][i] = next[i][i].checked_add(coeffs[n - step + 1])?;
        }
        m = next;
        let mut trace: i128 = 0;
        for i in 0..n {
            for l in 0..n {
                trace = trace.checked_add(b[i][l].checked_mul(m[l][i])?)?;
            }
        }
        let step = step as i128;
        assert_eq!(trace % step, 0, "Faddeev-LeVerrier division must be exact");
        coeffs[n - step as usize] = -(trace / step);
    }
    Some(coeffs)
}

fn faddeev_big(b: &[Vec<i64>]) -> Vec<BigInt> {
    let n = b.len();
    let b: Vec<Vec<BigInt>> = b.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::from(1);
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for step in 1..=n {
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                next[i][j] = (0..n).map(|l| &b[i][l] * &m[l][j]).sum();
            }
            next[i][i] += &coeffs[n - step + 1];
        }
        m = next;
        let trace: BigInt = (0..n).flat_map(|i| (0..n).map(move |l| (i, l))).map(|(i, l)| &b[i][l] * &m[l][i]).sum();
        let d = BigInt::from(step);
        assert!((&trace % &d).is_zero(), "Faddeev-LeVerrier division must be exact");
        coeffs[n - step] = -(trace / d);
    }
    coeffs
}

/// Scale-free residual of each `scale * v` as a root of `p`:
/// `|p(x)| / max(1, sum|c_i| * max(1,|x|)^deg)`.
pub fn residuals(p: &IntegerPolynomial, values: &[f64], scale: f64) -> Vec<f64> {
    assert!(scale > 0.0, "scale must be positive");
    let coeffs = p.float_coefficients();
    let mass: f64 = coeffs.iter().map(|c| c.abs()).sum();
    let deg = p.degree().unwrap_or(0) as i32;
    values
        .iter()
        .map(|&v| {
            let x = scale * v;
            let value = coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c);
            value.abs() / (mass * x.abs().max(1.0).powi(deg)).max(1.0)
        })
        .collect()
}

/// Weak independence number by checking every vertex subset.
pub fn naive_tau(h: &Hypergraph) -> Result<usize, OracleError> {
    let n = h.vertex_count();
    if n > NAIVE_CAP {
        return Err(OracleError::TooLarge { what: "naive weak independence search", n, cap: NAIVE_CAP });
    }
    let adjacent = adjacency_table(h);
    let mut best = 0;
    for mask in 1u32..(1 << n) {
        let inside = |v: usize| mask >> v & 1 == 1;
        let qualifies = (0..n).all(|s| {
            !inside(s) || (0..n).all(|v| if v == s { true } else if inside(v) { !adjacent[s][v] } else { adjacent[s][v] })
        });
        if qualifies {
            best = best.max(mask.count_ones() as usize);
        }
    }
    Ok(best)
}

/// Strong chromatic number by trying every set partition of the vertices.
pub fn naive_chi(h: &Hypergraph) -> Result<usize, OracleError> {
    let n = h.vertex_count();
    if n > NAIVE_CAP {
        return Err(OracleError::TooLarge { what: "naive colouring search", n, cap: NAIVE_CAP });
    }
    let adjacent = adjacency_table(h);
    let mut best = n;
    let mut labels = vec![0usize; n];
    // restricted growth strings enumerate each set partition once
    fn walk(i: usize, blocks: usize, labels: &mut [usize], adjacent: &[Vec<bool>], best: &mut usize) {
        let n = labels.len();
        if i == n {
            let proper = (0..n).all(|a| (a + 1..n).all(|b| !(adjacent[a][b] && labels[a] == labels[b])));
            if proper {
                *best = (*best).min(blocks);
            }
            return;
        }
        for l in 0..=blocks {
            labels[i] = l;
            walk(i + 1, blocks.max(l + 1), labels, adjacent, best);
        }
    }
    walk(0, 0, &mut labels, &adjacent, &mut best);
    Ok(best)
}

fn adjacency_table(h: &Hypergraph) -> Vec<Vec<bool>> {
    let n = h.vertex_count();
    let mut t = vec![vec![false; n]; n];
    for e in h.edges() {
        for &a in e {
            for &b in e {
                if a != b {
                    t[a - 1][b - 1] = true;
                }
            }
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete_bipartite_graph, complete_uniform, single_edge};
    use num_traits::Signed;

    fn coefficient_height(p: &IntegerPolynomial) -> BigInt {
        p.coefficients().iter().map(Signed::abs).max().unwrap_or_default()
    }

    #[test]
    fn charpoly_examples() {
        let p = exact_charpoly(&single_edge(3).unwrap(), SpectrumKind::SignlessLaplacian).unwrap();
        assert_eq!(p, IntegerPolynomial::from_i64(&[-4, 9, -6, 1]));
        let z = exact_charpoly(&Hypergraph::empty(4, 3).unwrap(), SpectrumKind::Adjacency).unwrap();
        assert_eq!(z, IntegerPolynomial::from_i64(&[0, 0, 0, 0, 1]));
        // (t-12)(t-4)^3 = t^4 - 24t^3 + 192t^2 - 640t + 768
        let k = exact_charpoly(&complete_uniform(4, 3).unwrap(), SpectrumKind::SignlessLaplacian).unwrap();
        assert_eq!(k, IntegerPolynomial::from_i64(&[768, -640, 192, -24, 1]));
    }

    #[test]
    fn laplacian_has_zero_root() {
        let p = exact_charpoly(&complete_bipartite_graph(2, 3).unwrap(), SpectrumKind::Laplacian).unwrap();
        assert!(p.coefficients()[0].is_zero());
        assert_eq!(p.degree(), Some(5));
    }

    #[test]
    fn big_integer_path_agrees_with_i128() {
        let b: Vec<Vec<i64>> = (0..6).map(|i| (0..6).map(|j| ((3 * i + 5 * j) % 11) as i64 - 4).collect()).collect();
        let small = faddeev_i128(&b).unwrap();
        let big = faddeev_big(&b);
        assert_eq!(small.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>(), big);
        // a diagonal near 2^40 gives a determinant near 2^200
        let huge: Vec<Vec<i64>> =
            (0..5).map(|i| (0..5).map(|j| if i == j { (1i64 << 40) + i as i64 } else { (i + j) as i64 }).collect()).collect();
        assert!(faddeev_i128(&huge).is_none());
        let p = charpoly_of(&huge);
        assert_eq!(p.degree(), Some(5));
        assert!(coefficient_height(&p) > BigInt::from(i128::MAX));
    }

    #[test]
    fn residual_examples() {
        let p = IntegerPolynomial::from_i64(&[-4, 9, -6, 1]);
        assert!(residuals(&p, &[2.0, 0.5, 0.5], 2.0).iter().all(|&r| r <= 1e-12));
        assert!(residuals(&p, &[2.001], 2.0)[0] > 1e-6);
        assert!(residuals(&p, &[], 2.0).is_empty());
    }

    #[test]
    fn naive_searches() {
        assert_eq!(naive_tau(&single_edge(3).unwrap()), Ok(1));
        assert_eq!(naive_chi(&single_edge(3).unwrap()), Ok(3));
        assert_eq!(naive_tau(&complete_bipartite_graph(2, 3).unwrap()), Ok(3));
        assert_eq!(naive_chi(&complete_uniform(4, 3).unwrap()), Ok(4));
        assert!(matches!(naive_tau(&single_edge(9).unwrap()), Err(OracleError::TooLarge { .. })));
    }

    #[test]
    fn mixed_rank_is_refused() {
        let h = Hypergraph::new(4, vec![vec![1, 2, 3], vec![3, 4]]).unwrap();
        assert_eq!(exact_charpoly(&h, SpectrumKind::Adjacency), Err(OracleError::NotUniform));
    }
}
