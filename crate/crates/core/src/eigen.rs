//! Cyclic Jacobi eigensolver for dense symmetric matrices and the spectral
//! scalars derived from `A`, `L` and `Q`.

use serde::Serialize;
use thiserror::Error;

use crate::hypergraph::Hypergraph;
use crate::matrix::{adjacency, laplacian, signless_laplacian, SymmetricMatrix};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const MAX_SWEEPS: usize = 50;
/// Values closer than this are reported as one eigenvalue with multiplicity.
pub const MULTIPLICITY_TOL: f64 = 1e-7;
/// Negative values of a positive semi-definite spectrum above `-PSD_CLAMP`
/// are reported as zero.
pub const PSD_CLAMP: f64 = 1e-9;

/// Rotations are skipped for off-diagonal entries below this magnitude.
const ROTATION_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EigenError {
    #[error("Jacobi iteration did not converge in {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NonConvergence { sweeps: usize, off_norm: f64 },
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum SpectrumKind {
    Adjacency,
    Laplacian,
    SignlessLaplacian,
    Quotient,
}

impl SpectrumKind {
    fn is_psd(self) -> bool {
        matches!(self, SpectrumKind::Laplacian | SpectrumKind::SignlessLaplacian)
    }
}

/// Eigenvalues sorted descending, as returned by the solver.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub kind: SpectrumKind,
    pub values: Vec<f64>,
}

impl Spectrum {
    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn min(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    pub fn spread(&self) -> f64 {
        self.max() - self.min()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Values for display: positive semi-definite kinds have tiny negative
    /// rounding noise clamped to zero. Raw values stay in `values`.
    pub fn reported(&self) -> Vec<f64> {
        self.values
            .iter()
            .map(|&v| if self.kind.is_psd() && v < 0.0 && v > -PSD_CLAMP { 0.0 } else { v })
            .collect()
    }

    /// Groups of values within `tol` of their neighbour, as
    /// `(mean, multiplicity)` in descending order.
    pub fn multiplicities(&self, tol: f64) -> Vec<(f64, usize)> {
        let mut groups: Vec<Vec<f64>> = Vec::new();
        for &v in &self.values {
            match groups.last_mut() {
                Some(g) if (g[g.len() - 1] - v).abs() <= tol => g.push(v),
                _ => groups.push(vec![v]),
            }
        }
        groups.into_iter().map(|g| (g.iter().sum::<f64>() / g.len() as f64, g.len())).collect()
    }
}

fn off_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            s += a[p * n + q] * a[p * n + q];
        }
    }
    (2.0 * s).sqrt()
}

/// Eigenvalues of `m` by cyclic-by-row Jacobi rotations.
///
/// Iterates until the off-diagonal Frobenius norm drops below
/// `tol * (||m||_F + 1)`.
///
/// ```
/// use hyperspectra::eigen::{eigenvalues, SpectrumKind, DEFAULT_TOL};
/// use hyperspectra::matrix::SymmetricMatrix;
///
/// let m = SymmetricMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap();
/// let s = eigenvalues(&m, SpectrumKind::Adjacency, DEFAULT_TOL).unwrap();
/// assert!((s.values[0] - 3.0).abs() < 1e-12 && (s.values[1] - 1.0).abs() < 1e-12);
/// ```
pub fn eigenvalues(m: &SymmetricMatrix, kind: SpectrumKind, tol: f64) -> Result<Spectrum, EigenError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(EigenError::BadTolerance(tol));
    }
    let n = m.order();
    let mut a: Vec<f64> = m.rows().concat();
    let target = tol * (m.frobenius_norm() + 1.0);
    let mut sweeps = 0;
    loop {
        let off = off_norm(&a, n);
        if off < target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(EigenError::NonConvergence { sweeps, off_norm: off });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, n, p, q);
            }
        }
        sweeps += 1;
    }
    let mut values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    values.sort_by(|x, y| y.total_cmp(x));
    Ok(Spectrum { kind, values })
}

/// One Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq.abs() < ROTATION_FLOOR {
        return;
    }
    let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);
    a[p * n + p] -= t * apq;
    a[q * n + q] += t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let g = a[r * n + p];
        let h = a[r * n + q];
        let rp = g - s * (h + g * tau);
        let rq = h + s * (g - h * tau);
        a[r * n + p] = rp;
        a[p * n + r] = rp;
        a[r * n + q] = rq;
        a[q * n + r] = rq;
    }
}

/// The three spectra of a hypergraph from one set of solver settings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectra {
    pub adjacency: Spectrum,
    pub laplacian: Spectrum,
    pub signless_laplacian: Spectrum,
}

impl Spectra {
    pub fn of(h: &Hypergraph, tol: f64) -> Result<Self, EigenError> {
        Ok(Self {
            adjacency: eigenvalues(&adjacency(h), SpectrumKind::Adjacency, tol)?,
            laplacian: eigenvalues(&laplacian(h), SpectrumKind::Laplacian, tol)?,
            signless_laplacian: eigenvalues(&signless_laplacian(h), SpectrumKind::SignlessLaplacian, tol)?,
        })
    }

    pub fn summary(&self) -> SpectralSummary {
        let q = &self.signless_laplacian;
        let a = &self.adjacency;
        // q_min = q_max on a single vertex; an edgeless Q is the zero matrix
        let degenerate = q.order() <= 1 || q.values.iter().all(|&v| v == 0.0);
        SpectralSummary {
            q_max: q.max(),
            q_min: q.min(),
            mu_max: self.laplacian.max(),
            lambda_max: a.max(),
            lambda_min: a.min(),
            s_q: if degenerate { 0.0 } else { q.spread() },
            s_a: if degenerate { 0.0 } else { a.spread() },
            degenerate,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SpectralSummary {
    pub q_max: f64,
    pub q_min: f64,
    pub mu_max: f64,
    pub lambda_max: f64,
    pub lambda_min: f64,
    pub s_q: f64,
    pub s_a: f64,
    /// One vertex or no edges: both spreads are defined as zero.
    pub degenerate: bool,
}

pub fn spectral_summary(h: &Hypergraph) -> Result<SpectralSummary, EigenError> {
    Ok(Spectra::of(h, DEFAULT_TOL)?.summary())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete_uniform, single_edge};

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn single_triple_signless_spectrum() {
        let s = eigenvalues(&signless_laplacian(&single_edge(3).unwrap()), SpectrumKind::SignlessLaplacian, DEFAULT_TOL)
            .unwrap();
        assert!(close(&s.values, &[2.0, 0.5, 0.5], 1e-12), "{:?}", s.values);
        assert_eq!(s.multiplicities(MULTIPLICITY_TOL).len(), 2);
        assert_eq!(s.multiplicities(MULTIPLICITY_TOL)[1].1, 2);
    }

    #[test]
    fn single_edge_family_closed_form() {
        for k in 3..=12 {
            let s = eigenvalues(&signless_laplacian(&single_edge(k).unwrap()), SpectrumKind::SignlessLaplacian, DEFAULT_TOL)
                .unwrap();
            let low = 1.0 - 1.0 / (k as f64 - 1.0);
            let mut want = vec![2.0];
            want.extend(std::iter::repeat_n(low, k - 1));
            assert!(close(&s.values, &want, 1e-12), "k={k}: {:?}", s.values);
        }
    }

    #[test]
    fn zero_matrix() {
        let s = eigenvalues(&SymmetricMatrix::zeros(4), SpectrumKind::Adjacency, DEFAULT_TOL).unwrap();
        assert_eq!(s.values, vec![0.0; 4]);
        assert_eq!(eigenvalues(&SymmetricMatrix::zeros(0), SpectrumKind::Adjacency, DEFAULT_TOL).unwrap().order(), 0);
    }

    #[test]
    fn rejects_bad_tolerance() {
        let m = SymmetricMatrix::identity(2);
        assert_eq!(eigenvalues(&m, SpectrumKind::Adjacency, 0.0), Err(EigenError::BadTolerance(0.0)));
    }

    #[test]
    fn summaries() {
        let s = spectral_summary(&single_edge(3).unwrap()).unwrap();
        assert!((s.s_q - 1.5).abs() < 1e-12);
        let k = spectral_summary(&complete_uniform(4, 3).unwrap()).unwrap();
        assert!((k.q_max - 6.0).abs() < 1e-12 && (k.q_min - 2.0).abs() < 1e-12 && (k.s_q - 4.0).abs() < 1e-12);
        assert!((k.s_a - k.s_q).abs() < 1e-12);
        let e = spectral_summary(&Hypergraph::empty(3, 2).unwrap()).unwrap();
        assert!(e.degenerate && e.s_q == 0.0);
    }

    #[test]
    fn clamped_reporting_keeps_raw_values() {
        let s = Spectrum { kind: SpectrumKind::Laplacian, values: vec![3.0, -1e-15] };
        assert_eq!(s.reported(), vec![3.0, 0.0]);
        assert_eq!(s.values[1], -1e-15);
        let a = Spectrum { kind: SpectrumKind::Adjacency, values: vec![-1e-15] };
        assert_eq!(a.reported(), vec![-1e-15]);
    }

    #[test]
    fn trace_is_preserved_on_a_dense_matrix() {
        let rows: Vec<Vec<f64>> =
            (0..9).map(|i| (0..9).map(|j| ((i * j + i + j) % 7) as f64 - 2.5 + if i == j { 4.0 } else { 0.0 }).collect()).collect();
        let m = SymmetricMatrix::from_rows(&rows).unwrap();
        let s = eigenvalues(&m, SpectrumKind::Adjacency, DEFAULT_TOL).unwrap();
        assert!((s.sum() - m.trace()).abs() < 1e-10);
        assert!(s.values.windows(2).all(|w| w[0] >= w[1]));
    }
}
