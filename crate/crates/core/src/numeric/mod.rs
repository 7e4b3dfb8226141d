//! Dense linear algebra shared by every other module.
//!
//! Eigenvalues are always reported in descending order `μ_1 ≥ … ≥ μ_n`.
//! Laplacian-style ascending indexing is derived from that ordering by the
//! callers that need it.

mod eigen;
mod matrix;

pub use eigen::{symmetric_eigen, Spectrum, JACOBI_MAX_SWEEPS, JACOBI_OFF_TOL};
pub use matrix::DenseMatrix;

use crate::error::{Error, Result};

/// Tolerances used for solver convergence checks and equality decisions.
///
/// Both are relative: callers scale them by `max(1, ‖M‖_∞)` of the matrix
/// the decision is about.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct TolerancePolicy {
    eigen_tol: f64,
    eq_tol: f64,
}

impl TolerancePolicy {
    pub const DEFAULT_EIGEN_TOL: f64 = 1e-10;
    pub const DEFAULT_EQ_TOL: f64 = 1e-8;

    pub fn new(eigen_tol: f64, eq_tol: f64) -> Result<Self> {
        if !(eigen_tol > 0.0 && eigen_tol.is_finite()) {
            return Err(Error::InvalidTolerance(format!(
                "eigen_tol must be positive, got {eigen_tol}"
            )));
        }
        if !(eq_tol > 0.0 && eq_tol.is_finite()) {
            return Err(Error::InvalidTolerance(format!(
                "eq_tol must be positive, got {eq_tol}"
            )));
        }
        if eq_tol < eigen_tol {
            return Err(Error::InvalidTolerance(format!(
                "eq_tol {eq_tol:e} must not be below eigen_tol {eigen_tol:e}"
            )));
        }
        Ok(Self { eigen_tol, eq_tol })
    }

    /// Default policy with `eq_tol` replaced.
    pub fn with_eq_tol(eq_tol: f64) -> Result<Self> {
        Self::new(Self::DEFAULT_EIGEN_TOL.min(eq_tol), eq_tol)
    }

    pub fn eigen_tol(&self) -> f64 {
        self.eigen_tol
    }

    pub fn eq_tol(&self) -> f64 {
        self.eq_tol
    }

    /// `eq_tol · max(1, scale)`.
    pub fn eq_threshold(&self, scale: f64) -> f64 {
        self.eq_tol * scale.abs().max(1.0)
    }

    pub fn approx_eq(&self, a: f64, b: f64, scale: f64) -> bool {
        (a - b).abs() <= self.eq_threshold(scale)
    }
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            eigen_tol: Self::DEFAULT_EIGEN_TOL,
            eq_tol: Self::DEFAULT_EQ_TOL,
        }
    }
}

/// Singular values `σ_1 ≥ … ≥ σ_min(m,n) ≥ 0` of a rectangular matrix.
///
/// They are read off as the largest `min(m,n)` eigenvalues of the embedding
/// `B = [[0, Mᵀ], [M, 0]]`, whose spectrum is `±σ_i` padded with zeros.
pub fn singular_values(m: &DenseMatrix, policy: &TolerancePolicy) -> Result<Vec<f64>> {
    let b = hermitian_embedding(m);
    let spectrum = symmetric_eigen(&b, policy)?;
    let count = m.rows().min(m.cols());
    let floor = -policy.eq_threshold(m.inf_norm().max(m.transpose().inf_norm()));
    let values = spectrum.values()[..count]
        .iter()
        .map(|&s| {
            debug_assert!(s >= floor, "singular value {s} below {floor}");
            s.max(0.0)
        })
        .collect();
    Ok(values)
}

/// `[[0, Mᵀ], [M, 0]]` of size `(m+n) × (m+n)` for an `m × n` matrix `M`.
///
/// Row/column indices `0..n` belong to the columns of `M`, `n..n+m` to its rows.
pub fn hermitian_embedding(m: &DenseMatrix) -> DenseMatrix {
    let (r, c) = (m.rows(), m.cols());
    let mut b = DenseMatrix::zeros(r + c, r + c);
    for i in 0..r {
        for j in 0..c {
            b[(c + i, j)] = m[(i, j)];
            b[(j, c + i)] = m[(i, j)];
        }
    }
    b
}

/// Whether the directed support graph (arc `i → j` iff `M[i,j] > 0`) is
/// strongly connected.
pub fn is_irreducible(m: &DenseMatrix) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if let Some((row, col)) = m.first_negative() {
        return Err(Error::NegativeEntry { row, col });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(false);
    }
    let forward = reachable_from_zero(n, |i, j| m[(i, j)] > 0.0);
    let backward = reachable_from_zero(n, |i, j| m[(j, i)] > 0.0);
    Ok(forward && backward)
}

fn reachable_from_zero(n: usize, arc: impl Fn(usize, usize) -> bool) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && arc(i, j) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policy_validation() {
        assert!(TolerancePolicy::new(0.0, 1e-8).is_err());
        assert!(TolerancePolicy::new(1e-10, -1.0).is_err());
        assert!(TolerancePolicy::new(1e-8, 1e-10).is_err());
        assert!(TolerancePolicy::with_eq_tol(1e-12).is_ok());
        let p = TolerancePolicy::default();
        assert_eq!((p.eigen_tol(), p.eq_tol()), (1e-10, 1e-8));
        assert_eq!(p.eq_threshold(0.5), 1e-8);
        assert_eq!(p.eq_threshold(100.0), 1e-6);
    }

    #[test]
    fn singular_values_of_ones_block() {
        let m = DenseMatrix::new(2, 3, vec![1.0; 6]).unwrap();
        let s = singular_values(&m, &TolerancePolicy::default()).unwrap();
        assert_eq!(s.len(), 2);
        assert!((s[0] - 6f64.sqrt()).abs() < 1e-12);
        assert!(s[1].abs() < 1e-12);
    }

    #[test]
    fn singular_values_trivial_cases() {
        let p = TolerancePolicy::default();
        let z = DenseMatrix::zeros(3, 2);
        assert_eq!(singular_values(&z, &p).unwrap(), vec![0.0, 0.0]);
        let neg = DenseMatrix::new(1, 1, vec![-3.0]).unwrap();
        let s = singular_values(&neg, &p).unwrap();
        assert!((s[0] - 3.0).abs() < 1e-13);
    }

    #[test]
    fn singular_values_reject_nan() {
        assert!(DenseMatrix::new(1, 2, vec![1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn irreducibility() {
        let c4 = DenseMatrix::from_rows(&[
            vec![0.0, 1.0, 0.0, 1.0],
            vec![1.0, 0.0, 1.0, 0.0],
            vec![0.0, 1.0, 0.0, 1.0],
            vec![1.0, 0.0, 1.0, 0.0],
        ])
        .unwrap();
        assert!(is_irreducible(&c4).unwrap());
        let split = DenseMatrix::from_rows(&[
            vec![0.0, 1.0, 0.0],
            vec![1.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.0],
        ])
        .unwrap();
        assert!(!is_irreducible(&split).unwrap());
        let one_way = DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(!is_irreducible(&one_way).unwrap());
        let neg = DenseMatrix::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(
            is_irreducible(&neg),
            Err(Error::NegativeEntry { row: 0, col: 1 })
        );
        assert!(is_irreducible(&DenseMatrix::zeros(2, 3)).is_err());
    }
}
