use std::cmp::Ordering;

use super::{DenseMatrix, TolerancePolicy};
use crate::error::{Error, Result};

/// Sweeps stop once the off-diagonal Frobenius norm drops below this
/// fraction of `‖M‖_F`.
pub const JACOBI_OFF_TOL: f64 = 1e-12;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues in descending order with an orthonormal eigenvector basis.
///
/// Column `i` of [`Spectrum::vectors`] belongs to `values()[i]`. Each column
/// is sign-normalised so that its entry of largest magnitude is positive.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    vectors: DenseMatrix,
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn vectors(&self) -> &DenseMatrix {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn vector(&self, i: usize) -> Vec<f64> {
        self.vectors.column(i)
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// `V·diag(values)·Vᵀ`.
    pub fn reconstruct(&self) -> DenseMatrix {
        let n = self.values.len();
        let mut out = DenseMatrix::zeros(n, n);
        for (k, &lambda) in self.values.iter().enumerate() {
            for i in 0..n {
                let vik = self.vectors[(i, k)] * lambda;
                if vik == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += vik * self.vectors[(j, k)];
                }
            }
        }
        out
    }
}

/// Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.
pub fn symmetric_eigen(m: &DenseMatrix, policy: &TolerancePolicy) -> Result<Spectrum> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let deviation = m.asymmetry()?;
    let tolerance = policy.eigen_tol() * m.inf_norm().max(1.0);
    if deviation > tolerance {
        return Err(Error::Asymmetric {
            deviation,
            tolerance,
        });
    }

    let n = m.rows();
    // symmetrise so the rotations see an exactly symmetric input
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            a[i * n + j] = 0.5 * (m[(i, j)] + m[(j, i)]);
        }
    }
    // rows of `vt` are the eigenvectors
    let mut vt = vec![0.0; n * n];
    for i in 0..n {
        vt[i * n + i] = 1.0;
    }

    let target = JACOBI_OFF_TOL * m.frobenius_norm();
    let mut converged = off_diagonal_norm(&a, n) <= target;
    let mut sweeps = 0;
    while !converged {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut vt, n, p, q);
            }
        }
        sweeps += 1;
        converged = off_diagonal_norm(&a, n) <= target;
    }

    let mut order: Vec<usize> = (0..n).collect();
    // stable: ties keep the Jacobi output order
    order.sort_by(|&i, &j| {
        a[j * n + j]
            .partial_cmp(&a[i * n + i])
            .unwrap_or(Ordering::Equal)
    });

    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = DenseMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        let v = &vt[src * n..(src + 1) * n];
        let sign = sign_of_dominant(v);
        for (row, &x) in v.iter().enumerate() {
            vectors[(row, col)] = sign * x;
        }
    }
    Ok(Spectrum { values, vectors })
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// Annihilates `a[p][q]` with a plane rotation and accumulates it into `vt`.
fn rotate(a: &mut [f64], vt: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);

    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let g = a[p * n + r];
        let h = a[q * n + r];
        let new_p = g - s * (h + g * tau);
        let new_q = h + s * (g - h * tau);
        a[p * n + r] = new_p;
        a[q * n + r] = new_q;
        a[r * n + p] = new_p;
        a[r * n + q] = new_q;
    }
    let (head, tail) = vt.split_at_mut(q * n);
    let vp = &mut head[p * n..(p + 1) * n];
    let vq = &mut tail[..n];
    for (g, h) in vp.iter_mut().zip(vq.iter_mut()) {
        let (x, y) = (*g, *h);
        *g = x - s * (y + x * tau);
        *h = y + s * (x - y * tau);
    }
}

fn sign_of_dominant(v: &[f64]) -> f64 {
    let mut best = 0.0;
    let mut sign = 1.0;
    for &x in v {
        if x.abs() > best {
            best = x.abs();
            sign = if x < 0.0 { -1.0 } else { 1.0 };
        }
    }
    sign
}
