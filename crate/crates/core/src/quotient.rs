//! The normalised quotient matrix `A|P×Q` and eigenvector lifting.
//!
//! Entry `(p, q)` of the quotient is the sum of the block `A[P_p, Q_q]`
//! divided by `√(|P_p|·|Q_q|)`. With this scaling, for a square `A` and
//! `P = Q`, the quotient is `SᵀAS` where `S` has orthonormal columns
//! `1_{P_s}/√|P_s|`, which is what makes interlacing apply.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::DenseMatrix;
use crate::partition::{Partition, ProductPartition};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuotientMatrix {
    matrix: DenseMatrix,
    product: ProductPartition,
    source_dims: (usize, usize),
}

impl QuotientMatrix {
    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn product(&self) -> &ProductPartition {
        &self.product
    }

    pub fn source_dims(&self) -> (usize, usize) {
        self.source_dims
    }

    pub fn into_matrix(self) -> DenseMatrix {
        self.matrix
    }
}

pub fn quotient_matrix(a: &DenseMatrix, pp: &ProductPartition) -> Result<QuotientMatrix> {
    pp.check_dims(a)?;
    let rows = pp.rows().blocks();
    let cols = pp.cols().blocks();
    let mut q = DenseMatrix::zeros(rows.len(), cols.len());
    for (p, row_block) in rows.iter().enumerate() {
        for (s, col_block) in cols.iter().enumerate() {
            let mut sum = CompensatedSum::default();
            for &i in row_block {
                for &j in col_block {
                    sum.add(a[(i, j)]);
                }
            }
            q[(p, s)] = sum.value() / ((row_block.len() * col_block.len()) as f64).sqrt();
        }
    }
    Ok(QuotientMatrix {
        matrix: q,
        product: pp.clone(),
        source_dims: (a.rows(), a.cols()),
    })
}

/// `A|P×P`.
pub fn symmetric_quotient(a: &DenseMatrix, p: &Partition) -> Result<QuotientMatrix> {
    quotient_matrix(a, &ProductPartition::square(p.clone()))
}

/// Lifts a block vector to the ground set: `x_i = y_s / √|P_s|` for `i ∈ P_s`.
pub fn lift_vector(y: &[f64], p: &Partition) -> Result<Vec<f64>> {
    if y.len() != p.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            found: y.len(),
        });
    }
    let mut x = vec![0.0; p.ground()];
    for (block, &ys) in p.blocks().iter().zip(y) {
        let v = ys / (block.len() as f64).sqrt();
        for &i in block {
            x[i] = v;
        }
    }
    Ok(x)
}

/// Neumaier's variant of Kahan summation.
#[derive(Default)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}
