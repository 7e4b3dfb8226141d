#![allow(dead_code)]

use std::path::PathBuf;

use interlace::{DenseMatrix, Graph, Partition};
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
        .join(name)
}

pub fn one_based(n: usize, blocks: &[&[usize]]) -> Partition {
    Partition::from_one_based(n, &blocks.iter().map(|b| b.to_vec()).collect::<Vec<_>>()).unwrap()
}

pub fn random_symmetric<R: Rng>(rng: &mut R, n: usize) -> DenseMatrix {
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let x = rng.gen_range(-1.0..=1.0);
            data[i * n + j] = x;
            data[j * n + i] = x;
        }
    }
    DenseMatrix::new(n, n, data).unwrap()
}

pub fn random_nonnegative<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> DenseMatrix {
    let data = (0..rows * cols).map(|_| rng.gen_range(0.0..=1.0)).collect();
    DenseMatrix::new(rows, cols, data).unwrap()
}

/// Uniformly labelled partition of `n` into exactly `k` nonempty blocks.
pub fn random_partition<R: Rng>(rng: &mut R, n: usize, k: usize) -> Partition {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut labels = vec![0; n];
    for (pos, &v) in order.iter().enumerate() {
        labels[v] = if pos < k { pos } else { rng.gen_range(0..k) };
    }
    Partition::from_labels(&labels)
}

/// Every labelled graph on `n` vertices, by edge subset.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        Graph::new(n, edges).unwrap()
    })
}

pub fn connected_graphs(n: usize) -> impl Iterator<Item = Graph> {
    all_graphs(n).filter(Graph::is_connected)
}

/// Largest entry of `|Mx − λx|` over the given eigenpairs.
pub fn max_residual(m: &DenseMatrix, values: &[f64], vectors: &[Vec<f64>]) -> f64 {
    values
        .iter()
        .zip(vectors)
        .map(|(&lambda, x)| {
            let mx = m.mul_vec(x).unwrap();
            mx.iter()
                .zip(x)
                .map(|(a, b)| (a - lambda * b).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// Exact determinant of `a − shift·I` for an integral square matrix.
pub fn shifted_determinant(a: &DenseMatrix, shift: Ratio<i128>) -> Ratio<i128> {
    let n = a.rows();
    let mut m: Vec<Vec<Ratio<i128>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let x = Ratio::from_integer(a[(i, j)] as i128);
                    if i == j {
                        x - shift
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect();
    let mut det = Ratio::from_integer(1);
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| m[r][col] != Ratio::from_integer(0)) else {
            return Ratio::from_integer(0);
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for r in col + 1..n {
            let factor = m[r][col] / m[col][col];
            for c in col..n {
                let delta = factor * m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// Exact `Σ 2e(P_i)/|P_i| − 2e(G)/n`.
pub fn exact_ineq3_rhs(g: &Graph, p: &Partition) -> Ratio<i128> {
    let mut total = Ratio::from_integer(0);
    for b in p.blocks() {
        total += Ratio::new(2 * g.edge_counts(b, None).unwrap() as i128, b.len() as i128);
    }
    total - Ratio::new(2 * g.edge_count() as i128, g.order() as i128)
}

/// Number of eigenvalues of an integral symmetric `a` below `shift`, from the
/// signs of the LDLᵀ pivots of `a − shift·I` (Sylvester's law of inertia).
/// `None` when a zero pivot appears.
pub fn eigenvalues_below(a: &DenseMatrix, shift: Ratio<i128>) -> Option<usize> {
    let n = a.rows();
    let zero = Ratio::from_integer(0);
    let mut m: Vec<Vec<Ratio<i128>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let x = Ratio::from_integer(a[(i, j)] as i128);
                    if i == j {
                        x - shift
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect();
    let mut negative = 0;
    for col in 0..n {
        let pivot = m[col][col];
        if pivot == zero {
            return None;
        }
        if pivot < zero {
            negative += 1;
        }
        for r in col + 1..n {
            let factor = m[r][col] / pivot;
            for c in col..n {
                let delta = factor * m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    Some(negative)
}
