//! Quotient matrices, eigenvalue interlacing and equality audits.
//!
//! The crate is organised bottom-up:
//!
//! * [`numeric`]: dense matrices, a cyclic Jacobi eigensolver, singular values
//!   through the Hermitian embedding `[[0, Aᵀ], [A, 0]]`, irreducibility.
//! * [`graph`]: simple undirected graphs, adjacency/Laplacian matrices,
//!   joins and blow-ups.
//! * [`partition`]: set partitions of `0..n`, block regularity, equitable and
//!   semiequitable classification, restricted-growth-string enumeration.
//! * [`quotient`]: the normalised quotient `A|P×Q` and eigenvector lifting.
//! * [`interlacing`]: interlacing checks with r-tight and (p,q)-exact
//!   classification.
//! * [`audit`]: the four partition bounds on graph spectra and audits of the
//!   equality conditions for quotient interlacing.
//! * [`search`]: equitable refinement and exhaustive partition search.
//! * [`cli`]: file formats, report rendering and the `interlace` command.
//!
//! Vertices and indices are 0-based in every API; file formats and rendered
//! reports use 1-based labels.

pub mod audit;
pub mod cli;
pub mod error;
pub mod graph;
pub mod interlacing;
pub mod numeric;
pub mod partition;
pub mod quotient;
pub mod search;

pub use error::{Error, Result};
pub use graph::Graph;
pub use numeric::{DenseMatrix, Spectrum, TolerancePolicy};
pub use partition::{Partition, ProductPartition};
pub use quotient::QuotientMatrix;
