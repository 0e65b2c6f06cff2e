//! Exact Pfaffians, Pfaffian decompositions, q-series identities and shifted
//! reverse plane partition generating functions.
//!
//! All arithmetic is exact. Algorithms are generic over [`Scalar`], which is
//! instantiated by [`Rational`] and by [`QSeries`] (truncated power series in
//! `q`).

mod error;
pub mod decomp;
pub mod identities;
pub mod matrix;
pub mod qkit;
pub mod rpp;
pub mod scalar;
pub mod sequences;
pub mod skewpf;
pub mod telescope;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{Precision, QSeries, Rational, Scalar};
pub use matrix::{Matrix, MatrixJson};
pub use skewpf::{IndexSet, PfAlgorithm, SkewMatrix};

pub type RatMatrix = Matrix<Rational>;
pub type RatSkewMatrix = SkewMatrix<Rational>;
pub type SeriesSkewMatrix = SkewMatrix<QSeries>;
pub use decomp::{LuDecomposition, PfDecomposition};
