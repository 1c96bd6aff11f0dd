//! Dense complex matrix arithmetic, Hermitian eigendecomposition and the
//! Loewner-order predicate the rest of the crate is built on.

pub mod classes;
pub mod eigen;
pub mod matrix;
pub mod order;

pub use classes::{
    invert, modulus, norms, singular_extremes, HermitianMatrix, InvertibleMatrix, PositiveMatrix,
};
pub use eigen::{hermitian_eigen, SpectralDecomposition};
pub use matrix::{ComplexMatrix, MAX_DIM};
pub use order::{loewner_compare, OrderReport, Verdict, DEFAULT_ORDER_TOL};
