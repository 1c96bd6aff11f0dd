//! Operator means for invertible complex matrices and the identities and
//! order inequalities they satisfy, checked numerically over seeded random
//! instances.
//!
//! The crate is organised in layers:
//!
//! * [`linalg`] — dense complex matrices, Hermitian eigendecomposition by
//!   cyclic Jacobi, moduli, inverses, norms and the Loewner-order predicate;
//! * [`funcalc`] — real powers of positive matrices via the spectral route,
//!   cross-checked by an independent resolvent contour integral;
//! * [`means`] — weighted arithmetic/geometric/harmonic operator means, the
//!   quadratic weighted geometric mean for invertible pairs, and the scalar
//!   gap function with its interval extrema;
//! * [`laws`] — one checkable predicate per identity or inequality, each
//!   producing a [`laws::LawReport`] with residuals and order margins;
//! * [`fuzz`] — deterministic instance generation, suite orchestration and
//!   JSON/CSV report emission.
//!
//! With the default `parallel` feature, suites and contour quadrature run on
//! rayon; disabling it yields a dependency-free sequential build with
//! bit-identical results.

pub mod error;
pub mod funcalc;
pub mod fuzz;
pub mod laws;
pub mod linalg;
pub mod means;

pub use error::{Error, Result};
