//! Validated matrix classes and the operations fixed to them: Hermitian and
//! positive-definite wrappers, invertible matrices with cached conditioning,
//! the modulus `|c| = (c*c)^{1/2}`, elimination-based inversion and norms.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::eigen::{hermitian_eigen, SpectralDecomposition};
use crate::linalg::matrix::ComplexMatrix;

/// Relative Hermitian-defect tolerance for [`HermitianMatrix`].
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Strict positivity margin: `min_eig > POSITIVITY_MARGIN * max_eig`.
pub const POSITIVITY_MARGIN: f64 = 1e-10;
/// Conditioning floor: `smin > CONDITION_FLOOR * smax`, i.e. condition < 1e10.
pub const CONDITION_FLOOR: f64 = 1e-10;

/// A matrix validated to be Hermitian within `1e-12 · max(1, ‖·‖_F)`.
#[derive(Debug, Clone)]
pub struct HermitianMatrix {
    base: ComplexMatrix,
}

impl HermitianMatrix {
    pub fn new(base: ComplexMatrix) -> Result<Self> {
        let tol = HERMITIAN_TOL * base.frobenius_norm().max(1.0);
        let defect = base.hermitian_defect();
        if defect > tol {
            return Err(Error::NotHermitian { defect, tol });
        }
        Ok(Self { base })
    }

    /// Wraps the Hermitian part of a product that is Hermitian up to
    /// round-off; never fails.
    pub fn from_symmetrized(m: &ComplexMatrix) -> Self {
        Self { base: m.symmetrized() }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn eigen(&self) -> Result<SpectralDecomposition> {
        hermitian_eigen(&self.base)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self { base: self.base.add(&other.base)? })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(Self { base: self.base.sub(&other.base)? })
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self { base: self.base.scale_re(factor) }
    }

    pub fn operator_norm(&self) -> Result<f64> {
        let dec = self.eigen()?;
        Ok(dec.min_eigenvalue().abs().max(dec.max_eigenvalue().abs()))
    }
}

/// A Hermitian matrix validated to be strictly positive definite, carrying
/// its spectral decomposition.
#[derive(Debug, Clone)]
pub struct PositiveMatrix {
    base: HermitianMatrix,
    decomposition: SpectralDecomposition,
    min_eig: f64,
}

impl PositiveMatrix {
    pub fn new(base: HermitianMatrix) -> Result<Self> {
        let decomposition = base.eigen()?;
        let min_eig = decomposition.min_eigenvalue();
        let max_eig = decomposition.max_eigenvalue();
        if !(min_eig > 0.0 && min_eig > POSITIVITY_MARGIN * max_eig) {
            return Err(Error::NotPositive { min_eig, max_eig });
        }
        Ok(Self { base, decomposition, min_eig })
    }

    pub fn try_from_matrix(m: ComplexMatrix) -> Result<Self> {
        Self::new(HermitianMatrix::new(m)?)
    }

    /// Validates the Hermitian part of a product known to be positive up to
    /// round-off (congruences `c* a c`, Gram matrices `c* c`, ...).
    pub fn from_product(m: &ComplexMatrix) -> Result<Self> {
        Self::new(HermitianMatrix::from_symmetrized(m))
    }

    /// Builds a positive matrix directly from mapped spectral data; used by
    /// the spectral calculus where positivity is guaranteed by construction.
    pub(crate) fn from_decomposition(eigenvalues: Vec<f64>, vectors: &ComplexMatrix) -> Self {
        let decomposition = SpectralDecomposition::from_parts(eigenvalues, vectors);
        let base = HermitianMatrix::from_symmetrized(&decomposition.reconstruct());
        let min_eig = decomposition.min_eigenvalue();
        Self { base, decomposition, min_eig }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.base.matrix()
    }

    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.base
    }

    pub fn decomposition(&self) -> &SpectralDecomposition {
        &self.decomposition
    }

    pub fn min_eig(&self) -> f64 {
        self.min_eig
    }

    pub fn max_eig(&self) -> f64 {
        self.decomposition.max_eigenvalue()
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn operator_norm(&self) -> f64 {
        self.max_eig()
    }
}

/// A matrix validated to be invertible with condition number below 1e10,
/// caching its extreme singular values.
#[derive(Debug, Clone)]
pub struct InvertibleMatrix {
    base: ComplexMatrix,
    smin: f64,
    smax: f64,
}

impl InvertibleMatrix {
    pub fn new(base: ComplexMatrix) -> Result<Self> {
        let (smin, smax) = singular_extremes(&base)?;
        if !(smin > CONDITION_FLOOR * smax && smin > 0.0) {
            return Err(Error::IllConditioned { smin, smax });
        }
        Ok(Self { base, smin, smax })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn smin(&self) -> f64 {
        self.smin
    }

    pub fn smax(&self) -> f64 {
        self.smax
    }

    pub fn condition(&self) -> f64 {
        self.smax / self.smin
    }

    pub fn adjoint(&self) -> Self {
        // Singular values are invariant under conjugate transposition.
        Self { base: self.base.adjoint(), smin: self.smin, smax: self.smax }
    }

    /// Inverse by partial-pivot elimination.
    pub fn inverse(&self) -> Result<InvertibleMatrix> {
        let inv = invert(&self.base)?;
        // 1/s are the singular values of the inverse.
        Ok(InvertibleMatrix { base: inv, smin: 1.0 / self.smax, smax: 1.0 / self.smin })
    }

    /// Gram matrix `x* x = |x|²`, strictly positive for invertible input.
    pub fn modulus_squared(&self) -> Result<PositiveMatrix> {
        let gram = self.base.adjoint().mul(&self.base)?;
        PositiveMatrix::from_product(&gram)
    }
}

/// Smallest and largest singular values via the spectrum of `c* c`.
pub fn singular_extremes(c: &ComplexMatrix) -> Result<(f64, f64)> {
    let gram = c.adjoint().mul(c)?;
    let dec = hermitian_eigen(&gram)?;
    let smin = dec.min_eigenvalue().max(0.0).sqrt();
    let smax = dec.max_eigenvalue().max(0.0).sqrt();
    Ok((smin, smax))
}

/// Frobenius and operator norms of a general matrix; the operator norm is
/// `sqrt(λ_max(c* c))`, which satisfies the C*-identity `‖c* c‖ = ‖c‖²`.
pub fn norms(c: &ComplexMatrix) -> Result<(f64, f64)> {
    let (_, smax) = singular_extremes(c)?;
    Ok((c.frobenius_norm(), smax))
}

/// Modulus `|c| = (c* c)^{1/2}`: eigenvalues of `c* c` are clamped at zero
/// (negatives are round-off; the product is positive semidefinite) before the
/// square root. Defined for any `c`, invertible or not.
pub fn modulus(c: &ComplexMatrix) -> Result<HermitianMatrix> {
    let gram = c.adjoint().mul(c)?.symmetrized();
    let dec = hermitian_eigen(&gram)?;
    let root = dec.apply(|lam| lam.max(0.0).sqrt());
    Ok(HermitianMatrix::from_symmetrized(&root))
}

/// Gauss-Jordan inversion with partial pivoting.
pub fn invert(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.dim();
    let mut work = a.clone();
    let mut inv = ComplexMatrix::identity(n)?;
    let scale = a
        .entries()
        .iter()
        .map(|z| z.norm())
        .fold(0.0_f64, f64::max)
        .max(f64::MIN_POSITIVE);
    let pivot_floor = scale * f64::EPSILON * n as f64;

    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_mag = work.get(col, col).norm();
        for row in (col + 1)..n {
            let mag = work.get(row, col).norm();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = row;
            }
        }
        if pivot_mag <= pivot_floor {
            return Err(Error::SingularMatrix { pivot: pivot_mag });
        }
        if pivot_row != col {
            for j in 0..n {
                let (x, y) = (work.get(col, j), work.get(pivot_row, j));
                work.set(col, j, y);
                work.set(pivot_row, j, x);
                let (x, y) = (inv.get(col, j), inv.get(pivot_row, j));
                inv.set(col, j, y);
                inv.set(pivot_row, j, x);
            }
        }
        let pivot = work.get(col, col);
        for j in 0..n {
            work.set(col, j, work.get(col, j) / pivot);
            inv.set(col, j, inv.get(col, j) / pivot);
        }
        for row in 0..n {
            if row == col {
                continue;
            }
            let factor = work.get(row, col);
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                let w = work.get(row, j) - factor * work.get(col, j);
                work.set(row, j, w);
                let v = inv.get(row, j) - factor * inv.get(col, j);
                inv.set(row, j, v);
            }
        }
    }
    Ok(inv)
}
