//! Dense complex matrices: the carrier type for everything in this crate.
//!
//! Matrices are square, row-major and small by design (1 ≤ n ≤ 16); all
//! operations allocate freely and favour clarity over BLAS-class speed.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported matrix dimension.
pub const MAX_DIM: usize = 16;

/// Dense n×n complex matrix, row-major.
///
/// Entries are always finite; construction rejects NaN/Inf and dimensions
/// outside `1..=16`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries. Length must be `dim * dim`.
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::BadDimension { dim });
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NotFinite);
        }
        Ok(Self { dim, entries })
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(dim, vec![Complex64::new(0.0, 0.0); dim * dim])
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.set(i, i, Complex64::new(1.0, 0.0));
        }
        Ok(m)
    }

    /// Diagonal matrix from real values.
    pub fn diag(values: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(values.len())?;
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, Complex64::new(v, 0.0));
        }
        Ok(m)
    }

    /// Builds from a closure over (row, col).
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Result<Self> {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Self::new(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { dim: self.dim, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Self { dim: self.dim, entries })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = self.entries[i * n + k];
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += aik * other.entries[k * n + j];
                }
            }
        }
        Ok(Self { dim: n, entries: out })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let entries = self.entries.iter().map(|a| a * factor).collect();
        Self { dim: self.dim, entries }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(self.entries[j * n + i].conj());
            }
        }
        Self { dim: n, entries: out }
    }

    /// Hermitian part `(A + A*)/2`; tightens products that are Hermitian up
    /// to round-off.
    pub fn symmetrized(&self) -> Self {
        let adj = self.adjoint();
        let entries = self
            .entries
            .iter()
            .zip(&adj.entries)
            .map(|(a, b)| (a + b) * 0.5)
            .collect();
        Self { dim: self.dim, entries }
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Frobenius distance to the conjugate transpose; zero iff Hermitian.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                let d = self.entries[i * n + j] - self.entries[j * n + i].conj();
                acc += d.norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// Relative Frobenius distance `‖a − b‖_F / max(1e-300, ‖b‖_F)`.
    pub fn rel_distance(&self, other: &Self) -> Result<f64> {
        let diff = self.sub(other)?;
        Ok(diff.frobenius_norm() / other.frobenius_norm().max(1e-300))
    }
}

// -- JSON encoding ----------------------------------------------------------
//
// {"dim": n, "entries": [[[re, im]; n]; n]} — row-major, binary64 round-trips
// bit-exactly through the shortest-representation decimal emitted by serde.

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    dim: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.dim;
        let entries = (0..n)
            .map(|i| (0..n).map(|j| [self.get(i, j).re, self.get(i, j).im]).collect())
            .collect();
        MatrixRepr { dim: n, entries }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::deserialize(deserializer)?;
        if repr.entries.len() != repr.dim || repr.entries.iter().any(|r| r.len() != repr.dim) {
            return Err(D::Error::custom("entries do not form a dim×dim grid"));
        }
        let flat = repr
            .entries
            .iter()
            .flatten()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        ComplexMatrix::new(repr.dim, flat).map_err(D::Error::custom)
    }
}
