//! Scalar and operator means.
//!
//! For positive matrices: the weighted arithmetic mean `(1−ν)a + νb`, the
//! harmonic mean `((1−ν)a⁻¹ + νb⁻¹)⁻¹` and the geometric mean
//! `a^{1/2}(a^{-1/2} b a^{-1/2})^ν a^{1/2}`. For merely invertible x, y: the
//! quadratic weighted geometric mean `x ⊛_ν y = x* |y x⁻¹|^{2ν} x`, defined
//! through the positive element `d = (y x⁻¹)* (y x⁻¹)`, plus the square-root
//! ("half") variants of all three. The scalar gap `f_ν(t) = 1 − ν + νt − t^ν`
//! and its interval extrema round out the toolkit.

use crate::error::{Error, Result};
use crate::funcalc::real_power_spectral;
use crate::linalg::classes::{HermitianMatrix, InvertibleMatrix, PositiveMatrix};

/// Weighted arithmetic, geometric and harmonic means of a scalar pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarMeans {
    pub arithmetic: f64,
    pub geometric: f64,
    pub harmonic: f64,
}

/// `A_ν(a,b) = (1−ν)a + νb`, `G_ν(a,b) = a^{1−ν} b^ν`,
/// `H_ν(a,b) = A_ν(a⁻¹, b⁻¹)⁻¹` for positive scalars.
pub fn scalar_means(a: f64, b: f64, nu: f64) -> Result<ScalarMeans> {
    if !(a > 0.0) {
        return Err(Error::NonPositiveInput { value: a });
    }
    if !(b > 0.0) {
        return Err(Error::NonPositiveInput { value: b });
    }
    Ok(ScalarMeans {
        arithmetic: (1.0 - nu) * a + nu * b,
        geometric: a.powf(1.0 - nu) * b.powf(nu),
        harmonic: 1.0 / ((1.0 - nu) / a + nu / b),
    })
}

/// `a ∇_ν b = (1−ν)a + νb`.
pub fn arithmetic_mean(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    nu: f64,
) -> Result<HermitianMatrix> {
    let combo = a
        .matrix()
        .scale_re(1.0 - nu)
        .add(&b.matrix().scale_re(nu))?;
    Ok(HermitianMatrix::from_symmetrized(&combo))
}

/// `a !_ν b = ((1−ν)a⁻¹ + νb⁻¹)⁻¹` for positive a, b and ν ∈ [0, 1].
pub fn harmonic_mean(a: &PositiveMatrix, b: &PositiveMatrix, nu: f64) -> Result<PositiveMatrix> {
    if !(0.0..=1.0).contains(&nu) {
        return Err(Error::WeightOutOfRange { nu });
    }
    let a_inv = real_power_spectral(a, -1.0)?;
    let b_inv = real_power_spectral(b, -1.0)?;
    let combo = a_inv
        .matrix()
        .scale_re(1.0 - nu)
        .add(&b_inv.matrix().scale_re(nu))?;
    real_power_spectral(&PositiveMatrix::from_product(&combo)?, -1.0)
}

/// `a ♯_ν b = a^{1/2} (a^{-1/2} b a^{-1/2})^ν a^{1/2}`, defined for any real ν.
pub fn geometric_mean(a: &PositiveMatrix, b: &PositiveMatrix, nu: f64) -> Result<PositiveMatrix> {
    let root = real_power_spectral(a, 0.5)?;
    let inv_root = real_power_spectral(a, -0.5)?;
    let middle = inv_root.matrix().mul(b.matrix())?.mul(inv_root.matrix())?;
    let middle_pow = real_power_spectral(&PositiveMatrix::from_product(&middle)?, nu)?;
    let result = root.matrix().mul(middle_pow.matrix())?.mul(root.matrix())?;
    PositiveMatrix::from_product(&result)
}

/// The positive element `d = (y x⁻¹)* (y x⁻¹) = |y x⁻¹|²`.
pub fn quotient_modulus_squared(
    x: &InvertibleMatrix,
    y: &InvertibleMatrix,
) -> Result<PositiveMatrix> {
    let quotient = y.matrix().mul(x.inverse()?.matrix())?;
    PositiveMatrix::from_product(&quotient.adjoint().mul(&quotient)?)
}

/// `x ⊛_ν y = x* d^ν x` with `d = |y x⁻¹|²`; positive for any real ν.
pub fn quadratic_geometric_mean(
    x: &InvertibleMatrix,
    y: &InvertibleMatrix,
    nu: f64,
) -> Result<PositiveMatrix> {
    let d = quotient_modulus_squared(x, y)?;
    let d_pow = real_power_spectral(&d, nu)?;
    let result = x
        .matrix()
        .adjoint()
        .mul(d_pow.matrix())?
        .mul(x.matrix())?;
    PositiveMatrix::from_product(&result)
}

/// Which squared mean the half variant takes the root of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfMeanKind {
    Quadratic,
    Arithmetic,
    Harmonic,
}

/// Square root of the selected squared mean: `(x ⊛_ν y)^{1/2}`,
/// `(|x|² ∇_ν |y|²)^{1/2}` or `(|x|² !_ν |y|²)^{1/2}`. The arithmetic and
/// harmonic variants form `|x|²`, `|y|²` internally and need ν ∈ [0, 1].
pub fn half_means(
    x: &InvertibleMatrix,
    y: &InvertibleMatrix,
    nu: f64,
    kind: HalfMeanKind,
) -> Result<PositiveMatrix> {
    let squared = match kind {
        HalfMeanKind::Quadratic => quadratic_geometric_mean(x, y, nu)?,
        HalfMeanKind::Arithmetic => {
            if !(0.0..=1.0).contains(&nu) {
                return Err(Error::WeightOutOfRange { nu });
            }
            let gx = x.modulus_squared()?;
            let gy = y.modulus_squared()?;
            let combo = arithmetic_mean(gx.hermitian(), gy.hermitian(), nu)?;
            PositiveMatrix::new(combo)?
        }
        HalfMeanKind::Harmonic => {
            let gx = x.modulus_squared()?;
            let gy = y.modulus_squared()?;
            harmonic_mean(&gx, &gy, nu)?
        }
    };
    real_power_spectral(&squared, 0.5)
}

/// Gap between the scalar arithmetic and geometric means against 1:
/// `f_ν(t) = 1 − ν + νt − t^ν = A_ν(1,t) − G_ν(1,t)`, nonnegative on
/// `[0, ∞)` for ν ∈ (0, 1). At t = 0 the continuous extension `0^ν = 0`
/// applies.
pub fn f_nu(t: f64, nu: f64) -> Result<f64> {
    if !(nu > 0.0 && nu < 1.0) {
        return Err(Error::WeightOutOfRange { nu });
    }
    if !(t >= 0.0) {
        return Err(Error::ParameterOutOfDomain { reason: "f_nu needs t >= 0" });
    }
    Ok(1.0 - nu + nu * t - t.powf(nu))
}

/// Maximum and minimum of `f_ν` over `[k, K]`, resolved by where the
/// interval sits relative to the minimizer t = 1: `f_ν` decreases on [0, 1]
/// and increases on [1, ∞).
pub fn bound_functions(k: f64, kk: f64, nu: f64) -> Result<(f64, f64)> {
    if !(nu > 0.0 && nu < 1.0) {
        return Err(Error::WeightOutOfRange { nu });
    }
    if !(k > 0.0 && k <= kk) {
        return Err(Error::BadInterval { k, kk });
    }
    let f = |t: f64| 1.0 - nu + nu * t - t.powf(nu);
    let (delta_max, delta_min) = if kk < 1.0 {
        (f(k), f(kk))
    } else if k <= 1.0 {
        (f(k).max(f(kk)), 0.0)
    } else {
        (f(kk), f(k))
    };
    Ok((delta_max, delta_min))
}
