//! Matrix-valued laws: congruence-power identities, the representation of
//! the quadratic mean through the geometric mean of squared moduli, the
//! mean chains in the Loewner order, refinement/reverse inequalities and the
//! boundedness estimates with their norm consequences.
//!
//! Order laws report the smallest eigenvalue of each bound-minus-middle
//! difference against a chain scale (the largest operator norm among the
//! chain terms), so equality cases stay well inside tolerance even when the
//! compared matrices themselves are numerically zero.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcalc::real_power_spectral;
use crate::laws::{instance_digest, tol, LawId, LawInstance, LawReport, ReportBuilder};
use crate::linalg::classes::{HermitianMatrix, InvertibleMatrix, PositiveMatrix};
use crate::linalg::matrix::ComplexMatrix;
use crate::means::{
    arithmetic_mean, geometric_mean, half_means, harmonic_mean, quadratic_geometric_mean,
    quotient_modulus_squared, HalfMeanKind,
};

/// Relative Frobenius distance between two evaluation routes.
fn rel_residual(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let denom = a.frobenius_norm().max(b.frobenius_norm()).max(1e-300);
    Ok(a.sub(b)?.frobenius_norm() / denom)
}

fn min_eig(h: &HermitianMatrix) -> Result<f64> {
    Ok(h.eigen()?.min_eigenvalue())
}

fn order_gap(left: &HermitianMatrix, right: &HermitianMatrix) -> Result<f64> {
    min_eig(&left.sub(right)?)
}

/// Which congruence-power identity to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DcdVariant {
    /// `(dcd)^λ = d c^{1/2} (c^{1/2} d² c^{1/2})^{λ-1} c^{1/2} d`, d positive.
    Selfadjoint,
    /// `(dcd*)^λ = d c^{1/2} (c^{1/2} |d|² c^{1/2})^{λ-1} c^{1/2} d*`, d invertible.
    Star,
}

pub fn check_dcd_identity(
    c: &PositiveMatrix,
    d: &InvertibleMatrix,
    lambda: f64,
    variant: DcdVariant,
) -> Result<LawReport> {
    let law = match variant {
        DcdVariant::Selfadjoint => LawId::DcdSelfadjoint,
        DcdVariant::Star => LawId::DcdStar,
    };
    let digest = instance_digest(&LawInstance {
        law_id: law.as_str().to_owned(),
        c: Some(c.matrix().clone()),
        d: Some(d.matrix().clone()),
        lambda: Some(lambda),
        ..LawInstance::default()
    })?;

    let root_c = real_power_spectral(c, 0.5)?;
    let (lhs_product, d_gram, right_factor) = match variant {
        DcdVariant::Selfadjoint => {
            if PositiveMatrix::try_from_matrix(d.matrix().clone()).is_err() {
                return Err(Error::VariantPreconditionViolated {
                    reason: "selfadjoint variant needs d > 0",
                });
            }
            let dcd = d.matrix().mul(c.matrix())?.mul(d.matrix())?;
            let d_sq = d.matrix().mul(d.matrix())?;
            (dcd, d_sq, d.matrix().clone())
        }
        DcdVariant::Star => {
            let dcd = d.matrix().mul(c.matrix())?.mul(&d.matrix().adjoint())?;
            let gram = d.matrix().adjoint().mul(d.matrix())?;
            (dcd, gram, d.matrix().adjoint())
        }
    };

    let lhs = real_power_spectral(&PositiveMatrix::from_product(&lhs_product)?, lambda)?;

    let middle = root_c.matrix().mul(&d_gram)?.mul(root_c.matrix())?;
    let middle_pow = real_power_spectral(&PositiveMatrix::from_product(&middle)?, lambda - 1.0)?;
    let rhs = d
        .matrix()
        .mul(root_c.matrix())?
        .mul(middle_pow.matrix())?
        .mul(root_c.matrix())?
        .mul(&right_factor)?;

    let mut report = ReportBuilder::new(law);
    report.identity("residual", rel_residual(lhs.matrix(), &rhs)?, tol::IDENTITY);
    Ok(report.finish(digest))
}

/// Symmetry of the geometric mean under weight reflection:
/// `b ♯_{1-ν} a = a ♯_ν b` for any real ν.
pub fn check_geo_symmetry(a: &PositiveMatrix, b: &PositiveMatrix, nu: f64) -> Result<LawReport> {
    let digest = instance_digest(&LawInstance {
        law_id: LawId::GeoSymmetry.as_str().to_owned(),
        a: Some(a.matrix().clone()),
        b: Some(b.matrix().clone()),
        nu: Some(nu),
        ..LawInstance::default()
    })?;
    let lhs = geometric_mean(b, a, 1.0 - nu)?;
    let rhs = geometric_mean(a, b, nu)?;
    let mut report = ReportBuilder::new(LawId::GeoSymmetry);
    report.identity("residual", rel_residual(lhs.matrix(), rhs.matrix())?, tol::IDENTITY);
    Ok(report.finish(digest))
}

/// `(x ⊛_ν y)⁻¹` in the factored form `x⁻¹ d^{-ν} (x*)⁻¹`, the exact inverse
/// of the defining congruence. Inverting the assembled mean instead would
/// inject `cond(x ⊛_ν y)` into the residual, which for weights outside
/// [0, 1] swamps the identity tolerance.
fn quadratic_mean_inverse(
    x: &InvertibleMatrix,
    y: &InvertibleMatrix,
    nu: f64,
) -> Result<PositiveMatrix> {
    let d = crate::means::quotient_modulus_squared(x, y)?;
    let d_pow = real_power_spectral(&d, -nu)?;
    let x_inv = x.inverse()?;
    let product = x_inv.matrix().mul(d_pow.matrix())?.mul(&x_inv.matrix().adjoint())?;
    PositiveMatrix::from_product(&product)
}

/// Inverse identities of the quadratic mean:
/// `(x ⊛_ν y)⁻¹ = (x*)⁻¹ ⊛_ν (y*)⁻¹` and `x⁻¹ ⊛_ν y⁻¹ = (x* ⊛_ν y*)⁻¹`.
pub fn check_inverse_identities(
    x: &InvertibleMatrix,
    y: &InvertibleMatrix,
    nu: f64,
) -> Result<LawReport> {
    let digest = instance_digest(&LawInstance {
        law_id: LawId::InverseIdentities.as_str().to_owned(),
        x: Some(x.matrix().clone()),
        y: Some(y.matrix().clone()),
        nu: Some(nu),
        ..LawInstance::default()
    })?;

    let mean_inv = quadratic_mean_inverse(x, y, nu)?;
    let adj_inv_mean =
        quadratic_geometric_mean(&x.adjoint().inverse()?, &y.adjoint().inverse()?, nu)?;

    let inv_mean = quadratic_geometric_mean(&x.inverse()?, &y.inverse()?, nu)?;
    let adj_mean_inv = quadratic_mean_inverse(&x.adjoint(), &y.adjoint(), nu)?;

    let mut report = ReportBuilder::new(LawId::InverseIdentities);
    report.identity(
        "residual_adjoint_inverse",
        rel_residual(mean_inv.matrix(), adj_inv_mean.matrix())?,
        tol::IDENTITY,
    );
    report.identity(
        "residual_inverse_pair",
        rel_residual(inv_mean.matrix(), adj_mean_inv.matrix())?,
        tol::IDENTITY,
    );
    Ok(report.finish(digest))
}

/// Representation of the quadratic mean through the geometric mean of the
/// squared moduli, in both weight orientations:
/// `x ⊛_ν y = |x|² ♯_ν |y|² = |y|² ♯_{1-ν} |x|²`.
///
/// The left side goes through the defining congruence `x* d^ν x` and the
/// right side through the geometric-mean closed form; the two evaluation
/// paths share no intermediate matrices.
pub fn check_representation(
    x: &InvertibleMatrix,
    y: &InvertibleMatrix,
    nu: f64,
) -> Result<LawReport> {
    let digest = instance_digest(&LawInstance {
        law_id: LawId::Representation.as_str().to_owned(),
        x: Some(x.matrix().clone()),
        y: Some(y.matrix().clone()),
        nu: Some(nu),
        ..LawInstance::default()
    })?;

    let quadratic = quadratic_geometric_mean(x, y, nu)?;
    let gx = x.modulus_squared()?;
    let gy = y.modulus_squared()?;
    let geo = geometric_mean(&gx, &gy, nu)?;
    let geo_swapped = geometric_mean(&gy, &gx, 1.0 - nu)?;

    let mut report = ReportBuilder::new(LawId::Representation);
    report.identity(
        "residual_representation",
        rel_residual(quadratic.matrix(), geo.matrix())?,
        tol::IDENTITY,
    );
    report.identity(
        "residual_swapped",
        rel_residual(quadratic.matrix(), geo_swapped.matrix())?,
        tol::IDENTITY,
    );
    Ok(report.finish(digest))
}

/// Which harmonic-geometric-arithmetic chain to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HgaKind {
    /// `|x|² ∇_ν |y|² ⪰ x ⊛_ν y ⪰ |x|² !_ν |y|²`.
    Squared,
    /// The same chain after square roots.
    Half,
    /// `a ∇_ν b ⪰ a ♯_ν b ⪰ a !_ν b` on the pair `(|x|², |y|²)`.
    PositivePair,
}

pub fn check_hga_chain(
    x: &InvertibleMatrix,
    y: &InvertibleMatrix,
    nu: f64,
    kind: HgaKind,
    order_tol: f64,
) -> Result<LawReport> {
    if !(0.0..=1.0).contains(&nu) {
        return Err(Error::WeightOutOfRange { nu });
    }
    let law = match kind {
        HgaKind::Squared => LawId::HgaSquared,
        HgaKind::Half => LawId::HgaHalf,
        HgaKind::PositivePair => LawId::HgaPositivePair,
    };
    let digest = instance_digest(&LawInstance {
        law_id: law.as_str().to_owned(),
        x: Some(x.matrix().clone()),
        y: Some(y.matrix().clone()),
        nu: Some(nu),
        ..LawInstance::default()
    })?;

    let gx = x.modulus_squared()?;
    let gy = y.modulus_squared()?;
    let (left, mid, right) = match kind {
        HgaKind::Squared => (
            arithmetic_mean(gx.hermitian(), gy.hermitian(), nu)?,
            quadratic_geometric_mean(x, y, nu)?.hermitian().clone(),
            harmonic_mean(&gx, &gy, nu)?.hermitian().clone(),
        ),
        HgaKind::Half => (
            half_means(x, y, nu, HalfMeanKind::Arithmetic)?.hermitian().clone(),
            half_means(x, y, nu, HalfMeanKind::Quadratic)?.hermitian().clone(),
            half_means(x, y, nu, HalfMeanKind::Harmonic)?.hermitian().clone(),
        ),
        HgaKind::PositivePair => (
            arithmetic_mean(gx.hermitian(), gy.hermitian(), nu)?,
            geometric_mean(&gx, &gy, nu)?.hermitian().clone(),
            harmonic_mean(&gx, &gy, nu)?.hermitian().clone(),
        ),
    };

    let scale = left
        .operator_norm()?
        .max(mid.operator_norm()?)
        .max(right.operator_norm()?);
    let mut report = ReportBuilder::new(law);
    report.info("scale", scale);
    report.order_margin("margin_upper", order_gap(&left, &mid)?, scale, order_tol);
    report.order_margin("margin_lower", order_gap(&mid, &right)?, scale, order_tol);
    Ok(report.finish(digest))
}

/// Operator-norm chain in the C*-algebra of matrices:
/// `(1-ν)‖x‖² + ν‖y‖² ≥ ‖(1-ν)|x|² + ν|y|²‖ ≥ ‖|yx⁻¹|^ν x‖²`.
pub fn check_norm_chain(
    x: &InvertibleMatrix,
    y: &InvertibleMatrix,
    nu: f64,
    order_tol: f64,
) -> Result<LawReport> {
    if !(0.0..=1.0).contains(&nu) {
        return Err(Error::WeightOutOfRange { nu });
    }
    let digest = instance_digest(&LawInstance {
        law_id: LawId::NormChain.as_str().to_owned(),
        x: Some(x.matrix().clone()),
        y: Some(y.matrix().clone()),
        nu: Some(nu),
        ..LawInstance::default()
    })?;

    let left = (1.0 - nu) * x.smax() * x.smax() + nu * y.smax() * y.smax();

    let gx = x.modulus_squared()?;
    let gy = y.modulus_squared()?;
    let mid = arithmetic_mean(gx.hermitian(), gy.hermitian(), nu)?.operator_norm()?;

    // `|yx⁻¹|^ν x` through the positive element d = |yx⁻¹|².
    let d = quotient_modulus_squared(x, y)?;
    let quotient_pow = real_power_spectral(&d, nu / 2.0)?;
    let product = quotient_pow.matrix().mul(x.matrix())?;
    let (_, op_norm) = crate::linalg::classes::norms(&product)?;
    let right = op_norm * op_norm;

    let scale = left.abs().max(mid.abs()).max(right.abs()).max(1e-300);
    let mut report = ReportBuilder::new(LawId::NormChain);
    report.info("left", left);
    report.info("mid", mid);
    report.info("right", right);
    report.info("scale", scale);
    report.scalar_slack("slack_upper", left - mid, scale, order_tol);
    report.scalar_slack("slack_lower", mid - right, scale, order_tol);
    Ok(report.finish(digest))
}

/// Which refinement/reverse inequality to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RefinementForm {
    /// `max{p/q,(1-p)/(1-q)}·(∇_q − ⊛_q) ⪰ ∇_p − ⊛_p ⪰ min{…}·(∇_q − ⊛_q)`.
    General,
    /// The q = 1/2 coefficients `2·max{p,1-p}` and `2·min{p,1-p}`.
    Half,
    /// The same two-sided bound on `a ∇ b − a ♯ b` for `(|x|², |y|²)`.
    PositivePair,
    /// Positive pair at q = 1/2.
    PositivePairHalf,
}

pub fn check_operator_refinement(
    x: &InvertibleMatrix,
    y: &InvertibleMatrix,
    p: f64,
    q: f64,
    form: RefinementForm,
    order_tol: f64,
) -> Result<LawReport> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParameterOutOfDomain { reason: "p must lie in [0, 1]" });
    }
    let uses_q = matches!(form, RefinementForm::General | RefinementForm::PositivePair);
    if uses_q && !(q > 0.0 && q < 1.0) {
        return Err(Error::ParameterOutOfDomain { reason: "q must lie in (0, 1)" });
    }
    let law = match form {
        RefinementForm::General => LawId::RefineGeneral,
        RefinementForm::Half => LawId::RefineHalf,
        RefinementForm::PositivePair => LawId::RefinePositivePair,
        RefinementForm::PositivePairHalf => LawId::RefinePositivePairHalf,
    };
    let digest = instance_digest(&LawInstance {
        law_id: law.as_str().to_owned(),
        x: Some(x.matrix().clone()),
        y: Some(y.matrix().clone()),
        p: Some(p),
        q: uses_q.then_some(q),
        ..LawInstance::default()
    })?;

    let gx = x.modulus_squared()?;
    let gy = y.modulus_squared()?;

    // Arithmetic-minus-geometric gap at weight w, in the requested flavour.
    let positive_pair =
        matches!(form, RefinementForm::PositivePair | RefinementForm::PositivePairHalf);
    let gap = |w: f64| -> Result<(HermitianMatrix, f64)> {
        let arith = arithmetic_mean(gx.hermitian(), gy.hermitian(), w)?;
        let mid = if positive_pair {
            geometric_mean(&gx, &gy, w)?
        } else {
            quadratic_geometric_mean(x, y, w)?
        };
        let scale = arith.operator_norm()?.max(mid.operator_norm());
        Ok((arith.sub(mid.hermitian())?, scale))
    };

    let q_eff = match form {
        RefinementForm::General | RefinementForm::PositivePair => q,
        RefinementForm::Half | RefinementForm::PositivePairHalf => 0.5,
    };
    let (cmax, cmin) = match form {
        RefinementForm::General | RefinementForm::PositivePair => {
            let r1 = p / q;
            let r2 = (1.0 - p) / (1.0 - q);
            (r1.max(r2), r1.min(r2))
        }
        RefinementForm::Half | RefinementForm::PositivePairHalf => {
            (2.0 * p.max(1.0 - p), 2.0 * p.min(1.0 - p))
        }
    };

    let (gap_q, scale_q) = gap(q_eff)?;
    let (gap_p, scale_p) = gap(p)?;
    let scale = scale_q.max(scale_p);

    let upper = gap_q.scale(cmax).sub(&gap_p)?;
    let lower = gap_p.sub(&gap_q.scale(cmin))?;

    let mut report = ReportBuilder::new(law);
    report.info("scale", scale);
    report.info("coef_upper", cmax);
    report.info("coef_lower", cmin);
    report.order_margin("margin_upper", min_eig(&upper)?, scale, order_tol);
    report.order_margin("margin_lower", min_eig(&lower)?, scale, order_tol);
    Ok(report.finish(digest))
}

/// Which boundedness estimate to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundForm {
    /// `Δ_ν(m², M²)·|x|² ⪰ ∇_ν − ⊛_ν ⪰ δ_ν(m², M²)·|x|²` plus the operator
    /// norm consequences of the same chain.
    Theorem,
    /// Quadratic-spread coefficients `R·(…)²` and `r·(…)²` in place of Δ, δ.
    Corollary,
    /// `Δ_ν(k, K)·a ⪰ a ∇_ν b − a ♯_ν b ⪰ δ_ν(k, K)·a` on `(|x|², |y|²)`.
    PositivePair,
    /// Positive pair with the square-root spread coefficients.
    PositivePairSquareRoot,
}

/// Interval extrema of the scalar gap, extended by continuity to the
/// endpoint weights where the gap function is identically zero.
fn gap_extrema(k: f64, kk: f64, nu: f64) -> Result<(f64, f64)> {
    if nu == 0.0 || nu == 1.0 {
        return Ok((0.0, 0.0));
    }
    crate::means::bound_functions(k, kk, nu)
}

/// Piecewise quadratic-spread coefficients: the bound pair
/// `(R·spread_max, r·spread_min)` where the spreads depend on where the
/// interval `[lo, hi]` sits relative to 1.
fn spread_coefficients(lo: f64, hi: f64, nu: f64) -> (f64, f64) {
    let big_r = nu.max(1.0 - nu);
    let small_r = nu.min(1.0 - nu);
    let upper = if hi < 1.0 {
        (1.0 - lo).powi(2)
    } else if lo <= 1.0 {
        (1.0 - lo).powi(2).max((hi - 1.0).powi(2))
    } else {
        (hi - 1.0).powi(2)
    };
    let lower = if hi < 1.0 {
        (1.0 - hi).powi(2)
    } else if lo <= 1.0 {
        0.0
    } else {
        (lo - 1.0).powi(2)
    };
    (big_r * upper, small_r * lower)
}

pub fn check_bounded_estimates(
    x: &InvertibleMatrix,
    y: &InvertibleMatrix,
    nu: f64,
    form: BoundForm,
    widen: f64,
    order_tol: f64,
) -> Result<LawReport> {
    if !(0.0..=1.0).contains(&nu) {
        return Err(Error::WeightOutOfRange { nu });
    }
    if !(widen >= 1.0 && widen.is_finite()) {
        return Err(Error::ParameterOutOfDomain { reason: "widen factor must be >= 1" });
    }
    let law = match form {
        BoundForm::Theorem => LawId::BoundTheorem,
        BoundForm::Corollary => LawId::BoundCorollary,
        BoundForm::PositivePair => LawId::BoundPositivePair,
        BoundForm::PositivePairSquareRoot => LawId::BoundPositivePairSquareRoot,
    };
    let digest = instance_digest(&LawInstance {
        law_id: law.as_str().to_owned(),
        x: Some(x.matrix().clone()),
        y: Some(y.matrix().clone()),
        nu: Some(nu),
        widen: Some(widen),
        ..LawInstance::default()
    })?;

    // Spectral bounds m ≤ |yx⁻¹| ≤ M, tight by construction, then widened.
    let d = quotient_modulus_squared(x, y)?;
    let m = d.min_eig().sqrt() / widen;
    let big_m = d.max_eig().sqrt() * widen;

    let gx = x.modulus_squared()?;
    let gy = y.modulus_squared()?;
    let arith = arithmetic_mean(gx.hermitian(), gy.hermitian(), nu)?;

    let positive_pair =
        matches!(form, BoundForm::PositivePair | BoundForm::PositivePairSquareRoot);
    let mid = if positive_pair {
        geometric_mean(&gx, &gy, nu)?
    } else {
        quadratic_geometric_mean(x, y, nu)?
    };
    let gap = arith.sub(mid.hermitian())?;
    let scale = arith.operator_norm()?.max(mid.operator_norm());

    // Both coefficient families live on the interval [m², M²]; the
    // square-root spread uses [m, M] directly.
    let (coef_upper, coef_lower) = match form {
        BoundForm::Theorem | BoundForm::PositivePair => gap_extrema(m * m, big_m * big_m, nu)?,
        BoundForm::Corollary | BoundForm::PositivePairSquareRoot => {
            spread_coefficients(m, big_m, nu)
        }
    };

    let anchor = gx.hermitian();
    let upper = anchor.scale(coef_upper).sub(&gap)?;
    let lower = gap.sub(&anchor.scale(coef_lower))?;

    let mut report = ReportBuilder::new(law);
    report.info("m", m);
    report.info("m_upper", big_m);
    report.info("coef_upper", coef_upper);
    report.info("coef_lower", coef_lower);
    report.info("scale", scale);
    report.order_margin("margin_upper", min_eig(&upper)?, scale, order_tol);
    report.order_margin("margin_lower", min_eig(&lower)?, scale, order_tol);

    if matches!(form, BoundForm::Theorem) {
        // Norm consequences of the same chain: the gap norm is pinched by
        // Δ‖x‖² and δ‖x‖², and the triangle inequality turns the upper bound
        // into a reverse for the norm chain.
        let x_norm_sq = x.smax() * x.smax();
        let gap_norm = gap.operator_norm()?;
        report.scalar_slack(
            "slack_norm_gap_upper",
            coef_upper * x_norm_sq - gap_norm,
            scale,
            order_tol,
        );
        report.scalar_slack(
            "slack_norm_gap_lower",
            gap_norm - coef_lower * x_norm_sq,
            scale,
            order_tol,
        );

        let arith_norm = arith.operator_norm()?;
        let quotient_pow = real_power_spectral(&d, nu / 2.0)?;
        let product = quotient_pow.matrix().mul(x.matrix())?;
        let (_, op) = crate::linalg::classes::norms(&product)?;
        let norm_gap = arith_norm - op * op;
        report.scalar_slack(
            "slack_norm_triangle_upper",
            coef_upper * x_norm_sq - norm_gap,
            scale,
            order_tol,
        );
        report.scalar_slack("slack_norm_triangle_lower", norm_gap, scale, order_tol);
    }

    Ok(report.finish(digest))
}
