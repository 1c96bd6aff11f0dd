//! Serializable law instances: the canonical record of one law evaluation's
//! inputs, used for digests, failure artifacts and replay.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laws::operator::{
    check_bounded_estimates, check_dcd_identity, check_geo_symmetry, check_hga_chain,
    check_inverse_identities, check_norm_chain, check_operator_refinement, check_representation,
    BoundForm, DcdVariant, HgaKind, RefinementForm,
};
use crate::laws::scalar::{
    check_jensen_bounds, check_scalar_refinement, ConvexFunction, JensenInstance, ScalarFamily,
};
use crate::laws::{LawId, LawReport};
use crate::linalg::classes::{InvertibleMatrix, PositiveMatrix};
use crate::linalg::matrix::ComplexMatrix;

/// Inputs of one law evaluation. Which fields are present depends on the
/// law; absent fields are omitted from the serialized form.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct LawInstance {
    pub law_id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<ComplexMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<ComplexMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<ComplexMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<ComplexMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<ComplexMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<ComplexMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub widen: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_scalar: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_scalar: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights_p: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights_q: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<ConvexFunction>,
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// FNV-1a 64 over a byte stream.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = FNV_OFFSET;
    for &byte in bytes {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(FNV_PRIME);
    }
    hash
}

/// Digest of the canonical (key-sorted) JSON serialization of the inputs,
/// as a fixed-width hex string.
pub fn instance_digest(instance: &LawInstance) -> Result<String> {
    let canonical = serde_json::to_string(&serde_json::to_value(instance)?)?;
    Ok(format!("{:016x}", fnv1a64(canonical.as_bytes())))
}

impl LawInstance {
    fn invertible(&self, field: Option<&ComplexMatrix>, name: &str) -> Result<InvertibleMatrix> {
        let m = field.ok_or_else(|| Error::InvalidInstance {
            reason: format!("missing matrix field `{name}`"),
        })?;
        InvertibleMatrix::new(m.clone())
    }

    fn positive(&self, field: Option<&ComplexMatrix>, name: &str) -> Result<PositiveMatrix> {
        let m = field.ok_or_else(|| Error::InvalidInstance {
            reason: format!("missing matrix field `{name}`"),
        })?;
        PositiveMatrix::try_from_matrix(m.clone())
    }

    fn scalar(&self, field: Option<f64>, name: &str) -> Result<f64> {
        field.ok_or_else(|| Error::InvalidInstance {
            reason: format!("missing scalar field `{name}`"),
        })
    }
}

/// Runs the law named by the instance with the pinned order tolerance.
pub fn evaluate_instance(instance: &LawInstance) -> Result<LawReport> {
    evaluate_instance_with(instance, crate::laws::tol::ORDER)
}

/// Runs the law named by the instance on the instance's inputs, revalidating
/// every matrix-class invariant on the way in. `order_tol` governs the
/// pass/fail threshold of order margins; identity and scalar tolerances are
/// pinned.
pub fn evaluate_instance_with(instance: &LawInstance, order_tol: f64) -> Result<LawReport> {
    let law = LawId::parse(&instance.law_id)?;
    match law {
        LawId::DcdSelfadjoint | LawId::DcdStar => {
            let c = instance.positive(instance.c.as_ref(), "c")?;
            let d = instance.invertible(instance.d.as_ref(), "d")?;
            let lambda = instance.scalar(instance.lambda, "lambda")?;
            let variant = if law == LawId::DcdSelfadjoint {
                DcdVariant::Selfadjoint
            } else {
                DcdVariant::Star
            };
            check_dcd_identity(&c, &d, lambda, variant)
        }
        LawId::GeoSymmetry => {
            let a = instance.positive(instance.a.as_ref(), "a")?;
            let b = instance.positive(instance.b.as_ref(), "b")?;
            check_geo_symmetry(&a, &b, instance.scalar(instance.nu, "nu")?)
        }
        LawId::InverseIdentities => {
            let x = instance.invertible(instance.x.as_ref(), "x")?;
            let y = instance.invertible(instance.y.as_ref(), "y")?;
            check_inverse_identities(&x, &y, instance.scalar(instance.nu, "nu")?)
        }
        LawId::Representation => {
            let x = instance.invertible(instance.x.as_ref(), "x")?;
            let y = instance.invertible(instance.y.as_ref(), "y")?;
            check_representation(&x, &y, instance.scalar(instance.nu, "nu")?)
        }
        LawId::HgaSquared | LawId::HgaHalf | LawId::HgaPositivePair => {
            let x = instance.invertible(instance.x.as_ref(), "x")?;
            let y = instance.invertible(instance.y.as_ref(), "y")?;
            let kind = match law {
                LawId::HgaSquared => HgaKind::Squared,
                LawId::HgaHalf => HgaKind::Half,
                _ => HgaKind::PositivePair,
            };
            check_hga_chain(&x, &y, instance.scalar(instance.nu, "nu")?, kind, order_tol)
        }
        LawId::NormChain => {
            let x = instance.invertible(instance.x.as_ref(), "x")?;
            let y = instance.invertible(instance.y.as_ref(), "y")?;
            check_norm_chain(&x, &y, instance.scalar(instance.nu, "nu")?, order_tol)
        }
        LawId::RefineGeneral
        | LawId::RefineHalf
        | LawId::RefinePositivePair
        | LawId::RefinePositivePairHalf => {
            let x = instance.invertible(instance.x.as_ref(), "x")?;
            let y = instance.invertible(instance.y.as_ref(), "y")?;
            let p = instance.scalar(instance.p, "p")?;
            let form = match law {
                LawId::RefineGeneral => RefinementForm::General,
                LawId::RefineHalf => RefinementForm::Half,
                LawId::RefinePositivePair => RefinementForm::PositivePair,
                _ => RefinementForm::PositivePairHalf,
            };
            let q = match form {
                RefinementForm::General | RefinementForm::PositivePair => {
                    instance.scalar(instance.q, "q")?
                }
                _ => 0.5,
            };
            check_operator_refinement(&x, &y, p, q, form, order_tol)
        }
        LawId::BoundTheorem
        | LawId::BoundCorollary
        | LawId::BoundPositivePair
        | LawId::BoundPositivePairSquareRoot => {
            let x = instance.invertible(instance.x.as_ref(), "x")?;
            let y = instance.invertible(instance.y.as_ref(), "y")?;
            let form = match law {
                LawId::BoundTheorem => BoundForm::Theorem,
                LawId::BoundCorollary => BoundForm::Corollary,
                LawId::BoundPositivePair => BoundForm::PositivePair,
                _ => BoundForm::PositivePairSquareRoot,
            };
            let widen = instance.widen.unwrap_or(1.0);
            check_bounded_estimates(&x, &y, instance.scalar(instance.nu, "nu")?, form, widen, order_tol)
        }
        LawId::JensenBounds => {
            let points = instance.points.clone().ok_or_else(|| Error::InvalidInstance {
                reason: "missing field `points`".into(),
            })?;
            let function = instance.function.ok_or_else(|| Error::InvalidInstance {
                reason: "missing field `function`".into(),
            })?;
            let weights_p = instance.weights_p.clone().ok_or_else(|| Error::InvalidInstance {
                reason: "missing field `weights_p`".into(),
            })?;
            let weights_q = instance.weights_q.clone().ok_or_else(|| Error::InvalidInstance {
                reason: "missing field `weights_q`".into(),
            })?;
            let inst_p = JensenInstance::new(points.clone(), weights_p, function)?;
            let inst_q = JensenInstance::new(points, weights_q, function)?;
            check_jensen_bounds(&inst_p, &inst_q)
        }
        LawId::ScalarExp
        | LawId::ScalarExpHalf
        | LawId::ScalarPower
        | LawId::ScalarPowerHalf
        | LawId::ScalarKm
        | LawId::ScalarAmGm => {
            let family = ScalarFamily::from_law(law).expect("scalar law");
            let a = instance.scalar(instance.a_scalar, "a_scalar")?;
            let b = instance.scalar(instance.b_scalar, "b_scalar")?;
            let p = instance.scalar(instance.p, "p")?;
            check_scalar_refinement(
                a,
                b,
                p,
                instance.q.unwrap_or(0.5),
                instance.alpha.unwrap_or(1.0),
                family,
            )
        }
    }
}
