//! Loewner-order comparison: `a ⪰ b` iff `a − b` is positive semidefinite,
//! decided numerically from the smallest eigenvalue of the difference.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::classes::HermitianMatrix;

/// Default relative tolerance for order checks.
pub const DEFAULT_ORDER_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    /// `min_eig(a − b) > tol · scale`.
    StrictlyGreater,
    /// `min_eig(a − b) ≥ −tol · scale` but not strictly greater.
    GreaterEqual,
    /// The difference has a significantly negative eigenvalue.
    Indefinite,
}

/// Outcome of one Loewner comparison.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrderReport {
    /// Smallest eigenvalue of `a − b`.
    pub min_eig_diff: f64,
    /// `max(‖a‖₂, ‖b‖₂)`, the scale the tolerance is relative to.
    pub scale: f64,
    pub verdict: Verdict,
}

impl OrderReport {
    pub fn holds(&self) -> bool {
        self.verdict != Verdict::Indefinite
    }
}

/// Compares `a` and `b` in the Loewner order with relative tolerance
/// `tol_rel`. The strictness threshold uses the same single knob.
pub fn loewner_compare(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    tol_rel: f64,
) -> Result<OrderReport> {
    let diff = a.sub(b)?;
    let min_eig_diff = diff.eigen()?.min_eigenvalue();
    let scale = a.operator_norm()?.max(b.operator_norm()?);
    let verdict = if min_eig_diff > tol_rel * scale {
        Verdict::StrictlyGreater
    } else if min_eig_diff >= -tol_rel * scale {
        Verdict::GreaterEqual
    } else {
        Verdict::Indefinite
    };
    Ok(OrderReport { min_eig_diff, scale, verdict })
}
