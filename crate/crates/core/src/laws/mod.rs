//! One checkable predicate per identity or inequality on the operator means,
//! each producing a [`LawReport`] with named residuals and order margins.
//!
//! Identities report relative Frobenius residuals; inequalities report the
//! smallest eigenvalue of each bound-minus-middle difference together with
//! the scale the tolerance is relative to. A report passes when every
//! diagnostic is within its law-specific tolerance; the signed distance to
//! the worst tolerance boundary is kept as the report margin so that
//! near-violations are distinguishable from true failures.

pub mod instance;
pub mod operator;
pub mod scalar;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use instance::{evaluate_instance, evaluate_instance_with, instance_digest, LawInstance};
pub use scalar::{jensen_functional, ConvexFunction, JensenInstance};

/// Law tolerances. Identities run one digit looser than core eigensolver
/// accuracy to absorb compositions of several matrix functions; order margins
/// tolerate `-1e-9` of the operand scale; scalar chains are near machine
/// precision.
pub mod tol {
    /// Relative Frobenius residual bound for identity laws.
    pub const IDENTITY: f64 = 1e-8;
    /// Order laws pass at `min_eig ≥ -ORDER * scale`.
    pub const ORDER: f64 = 1e-9;
    /// Scalar inequality slack bound, relative to the chain scale.
    pub const SCALAR: f64 = 1e-12;
    /// Residual level expected at documented equality cases.
    pub const EQUALITY: f64 = 1e-10;
}

/// Stable identifiers for every law the suite can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum LawId {
    DcdSelfadjoint,
    DcdStar,
    GeoSymmetry,
    InverseIdentities,
    Representation,
    HgaSquared,
    HgaHalf,
    HgaPositivePair,
    NormChain,
    RefineGeneral,
    RefineHalf,
    RefinePositivePair,
    RefinePositivePairHalf,
    BoundTheorem,
    BoundCorollary,
    BoundPositivePair,
    BoundPositivePairSquareRoot,
    JensenBounds,
    ScalarExp,
    ScalarExpHalf,
    ScalarPower,
    ScalarPowerHalf,
    ScalarKm,
    ScalarAmGm,
}

impl LawId {
    /// Every law, in registry order. Suite bookkeeping indexes into this.
    pub const ALL: [LawId; 24] = [
        LawId::DcdSelfadjoint,
        LawId::DcdStar,
        LawId::GeoSymmetry,
        LawId::InverseIdentities,
        LawId::Representation,
        LawId::HgaSquared,
        LawId::HgaHalf,
        LawId::HgaPositivePair,
        LawId::NormChain,
        LawId::RefineGeneral,
        LawId::RefineHalf,
        LawId::RefinePositivePair,
        LawId::RefinePositivePairHalf,
        LawId::BoundTheorem,
        LawId::BoundCorollary,
        LawId::BoundPositivePair,
        LawId::BoundPositivePairSquareRoot,
        LawId::JensenBounds,
        LawId::ScalarExp,
        LawId::ScalarExpHalf,
        LawId::ScalarPower,
        LawId::ScalarPowerHalf,
        LawId::ScalarKm,
        LawId::ScalarAmGm,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            LawId::DcdSelfadjoint => "lem-1.1-dcd-selfadjoint",
            LawId::DcdStar => "lem-2.5.1-dcd-star",
            LawId::GeoSymmetry => "prop-1.2-geo-symmetry",
            LawId::InverseIdentities => "prop-2.4-inverse-identities",
            LawId::Representation => "thm-2.5.2-representation",
            LawId::HgaSquared => "thm-2.6-hga-squared",
            LawId::HgaHalf => "cor-2.9-hga-half",
            LawId::HgaPositivePair => "hga-positive-pair",
            LawId::NormChain => "cor-2.9.1-norm-chain",
            LawId::RefineGeneral => "refine-general-3.12",
            LawId::RefineHalf => "refine-half-3.12.1",
            LawId::RefinePositivePair => "refine-positive-pair-3.15.1",
            LawId::RefinePositivePairHalf => "refine-positive-pair-half-3.15.2",
            LawId::BoundTheorem => "bound-thm-4.3",
            LawId::BoundCorollary => "bound-cor-4.7",
            LawId::BoundPositivePair => "bound-positive-pair-4.8",
            LawId::BoundPositivePairSquareRoot => "bound-positive-pair-4.9",
            LawId::JensenBounds => "lem-3.1-jensen-bounds",
            LawId::ScalarExp => "scalar-exp-3.4",
            LawId::ScalarExpHalf => "scalar-exp-3.5",
            LawId::ScalarPower => "scalar-power-3.6",
            LawId::ScalarPowerHalf => "scalar-power-3.7",
            LawId::ScalarKm => "scalar-km-3.8",
            LawId::ScalarAmGm => "scalar-am-gm-3.9",
        }
    }

    pub fn parse(id: &str) -> Result<LawId> {
        LawId::ALL
            .iter()
            .copied()
            .find(|law| law.as_str() == id)
            .ok_or_else(|| Error::UnknownLawId { id: id.to_owned() })
    }

    /// Whether the law's weight may range over all reals rather than [0, 1].
    pub fn accepts_any_real_weight(self) -> bool {
        matches!(
            self,
            LawId::GeoSymmetry | LawId::InverseIdentities | LawId::Representation
        )
    }
}

/// Outcome of one law checked on one instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LawReport {
    pub law_id: String,
    pub pass: bool,
    /// Raw diagnostics: relative residuals, min-eig margins, scales, slacks.
    pub residuals: BTreeMap<String, f64>,
    /// FNV-1a 64 over the canonical JSON serialization of the inputs, hex.
    pub instance_digest: String,
    /// Signed distance to the tightest tolerance boundary; negative = fail.
    /// Derived from the residuals, so it is not part of the wire format.
    #[serde(skip)]
    pub margin: f64,
}

/// Accumulates named diagnostics and tracks the worst tolerance slack.
pub(crate) struct ReportBuilder {
    law: LawId,
    residuals: BTreeMap<String, f64>,
    margin: f64,
}

impl ReportBuilder {
    pub fn new(law: LawId) -> Self {
        Self { law, residuals: BTreeMap::new(), margin: f64::INFINITY }
    }

    fn note(&mut self, name: &str, value: f64, slack: f64) {
        self.residuals.insert(name.to_owned(), value);
        if !(slack >= self.margin) {
            // Keeps NaN slack: min() would discard it and mask the failure.
            self.margin = slack;
        }
    }

    /// Relative identity residual; passes at `value ≤ tol`.
    pub fn identity(&mut self, name: &str, value: f64, tol: f64) {
        self.note(name, value, tol - value);
    }

    /// Order margin; passes at `min_eig ≥ -tol * scale`.
    pub fn order_margin(&mut self, name: &str, min_eig: f64, scale: f64, tol: f64) {
        self.note(name, min_eig, min_eig + tol * scale);
    }

    /// Scalar slack; passes at `slack ≥ -tol * scale`.
    pub fn scalar_slack(&mut self, name: &str, slack: f64, scale: f64, tol: f64) {
        self.note(name, slack, slack + tol * scale);
    }

    /// Pure diagnostic, never affects the verdict.
    pub fn info(&mut self, name: &str, value: f64) {
        self.residuals.insert(name.to_owned(), value);
    }

    pub fn finish(self, digest: String) -> LawReport {
        LawReport {
            law_id: self.law.as_str().to_owned(),
            pass: self.margin >= 0.0,
            residuals: self.residuals,
            instance_digest: digest,
            margin: self.margin,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_round_trips() {
        for law in LawId::ALL {
            assert_eq!(LawId::parse(law.as_str()).unwrap(), law);
        }
        assert!(LawId::parse("no-such-law").is_err());
    }

    #[test]
    fn builder_tracks_worst_slack() {
        let mut b = ReportBuilder::new(LawId::Representation);
        b.identity("r1", 1e-9, 1e-8);
        b.order_margin("m1", -2e-9, 1.0, 1e-9);
        let report = b.finish("00".into());
        assert!(!report.pass);
        assert!((report.margin + 1e-9).abs() < 1e-18);
    }

    #[test]
    fn nan_diagnostics_fail() {
        let mut b = ReportBuilder::new(LawId::Representation);
        b.identity("r1", f64::NAN, 1e-8);
        let report = b.finish("00".into());
        assert!(!report.pass);
    }
}
