//! Scalar-side laws: the normalized Jensen functional with its ratio bounds,
//! and the six families of refined/reversed mean inequalities they imply.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laws::{instance_digest, LawId, LawInstance, LawReport, ReportBuilder};

/// Closed family of convex functions the Jensen checks draw from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ConvexFunction {
    /// `t ↦ exp(α t)`, α ≠ 0; convex on all of ℝ.
    Exp { alpha: f64 },
    /// `t ↦ t^α` with α < 0 (domain t > 0) or α ≥ 1 (domain t ≥ 0).
    Power { alpha: f64 },
    /// `t ↦ −ln t` on t > 0.
    NegLn,
    /// `t ↦ 1 − ν + νt − t^ν` with ν ∈ (0, 1), convex on t ≥ 0.
    AffineMinusPower { nu: f64 },
}

impl ConvexFunction {
    fn validate(&self) -> Result<()> {
        match *self {
            ConvexFunction::Exp { alpha } => {
                if alpha == 0.0 || !alpha.is_finite() {
                    return Err(Error::ParameterOutOfDomain {
                        reason: "exp family needs a finite nonzero alpha",
                    });
                }
            }
            ConvexFunction::Power { alpha } => {
                if !alpha.is_finite() || (alpha >= 0.0 && alpha < 1.0) {
                    return Err(Error::ParameterOutOfDomain {
                        reason: "power family needs alpha < 0 or alpha >= 1",
                    });
                }
            }
            ConvexFunction::NegLn => {}
            ConvexFunction::AffineMinusPower { nu } => {
                if !(nu > 0.0 && nu < 1.0) {
                    return Err(Error::WeightOutOfRange { nu });
                }
            }
        }
        Ok(())
    }

    fn contains(&self, t: f64) -> bool {
        if !t.is_finite() {
            return false;
        }
        match *self {
            ConvexFunction::Exp { .. } => true,
            ConvexFunction::Power { alpha } => {
                if alpha < 0.0 {
                    t > 0.0
                } else {
                    t >= 0.0
                }
            }
            ConvexFunction::NegLn => t > 0.0,
            ConvexFunction::AffineMinusPower { .. } => t >= 0.0,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            ConvexFunction::Exp { alpha } => (alpha * t).exp(),
            ConvexFunction::Power { alpha } => t.powf(alpha),
            ConvexFunction::NegLn => -t.ln(),
            ConvexFunction::AffineMinusPower { nu } => 1.0 - nu + nu * t - t.powf(nu),
        }
    }
}

/// Points, a probability vector and a convex function; the ingredients of
/// one normalized Jensen functional value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JensenInstance {
    pub points: Vec<f64>,
    pub weights: Vec<f64>,
    pub function: ConvexFunction,
}

impl JensenInstance {
    pub fn new(points: Vec<f64>, weights: Vec<f64>, function: ConvexFunction) -> Result<Self> {
        function.validate()?;
        if points.is_empty() || points.len() != weights.len() {
            return Err(Error::InvalidInstance {
                reason: "points and weights must be nonempty and of equal length".into(),
            });
        }
        for &w in &weights {
            if !(w >= 0.0) {
                return Err(Error::ParameterOutOfDomain {
                    reason: "weights must be nonnegative",
                });
            }
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::ParameterOutOfDomain { reason: "weights must sum to 1" });
        }
        for &t in &points {
            if !function.contains(t) {
                return Err(Error::DomainViolation { value: t });
            }
        }
        Ok(Self { points, weights, function })
    }
}

/// `J(f, x, p) = Σ p_i f(x_i) − f(Σ p_i x_i)`; nonnegative by convexity.
pub fn jensen_functional(inst: &JensenInstance) -> f64 {
    let mean: f64 = inst
        .points
        .iter()
        .zip(&inst.weights)
        .map(|(&x, &p)| p * x)
        .sum();
    let value: f64 = inst
        .points
        .iter()
        .zip(&inst.weights)
        .map(|(&x, &p)| p * inst.function.eval(x))
        .sum();
    value - inst.function.eval(mean)
}

/// Ratio bounds between two Jensen functionals sharing points and function:
/// `max_i(p_i/q_i) · J(q) ≥ J(p) ≥ min_i(p_i/q_i) · J(q)`.
pub fn check_jensen_bounds(inst_p: &JensenInstance, inst_q: &JensenInstance) -> Result<LawReport> {
    if inst_p.points != inst_q.points || inst_p.function != inst_q.function {
        return Err(Error::InvalidInstance {
            reason: "jensen bound instances must share points and function".into(),
        });
    }
    for (i, &q) in inst_q.weights.iter().enumerate() {
        if !(q > 0.0) {
            return Err(Error::ZeroDenominatorWeight { index: i, value: q });
        }
    }

    let digest = instance_digest(&LawInstance {
        law_id: LawId::JensenBounds.as_str().to_owned(),
        points: Some(inst_p.points.clone()),
        weights_p: Some(inst_p.weights.clone()),
        weights_q: Some(inst_q.weights.clone()),
        function: Some(inst_p.function),
        ..LawInstance::default()
    })?;

    let ratios: Vec<f64> = inst_p
        .weights
        .iter()
        .zip(&inst_q.weights)
        .map(|(&p, &q)| p / q)
        .collect();
    let max_ratio = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min_ratio = ratios.iter().copied().fold(f64::INFINITY, f64::min);

    let j_p = jensen_functional(inst_p);
    let j_q = jensen_functional(inst_q);
    let scale = (max_ratio * j_q).abs().max(j_p.abs()).max(1.0);

    let mut report = ReportBuilder::new(LawId::JensenBounds);
    report.info("j_p", j_p);
    report.info("j_q", j_q);
    report.info("scale", scale);
    report.scalar_slack("slack_upper", max_ratio * j_q - j_p, scale, super::tol::SCALAR);
    report.scalar_slack("slack_lower", j_p - min_ratio * j_q, scale, super::tol::SCALAR);
    Ok(report.finish(digest))
}

/// Which refined/reversed scalar inequality to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalarFamily {
    /// Exponential gap at weights p against q.
    Exp,
    /// Exponential gap against the symmetric weight.
    ExpHalf,
    /// Power-mean gap `A_w(a^α, b^α) − G_w^α(a, b)` at p against q.
    Power,
    /// Power-mean gap against the symmetric weight, bound `(b^{α/2}−a^{α/2})²`.
    PowerHalf,
    /// Arithmetic-geometric gap against `(√b − √a)²`.
    KittanehManasrah,
    /// Arithmetic-geometric gap at p against q.
    AmGm,
}

impl ScalarFamily {
    pub fn law_id(self) -> LawId {
        match self {
            ScalarFamily::Exp => LawId::ScalarExp,
            ScalarFamily::ExpHalf => LawId::ScalarExpHalf,
            ScalarFamily::Power => LawId::ScalarPower,
            ScalarFamily::PowerHalf => LawId::ScalarPowerHalf,
            ScalarFamily::KittanehManasrah => LawId::ScalarKm,
            ScalarFamily::AmGm => LawId::ScalarAmGm,
        }
    }

    pub fn from_law(law: LawId) -> Option<Self> {
        match law {
            LawId::ScalarExp => Some(ScalarFamily::Exp),
            LawId::ScalarExpHalf => Some(ScalarFamily::ExpHalf),
            LawId::ScalarPower => Some(ScalarFamily::Power),
            LawId::ScalarPowerHalf => Some(ScalarFamily::PowerHalf),
            LawId::ScalarKm => Some(ScalarFamily::KittanehManasrah),
            LawId::ScalarAmGm => Some(ScalarFamily::AmGm),
            _ => None,
        }
    }
}

fn ratio_coefficients(p: f64, q: f64) -> (f64, f64) {
    let r1 = p / q;
    let r2 = (1.0 - p) / (1.0 - q);
    (r1.max(r2), r1.min(r2))
}

/// Checks the selected double inequality. `a`, `b` are positive scalars for
/// the power/AM-GM families and arbitrary real points for the exponential
/// families; `q` is ignored by the symmetric-weight families and `alpha` by
/// the AM-GM ones.
pub fn check_scalar_refinement(
    a: f64,
    b: f64,
    p: f64,
    q: f64,
    alpha: f64,
    family: ScalarFamily,
) -> Result<LawReport> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParameterOutOfDomain { reason: "p must lie in [0, 1]" });
    }
    let uses_q = matches!(family, ScalarFamily::Exp | ScalarFamily::Power | ScalarFamily::AmGm);
    if uses_q && !(q > 0.0 && q < 1.0) {
        return Err(Error::ParameterOutOfDomain { reason: "q must lie in (0, 1)" });
    }
    let uses_alpha = !matches!(family, ScalarFamily::KittanehManasrah | ScalarFamily::AmGm);
    if uses_alpha && (alpha == 0.0 || !alpha.is_finite()) {
        return Err(Error::ParameterOutOfDomain { reason: "alpha must be finite and nonzero" });
    }
    let positive_inputs = !matches!(family, ScalarFamily::Exp | ScalarFamily::ExpHalf);
    if positive_inputs && !(a > 0.0 && b > 0.0) {
        return Err(Error::ParameterOutOfDomain {
            reason: "this family needs positive a and b",
        });
    }

    let law = family.law_id();
    let digest = instance_digest(&LawInstance {
        law_id: law.as_str().to_owned(),
        a_scalar: Some(a),
        b_scalar: Some(b),
        p: Some(p),
        q: uses_q.then_some(q),
        alpha: uses_alpha.then_some(alpha),
        ..LawInstance::default()
    })?;

    // Gap of the relevant mean inequality at weight w.
    let gap: Box<dyn Fn(f64) -> f64> = match family {
        ScalarFamily::Exp | ScalarFamily::ExpHalf => Box::new(move |w: f64| {
            let fa = (alpha * a).exp();
            let fb = (alpha * b).exp();
            (1.0 - w) * fa + w * fb - (alpha * ((1.0 - w) * a + w * b)).exp()
        }),
        ScalarFamily::Power | ScalarFamily::PowerHalf => Box::new(move |w: f64| {
            let aw = (1.0 - w) * a.powf(alpha) + w * b.powf(alpha);
            let gw = a.powf(1.0 - w) * b.powf(w);
            aw - gw.powf(alpha)
        }),
        ScalarFamily::KittanehManasrah | ScalarFamily::AmGm => Box::new(move |w: f64| {
            (1.0 - w) * a + w * b - a.powf(1.0 - w) * b.powf(w)
        }),
    };

    let middle = gap(p);
    let (upper, lower) = match family {
        ScalarFamily::Exp | ScalarFamily::Power | ScalarFamily::AmGm => {
            let (cmax, cmin) = ratio_coefficients(p, q);
            (cmax * gap(q), cmin * gap(q))
        }
        ScalarFamily::ExpHalf => {
            let half = gap(0.5);
            (2.0 * p.max(1.0 - p) * half, 2.0 * p.min(1.0 - p) * half)
        }
        ScalarFamily::PowerHalf | ScalarFamily::KittanehManasrah => {
            let e = match family {
                ScalarFamily::KittanehManasrah => 1.0,
                _ => alpha,
            };
            let spread = (b.powf(e / 2.0) - a.powf(e / 2.0)).powi(2);
            (p.max(1.0 - p) * spread, p.min(1.0 - p) * spread)
        }
    };

    let scale = upper.abs().max(middle.abs()).max(lower.abs()).max(1.0);
    let mut report = ReportBuilder::new(law);
    report.info("middle", middle);
    report.info("upper", upper);
    report.info("lower", lower);
    report.info("scale", scale);
    report.scalar_slack("slack_upper", upper - middle, scale, super::tol::SCALAR);
    report.scalar_slack("slack_lower", middle - lower, scale, super::tol::SCALAR);
    Ok(report.finish(digest))
}
