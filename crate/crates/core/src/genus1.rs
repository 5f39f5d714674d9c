//! Genus one: hyperbolic Möbius maps, Tate curves and the Legendre family.

use std::sync::Arc;

use serde::Serialize;

use crate::digits::DigitSystem;
use crate::error::{Error, Result};
use crate::json::{to_json, PadicJson};
use crate::moduli::{MobiusTransform, PuncturedLine};
use crate::number::{PadicNumber, ProjectivePoint};
use crate::ok::Valuation;

/// v_p(2).
pub fn v2(p: u64) -> i64 {
    i64::from(p == 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TransformClass {
    pub hyperbolic: bool,
    /// `None` when the trace is zero.
    pub v_trace: Option<i64>,
    pub v_det: i64,
    pub translation_length: u64,
}

/// Hyperbolic iff 2 v(tr) < v(det): the eigenvalues then have valuations
/// v(tr) and v(det) - v(tr), and the axis is translated by their difference.
pub fn classify_transform(m: &MobiusTransform) -> Result<TransformClass> {
    let v_det = match m.det()?.valuation() {
        Valuation::Finite(v) => v,
        Valuation::BeyondPrecision { .. } => {
            return Err(Error::PrecisionExhausted("determinant vanishes within precision".into()))
        }
    };
    let tr = m.trace()?;
    let v_trace = match tr.valuation() {
        Valuation::Finite(v) => Some(v),
        Valuation::BeyondPrecision { at_least } => {
            if 2 * at_least >= v_det {
                None
            } else {
                return Err(Error::PrecisionExhausted("trace valuation is undetermined".into()));
            }
        }
    };
    let hyperbolic = v_trace.is_some_and(|vt| 2 * vt < v_det);
    let translation_length = match v_trace {
        Some(vt) if hyperbolic => (v_det - 2 * vt) as u64,
        _ => 0,
    };
    Ok(TransformClass { hyperbolic, v_trace, v_det, translation_length })
}

pub fn translation_length(m: &MobiusTransform) -> Result<u64> {
    Ok(classify_transform(m)?.translation_length)
}

/// z -> c z.
pub fn scaling(c: &PadicNumber) -> Result<MobiusTransform> {
    let sys = c.sys();
    MobiusTransform::new(c.clone(), PadicNumber::zero(sys), PadicNumber::zero(sys), PadicNumber::one(sys))
}

/// z -> -1 / ((1 - c) z - 1). Both trace and determinant are units when
/// |c| < 1 and p is odd, so this map is not hyperbolic.
pub fn gamma_c(c: &PadicNumber) -> Result<MobiusTransform> {
    let sys = c.sys();
    let one = PadicNumber::one(sys);
    MobiusTransform::new(PadicNumber::zero(sys), one.neg(), one.sub(c)?, one.neg())
}

/// K^× / <z -> c z>, whose reduction graph is a loop of length v(c).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TateCurve {
    pub c: PadicNumber,
    pub loop_length: u64,
}

impl TateCurve {
    pub fn generator(&self) -> Result<MobiusTransform> {
        scaling(&self.c)
    }
}

pub fn tate_quotient(c: &PadicNumber) -> Result<TateCurve> {
    match c.valuation() {
        Valuation::BeyondPrecision { .. } => Err(Error::ZeroParameter),
        Valuation::Finite(v) if v <= 0 => Err(Error::NotInUnitBall),
        Valuation::Finite(v) => Ok(TateCurve { c: c.clone(), loop_length: v as u64 }),
    }
}

/// z_0, M(z_0), ..., M^steps(z_0). Fails once a finite z_t has |v(z_t)|
/// of at least N, where it can no longer be told apart from 0 or ∞.
pub fn iterate_orbit(m: &MobiusTransform, z0: &ProjectivePoint, steps: usize) -> Result<Vec<ProjectivePoint>> {
    let n = m.digit_system().params().precision() as i64;
    let check = |t: usize, z: &ProjectivePoint| -> Result<()> {
        if let Some(x) = z.finite() {
            if let Valuation::Finite(v) = x.valuation() {
                if v.abs() >= n {
                    return Err(Error::PrecisionExhausted(format!("v(z_{t}) = {v} reaches precision {n}")));
                }
            }
        }
        Ok(())
    };
    check(0, z0)?;
    let mut out = vec![z0.clone()];
    for t in 1..=steps {
        let z = m.apply(&out[t - 1])?;
        check(t, &z)?;
        out.push(z);
    }
    Ok(out)
}

/// Punctures {0, 1, ∞, z_t} for each point of an orbit, labelled
/// "0", "1", "inf", "z".
pub fn orbit_series(orbit: &[ProjectivePoint], sys: &Arc<DigitSystem>) -> Result<Vec<PuncturedLine>> {
    orbit
        .iter()
        .map(|z| {
            PuncturedLine::new(vec![
                ("0".into(), PadicNumber::zero(sys).into()),
                ("1".into(), PadicNumber::one(sys).into()),
                ("inf".into(), ProjectivePoint::Infinity),
                ("z".into(), z.clone()),
            ])
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LegendreJ {
    pub value: PadicNumber,
    pub valuation: Valuation,
}

/// j = 2^8 (λ² - λ + 1)³ / (λ² (λ - 1)²). The valuation is assembled from
/// the valuations of the factors so no digits are lost to cancellation.
pub fn legendre_j(lambda: &PadicNumber) -> Result<LegendreJ> {
    let sys = lambda.sys();
    let one = PadicNumber::one(sys);
    let lm1 = lambda.sub(&one)?;
    let (Valuation::Finite(v_l), Valuation::Finite(v_lm1)) = (lambda.valuation(), lm1.valuation()) else {
        return Err(Error::DegenerateLambda);
    };
    let poly = lambda.mul(lambda)?.sub(lambda)?.add(&one)?;
    let two_8 = PadicNumber::from_int(sys, 256);
    let num = two_8.mul(&poly.pow(3)?)?;
    let den = lambda.mul(lambda)?.mul(&lm1.mul(&lm1)?)?;
    let value = num.div(&den)?;
    let rest = 8 * v2(sys.params().p()) - 2 * v_l - 2 * v_lm1;
    let valuation = match poly.valuation() {
        Valuation::Finite(v) => Valuation::Finite(rest + 3 * v),
        Valuation::BeyondPrecision { at_least } => Valuation::BeyondPrecision { at_least: rest + 3 * at_least },
    };
    Ok(LegendreJ { value, valuation })
}

/// Interior edge length of T({0, 1, λ, ∞}), read off the dendrogram.
pub fn legendre_ell(lambda: &PadicNumber) -> Result<i64> {
    let sys = lambda.sys();
    if lambda.is_zero() || lambda.coincides(&PadicNumber::one(sys))? {
        return Err(Error::DegenerateLambda);
    }
    if lambda.valuation().finite().is_some_and(|v| v < 0) {
        return Err(Error::PreconditionViolated("|λ| > 1".into()));
    }
    let line = PuncturedLine::new(vec![
        ("0".into(), PadicNumber::zero(sys).into()),
        ("1".into(), PadicNumber::one(sys).into()),
        ("lambda".into(), lambda.clone().into()),
        ("inf".into(), ProjectivePoint::Infinity),
    ])?;
    let tree = crate::dendrogram::LevelTree::from(&line.pi_map()?);
    Ok(tree.interior_edges().first().map_or(0, |e| e.length))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TateReport {
    pub p: u64,
    pub f: usize,
    pub lambda: PadicJson,
    pub v_lambda_minus_1: i64,
    /// `None` when j vanishes within precision.
    pub v_j: Option<i64>,
    pub ell: i64,
    pub tate: bool,
}

/// Decides whether y² = x(x - 1)(x - λ) is a Tate curve, for |λ| = 1, by
/// both |λ - 1| < |2|² and |j| > |2|⁴, and checks the two agree with each
/// other and with ℓ > 2 v(2).
pub fn is_tate_legendre(lambda: &PadicNumber) -> Result<TateReport> {
    let sys = lambda.sys();
    let params = sys.params();
    match lambda.valuation() {
        Valuation::Finite(0) => {}
        _ => return Err(Error::PreconditionViolated("|λ| must be 1".into())),
    }
    let lm1 = lambda.sub(&PadicNumber::one(sys))?;
    let v_lm1 = match lm1.valuation() {
        Valuation::Finite(v) => v,
        Valuation::BeyondPrecision { .. } => {
            return Err(Error::PrecisionExhausted("λ - 1 vanishes within precision".into()))
        }
    };
    let w = v2(params.p());
    let by_lambda = v_lm1 > 2 * w;
    let j = legendre_j(lambda)?;
    let by_j = match j.valuation {
        Valuation::Finite(v) => v < 4 * w,
        Valuation::BeyondPrecision { at_least } if at_least >= 4 * w => false,
        Valuation::BeyondPrecision { .. } => return Err(Error::PrecisionExhausted("v(j) is undetermined".into())),
    };
    let ell = legendre_ell(lambda)?;
    let by_tree = ell > 2 * w;
    if by_lambda != by_j || by_lambda != by_tree {
        return Err(Error::InternalInconsistency(format!(
            "λ-side {by_lambda}, j-side {by_j}, tree {by_tree} for v(λ-1) = {v_lm1}"
        )));
    }
    Ok(TateReport {
        p: params.p(),
        f: params.f(),
        lambda: to_json(lambda),
        v_lambda_minus_1: v_lm1,
        v_j: j.valuation.finite(),
        ell,
        tate: by_lambda,
    })
}
