//! Residue systems and digit expansions x = sum a_v p^v.

use std::sync::Arc;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::ok::OkElem;
use crate::params::{FieldParams, FqElem};

/// Teichmüller representative of `r`: the unique t = r (mod p) with t^q = t.
///
/// The map t -> t^q gains one correct digit per application on a residue
/// class, so N iterations from any lift reach the fixed point mod p^N.
pub fn teichmuller_lift(r: &FqElem, params: &Arc<FieldParams>) -> OkElem {
    let q = BigUint::from(params.q());
    let mut t = OkElem::lift(params, r);
    for _ in 0..=params.precision() {
        let next = t.pow(&q);
        if next == t {
            break;
        }
        t = next;
    }
    t
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DigitKind {
    Teichmuller,
    Standard,
    Custom,
}

impl DigitKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DigitKind::Teichmuller => "teichmuller",
            DigitKind::Standard => "standard",
            DigitKind::Custom => "custom",
        }
    }
}

/// A complete system of representatives of F_q in O_K, indexed 0..q with
/// index 0 the digit 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitSystem {
    kind: DigitKind,
    params: Arc<FieldParams>,
    digits: Vec<OkElem>,
    /// residue key -> digit index
    by_residue: Vec<usize>,
}

impl DigitSystem {
    /// `[0, ζ^0, ζ^1, ..., ζ^{q-2}]` with ζ the Teichmüller lift of the
    /// smallest generator of F_q^x.
    pub fn teichmuller(params: &Arc<FieldParams>) -> Arc<Self> {
        let zeta = teichmuller_lift(&params.residue_generator(), params);
        let mut digits = Vec::with_capacity(params.q() as usize);
        digits.push(OkElem::zero(params));
        let mut power = OkElem::one(params);
        for _ in 0..params.q() - 1 {
            digits.push(power.clone());
            power = power.mul(&zeta).expect("same params");
        }
        Self::build(DigitKind::Teichmuller, params, digits).expect("Teichmüller digits form a residue system")
    }

    /// `[0, 1, ..., p-1]`; only for f = 1.
    pub fn standard(params: &Arc<FieldParams>) -> Result<Arc<Self>> {
        if params.f() != 1 {
            return Err(Error::InvalidDigitSystem("standard digits require residue degree 1".into()));
        }
        let digits = (0..params.p()).map(|d| OkElem::from_int(params, d as i64)).collect();
        Self::build(DigitKind::Standard, params, digits)
    }

    pub fn custom(params: &Arc<FieldParams>, digits: Vec<OkElem>) -> Result<Arc<Self>> {
        Self::build(DigitKind::Custom, params, digits)
    }

    /// Custom digits given as power-basis coordinate vectors.
    pub fn custom_from_coeffs(params: &Arc<FieldParams>, coeffs: &[Vec<i64>]) -> Result<Arc<Self>> {
        let digits =
            coeffs.iter().map(|c| OkElem::from_coeffs(params, c.iter().copied())).collect::<Result<Vec<_>>>()?;
        Self::custom(params, digits)
    }

    pub fn of_kind(kind: DigitKind, params: &Arc<FieldParams>) -> Result<Arc<Self>> {
        match kind {
            DigitKind::Teichmuller => Ok(Self::teichmuller(params)),
            DigitKind::Standard => Self::standard(params),
            DigitKind::Custom => Err(Error::InvalidDigitSystem("custom digits must be supplied".into())),
        }
    }

    fn build(kind: DigitKind, params: &Arc<FieldParams>, digits: Vec<OkElem>) -> Result<Arc<Self>> {
        let q = params.q() as usize;
        if digits.len() != q {
            return Err(Error::InvalidDigitSystem(format!("expected {q} digits, got {}", digits.len())));
        }
        if digits.iter().any(|d| d.params() != params) {
            return Err(Error::ParamMismatch);
        }
        if !digits[0].is_zero() {
            return Err(Error::InvalidDigitSystem("digit 0 must be 0".into()));
        }
        let mut by_residue = vec![usize::MAX; q];
        for (i, d) in digits.iter().enumerate() {
            let key = d.residue().key(params.p());
            if by_residue[key] != usize::MAX {
                return Err(Error::InvalidDigitSystem(format!(
                    "digits {} and {i} share a residue class",
                    by_residue[key]
                )));
            }
            by_residue[key] = i;
        }
        // q distinct residues among q slots: the system is complete
        Ok(Arc::new(DigitSystem { kind, params: params.clone(), digits, by_residue }))
    }

    pub fn kind(&self) -> DigitKind {
        self.kind
    }

    pub fn params(&self) -> &Arc<FieldParams> {
        &self.params
    }

    pub fn digits(&self) -> &[OkElem] {
        &self.digits
    }

    pub fn digit(&self, index: usize) -> &OkElem {
        &self.digits[index]
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Index of the digit congruent to `x` mod p.
    pub fn index_of_residue(&self, x: &OkElem) -> usize {
        self.by_residue[x.residue().key(self.params.p())]
    }

    /// Greedy expansion of `x` into N digit indices, lowest exponent first.
    pub fn to_digits(&self, x: &OkElem) -> Vec<usize> {
        let n = self.params.precision() as usize;
        let mut out = Vec::with_capacity(n);
        let mut rest = x.clone();
        for _ in 0..n {
            if rest.is_zero() {
                out.resize(n, 0);
                break;
            }
            let a = self.index_of_residue(&rest);
            out.push(a);
            rest = rest.sub(&self.digits[a]).expect("same params").div_p_pow(1);
        }
        out
    }

    /// Evaluates sum d_i p^i mod p^N. Indices beyond N are ignored.
    pub fn from_digits(&self, indices: &[usize]) -> Result<OkElem> {
        let n = self.params.precision() as usize;
        let p = OkElem::from_int(&self.params, self.params.p() as i64);
        let mut acc = OkElem::zero(&self.params);
        for &i in indices.iter().take(n).rev() {
            let d =
                self.digits.get(i).ok_or_else(|| Error::InvalidDigitSystem(format!("digit index {i} out of range")))?;
            acc = acc.mul(&p)?.add(d)?;
        }
        Ok(acc)
    }
}
