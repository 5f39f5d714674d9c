use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::digits::DigitSystem;
use crate::error::{Error, Result};
use crate::ok::{valuation_of_int, OkElem, Valuation};
use crate::params::FieldParams;

/// Element of K with N significant digits: `p^shift * mantissa` where the
/// mantissa is a unit of O_K / p^N, or zero.
///
/// Arithmetic treats operands as exact and rounds results to N significant
/// digits. A zero keeps its `shift` as the exponent up to which it is known
/// to vanish (value is 0 mod p^(shift + N)).
#[derive(Clone)]
pub struct PadicNumber {
    sys: Arc<DigitSystem>,
    shift: i64,
    mantissa: OkElem,
}

impl PadicNumber {
    pub fn zero(sys: &Arc<DigitSystem>) -> Self {
        Self::zero_with_shift(sys, 0)
    }

    pub fn zero_with_shift(sys: &Arc<DigitSystem>, shift: i64) -> Self {
        PadicNumber { sys: sys.clone(), shift, mantissa: OkElem::zero(sys.params()) }
    }

    pub fn one(sys: &Arc<DigitSystem>) -> Self {
        Self::from_int(sys, 1)
    }

    /// p^shift * x, normalized.
    pub fn from_ok_shifted(x: OkElem, shift: i64, sys: &Arc<DigitSystem>) -> Self {
        match x.valuation() {
            Valuation::Finite(k) => PadicNumber { sys: sys.clone(), shift: shift + k, mantissa: x.div_p_pow(k as u32) },
            Valuation::BeyondPrecision { .. } => Self::zero_with_shift(sys, shift),
        }
    }

    pub fn from_ok(x: OkElem, sys: &Arc<DigitSystem>) -> Self {
        Self::from_ok_shifted(x, 0, sys)
    }

    pub fn from_int(sys: &Arc<DigitSystem>, n: i64) -> Self {
        Self::from_bigint(sys, &BigInt::from(n))
    }

    pub fn from_bigint(sys: &Arc<DigitSystem>, n: &BigInt) -> Self {
        Self::from_rational(sys, &BigRational::from_integer(n.clone())).expect("nonzero denominator")
    }

    pub fn from_rational(sys: &Arc<DigitSystem>, r: &BigRational) -> Result<Self> {
        let params = sys.params();
        let num = r.numer();
        let den = r.denom();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero(sys));
        }
        let p = BigInt::from(params.p());
        let (vn, un) = split_p_power(num, &p);
        let (vd, ud) = split_p_power(den, &p);
        let a = OkElem::from_bigint(params, &un);
        let b = OkElem::from_bigint(params, &ud).invert_unit()?;
        Ok(PadicNumber { sys: sys.clone(), shift: vn - vd, mantissa: a.mul(&b)? })
    }

    /// Evaluates `p^shift * sum digits[i] p^i`; at most N digits are read.
    pub fn from_digits(sys: &Arc<DigitSystem>, shift: i64, digits: &[usize]) -> Result<Self> {
        let n = sys.params().precision() as usize;
        if digits.len() > n {
            return Err(Error::Format(format!("{} digits exceed precision {n}", digits.len())));
        }
        let x = sys.from_digits(digits)?;
        Ok(Self::from_ok_shifted(x, shift, sys))
    }

    pub fn sys(&self) -> &Arc<DigitSystem> {
        &self.sys
    }

    pub fn params(&self) -> &Arc<FieldParams> {
        self.sys.params()
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn mantissa(&self) -> &OkElem {
        &self.mantissa
    }

    /// Digit indices of the mantissa, lowest exponent (`shift`) first.
    pub fn digits(&self) -> Vec<usize> {
        self.sys.to_digits(&self.mantissa)
    }

    /// Same value, digits re-expressed in another residue system.
    pub fn with_digit_system(&self, sys: &Arc<DigitSystem>) -> Result<Self> {
        if sys.params() != self.params() {
            return Err(Error::ParamMismatch);
        }
        Ok(PadicNumber { sys: sys.clone(), shift: self.shift, mantissa: self.mantissa.clone() })
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn valuation(&self) -> Valuation {
        if self.is_zero() {
            Valuation::BeyondPrecision { at_least: self.shift + self.params().precision() as i64 }
        } else {
            Valuation::Finite(self.shift)
        }
    }

    /// |x| = p^{-v(x)} as an exact rational.
    pub fn norm(&self) -> Result<BigRational> {
        let v = self.valuation().expect_finite("norm argument")?;
        Ok(p_power(self.params().p(), -v))
    }

    /// Value in O_K / p^N; fails for negative valuation.
    pub fn to_ok(&self) -> Result<OkElem> {
        if self.is_zero() {
            return Ok(OkElem::zero(self.params()));
        }
        if self.shift < 0 {
            return Err(Error::NotIntegral);
        }
        let n = self.params().precision() as i64;
        Ok(self.mantissa.mul_p_pow(self.shift.min(n) as u32))
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.params() == other.params() {
            Ok(())
        } else {
            Err(Error::ParamMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(PadicNumber { sys: self.sys.clone(), ..other.clone() });
        }
        let (lo, hi) = if self.shift <= other.shift { (self, other) } else { (other, self) };
        let gap = hi.shift - lo.shift;
        let n = self.params().precision() as i64;
        if gap >= n {
            return Ok(PadicNumber { sys: self.sys.clone(), ..lo.clone() });
        }
        let sum = lo.mantissa.add(&hi.mantissa.mul_p_pow(gap as u32))?;
        Ok(Self::from_ok_shifted(sum, lo.shift, &self.sys))
    }

    pub fn neg(&self) -> Self {
        PadicNumber { sys: self.sys.clone(), shift: self.shift, mantissa: self.mantissa.neg() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero_with_shift(&self.sys, self.shift + other.shift));
        }
        Ok(PadicNumber {
            sys: self.sys.clone(),
            shift: self.shift + other.shift,
            mantissa: self.mantissa.mul(&other.mantissa)?,
        })
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(PadicNumber { sys: self.sys.clone(), shift: -self.shift, mantissa: self.mantissa.invert_unit()? })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero_with_shift(&self.sys, self.shift - other.shift));
        }
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, exp: i64) -> Result<Self> {
        if exp < 0 {
            return self.inv()?.pow(-exp);
        }
        if self.is_zero() {
            return Ok(if exp == 0 { Self::one(&self.sys) } else { self.clone() });
        }
        Ok(PadicNumber {
            sys: self.sys.clone(),
            shift: self.shift * exp,
            mantissa: self.mantissa.pow(&BigUint::from(exp as u64)),
        })
    }

    /// Whether `self - other` vanishes within precision.
    pub fn coincides(&self, other: &Self) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }

    /// Whether `self ≡ other (mod p^abs)`. Cancellation in a sum leaves the
    /// high digits of the result zero-filled, so values computed along
    /// different routes are compared this way.
    pub fn agrees_to(&self, other: &Self, abs: i64) -> Result<bool> {
        Ok(match self.sub(other)?.valuation() {
            Valuation::Finite(v) => v >= abs,
            Valuation::BeyondPrecision { .. } => true,
        })
    }
}

impl PartialEq for PadicNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.params() != other.params() {
            return false;
        }
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (false, false) => self.shift == other.shift && self.mantissa == other.mantissa,
            _ => false,
        }
    }
}

impl Eq for PadicNumber {}

impl fmt::Debug for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 (mod p^{})", self.shift + self.params().precision() as i64);
        }
        write!(f, "{}^{} * {:?}", self.params().p(), self.shift, self.mantissa)
    }
}

/// A point of P^1(K).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjectivePoint {
    Finite(PadicNumber),
    Infinity,
}

impl ProjectivePoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjectivePoint::Infinity)
    }

    pub fn finite(&self) -> Option<&PadicNumber> {
        match self {
            ProjectivePoint::Finite(x) => Some(x),
            ProjectivePoint::Infinity => None,
        }
    }

    /// Equality within precision.
    pub fn coincides(&self, other: &Self) -> Result<bool> {
        match (self, other) {
            (ProjectivePoint::Infinity, ProjectivePoint::Infinity) => Ok(true),
            (ProjectivePoint::Finite(a), ProjectivePoint::Finite(b)) => a.coincides(b),
            _ => Ok(false),
        }
    }
}

impl From<PadicNumber> for ProjectivePoint {
    fn from(x: PadicNumber) -> Self {
        ProjectivePoint::Finite(x)
    }
}

/// p^e as an exact rational (e may be negative).
pub fn p_power(p: u64, e: i64) -> BigRational {
    let base = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(base)
    } else {
        BigRational::new(BigInt::one(), base)
    }
}

/// Writes n = p^v * u with p not dividing u.
fn split_p_power(n: &BigInt, p: &BigInt) -> (i64, BigInt) {
    let v = valuation_of_int(&n.abs().to_biguint().expect("abs"), &p.to_biguint().expect("p"));
    (v as i64, n / p.pow(v as u32))
}

/// Parses an integer or a fraction "a/b".
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let r = match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| Error::Format(format!("bad number {s:?}")))?;
            let b: BigInt = b.trim().parse().map_err(|_| Error::Format(format!("bad number {s:?}")))?;
            if b.is_zero() {
                return Err(Error::DivisionByZero);
            }
            BigRational::new(a, b)
        }
        None => BigRational::from_integer(s.parse().map_err(|_| Error::Format(format!("bad number {s:?}")))?),
    };
    Ok(r)
}

/// Exact p-adic valuation of a nonzero rational.
pub fn rational_valuation(r: &BigRational, p: u64) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let (vn, _) = split_p_power(r.numer(), &p);
    let (vd, _) = split_p_power(r.denom(), &p);
    Some(vn - vd)
}
