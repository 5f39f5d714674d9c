use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::params::{FieldParams, FqElem};

/// p-adic valuation of an element known to finite precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    /// Every digit inside the precision window vanishes; the true valuation
    /// is at least `at_least` (possibly the element is exactly zero).
    BeyondPrecision {
        at_least: i64,
    },
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::BeyondPrecision { .. } => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Valuation::Finite(_))
    }

    pub fn expect_finite(self, what: &str) -> Result<i64> {
        self.finite().ok_or_else(|| Error::PrecisionExhausted(format!("{what} vanishes within precision")))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::BeyondPrecision { at_least } => write!(f, ">={at_least}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
    /// Unary; the second operand is ignored.
    Neg,
}

/// Element of O_K / p^N O_K in the lifted power basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OkElem {
    params: Arc<FieldParams>,
    coeffs: Vec<BigUint>,
}

impl OkElem {
    pub fn zero(params: &Arc<FieldParams>) -> Self {
        OkElem { params: params.clone(), coeffs: vec![BigUint::zero(); params.f()] }
    }

    pub fn one(params: &Arc<FieldParams>) -> Self {
        Self::from_int(params, 1)
    }

    pub fn from_int(params: &Arc<FieldParams>, n: i64) -> Self {
        Self::from_bigint(params, &BigInt::from(n))
    }

    pub fn from_bigint(params: &Arc<FieldParams>, n: &BigInt) -> Self {
        let mut out = Self::zero(params);
        out.coeffs[0] = reduce_signed(n, params.p_pow_n());
        out
    }

    /// Builds an element from its power-basis coordinates; each is reduced
    /// mod p^N. Missing high coordinates are zero.
    pub fn from_coeffs<I, T>(params: &Arc<FieldParams>, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut out = Self::zero(params);
        for (i, c) in coeffs.into_iter().enumerate() {
            if i >= params.f() {
                return Err(Error::InvalidParams(format!("too many coordinates for degree {}", params.f())));
            }
            out.coeffs[i] = reduce_signed(&c.into(), params.p_pow_n());
        }
        Ok(out)
    }

    /// Lift of a residue-field element with coordinates in [0, p).
    pub fn lift(params: &Arc<FieldParams>, r: &FqElem) -> Self {
        let coeffs = r.coeffs().iter().map(|&c| BigUint::from(c)).collect();
        OkElem { params: params.clone(), coeffs }
    }

    /// The generator x of the power basis.
    pub fn basis_generator(params: &Arc<FieldParams>) -> Self {
        let mut out = Self::zero(params);
        if params.f() > 1 {
            out.coeffs[1] = BigUint::one();
        }
        out
    }

    pub fn params(&self) -> &Arc<FieldParams> {
        &self.params
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.params, &other.params) || self.params == other.params {
            Ok(())
        } else {
            Err(Error::ParamMismatch)
        }
    }

    pub fn ring_op(&self, other: &Self, op: RingOp) -> Result<Self> {
        match op {
            RingOp::Add => self.add(other),
            RingOp::Sub => self.sub(other),
            RingOp::Mul => self.mul(other),
            RingOp::Neg => Ok(self.neg()),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let m = self.params.p_pow_n();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| {
                let s = a + b;
                if &s >= m {
                    s - m
                } else {
                    s
                }
            })
            .collect();
        Ok(OkElem { params: self.params.clone(), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let m = self.params.p_pow_n();
        let coeffs =
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| if a >= b { a - b } else { m - b + a }).collect();
        Ok(OkElem { params: self.params.clone(), coeffs })
    }

    pub fn neg(&self) -> Self {
        let m = self.params.p_pow_n();
        let coeffs = self.coeffs.iter().map(|a| if a.is_zero() { BigUint::zero() } else { m - a }).collect();
        OkElem { params: self.params.clone(), coeffs }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = self.params.f();
        let m = self.params.p_pow_n();
        if f == 1 {
            let c = (&self.coeffs[0] * &other.coeffs[0]) % m;
            return Ok(OkElem { params: self.params.clone(), coeffs: vec![c] });
        }
        let mut prod = vec![BigUint::zero(); 2 * f - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        // reduce by the monic modulus: x^f = -(m_0 + ... + m_{f-1} x^{f-1})
        let modulus = self.params.modulus_poly();
        for d in (f..2 * f - 1).rev() {
            let top = std::mem::take(&mut prod[d]) % m;
            if top.is_zero() {
                continue;
            }
            for (i, &mc) in modulus[..f].iter().enumerate() {
                if mc != 0 {
                    let t = (&top * mc) % m;
                    let slot = &mut prod[d - f + i];
                    *slot %= m;
                    if *slot >= t {
                        *slot -= &t;
                    } else {
                        *slot = m - &t + &*slot;
                    }
                }
            }
        }
        prod.truncate(f);
        let coeffs = prod.into_iter().map(|c| c % m).collect();
        Ok(OkElem { params: self.params.clone(), coeffs })
    }

    pub fn pow(&self, exp: &BigUint) -> Self {
        let mut acc = Self::one(&self.params);
        let bits = exp.bits();
        for i in (0..bits).rev() {
            acc = acc.mul(&acc).expect("same params");
            if exp.bit(i) {
                acc = acc.mul(self).expect("same params");
            }
        }
        acc
    }

    pub fn pow_u64(&self, exp: u64) -> Self {
        self.pow(&BigUint::from(exp))
    }

    /// Reduction mod p.
    pub fn residue(&self) -> FqElem {
        let p = self.params.p_big();
        FqElem::new(self.coeffs.iter().map(|c| (c % p).to_u64().expect("residue below p")).collect())
    }

    pub fn is_unit(&self) -> bool {
        !self.residue().is_zero()
    }

    /// v_p of the element; the power basis is an integral basis with unit
    /// discriminant, so this is the minimum over the coordinates.
    pub fn valuation(&self) -> Valuation {
        let n = self.params.precision() as i64;
        let v = self.coeffs.iter().filter(|c| !c.is_zero()).map(|c| valuation_of_int(c, self.params.p_big())).min();
        match v {
            Some(v) => Valuation::Finite(v as i64),
            None => Valuation::BeyondPrecision { at_least: n },
        }
    }

    /// Inverse of a unit by Newton iteration b <- b(2 - ab), starting from the
    /// residue-field inverse. Each step doubles the number of correct digits.
    pub fn invert_unit(&self) -> Result<Self> {
        let r_inv = self.params.fq_inv(&self.residue()).ok_or(Error::NotAUnit)?;
        let two = Self::from_int(&self.params, 2);
        let mut b = Self::lift(&self.params, &r_inv);
        let mut correct = 1u32;
        loop {
            let ab = self.mul(&b)?;
            if ab.is_one() {
                return Ok(b);
            }
            b = b.mul(&two.sub(&ab)?)?;
            correct = correct.saturating_mul(2);
            if correct > 2 * self.params.precision() + 2 {
                // cannot happen for a unit; guards against an arithmetic bug
                return Err(Error::NotAUnit);
            }
        }
    }

    /// Multiplies by p^k (mod p^N).
    pub fn mul_p_pow(&self, k: u32) -> Self {
        if k >= self.params.precision() {
            return Self::zero(&self.params);
        }
        let factor = self.params.p_pow(k);
        let m = self.params.p_pow_n();
        let coeffs = self.coeffs.iter().map(|c| (c * &factor) % m).collect();
        OkElem { params: self.params.clone(), coeffs }
    }

    /// Exact division by p^k of an element divisible by p^k; the freed high
    /// digits are zero.
    pub(crate) fn div_p_pow(&self, k: u32) -> Self {
        if k == 0 {
            return self.clone();
        }
        let factor = self.params.p_pow(k);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let (q, r) = c.div_rem(&factor);
                debug_assert!(r.is_zero());
                q
            })
            .collect();
        OkElem { params: self.params.clone(), coeffs }
    }
}

impl fmt::Debug for OkElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OkElem{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

pub(crate) fn reduce_signed(n: &BigInt, m: &BigUint) -> BigUint {
    let mi = BigInt::from_biguint(Sign::Plus, m.clone());
    n.mod_floor(&mi).to_biguint().expect("non-negative after mod_floor")
}

pub(crate) fn valuation_of_int(n: &BigUint, p: &BigUint) -> u64 {
    debug_assert!(!n.is_zero());
    let mut v = 0;
    let mut x = n.clone();
    loop {
        let (q, r) = x.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        x = q;
    }
}
