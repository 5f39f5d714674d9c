use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fq;

/// Largest residue degree accepted by [`FieldParams::new`].
pub const DEFAULT_MAX_DEGREE: usize = 8;

/// The unramified extension K/Q_p of residue degree `f`, truncated to
/// `precision` p-adic digits.
///
/// O_K is modelled as Z_p[x]/(m(x)) where m is the lexicographically smallest
/// monic irreducible polynomial of degree f over F_p, lifted to integer
/// coefficients in [0, p). Since m stays irreducible mod p the extension is
/// unramified and p is a uniformiser.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldParams {
    p: u64,
    f: usize,
    precision: u32,
    modulus: Vec<u64>,
    q: u64,
    p_big: BigUint,
    p_pow_n: BigUint,
}

impl FieldParams {
    pub fn new(p: u64, f: usize, precision: u32) -> Result<Arc<Self>> {
        Self::with_max_degree(p, f, precision, DEFAULT_MAX_DEGREE)
    }

    pub fn with_max_degree(p: u64, f: usize, precision: u32, max_degree: usize) -> Result<Arc<Self>> {
        if !fq::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::InvalidParams(format!("prime {p} is too large")));
        }
        if f == 0 || f > max_degree {
            return Err(Error::UnsupportedDegree { degree: f, max: max_degree });
        }
        if precision == 0 {
            return Err(Error::InvalidParams("precision must be at least 1".into()));
        }
        let q = (p as u128)
            .checked_pow(f as u32)
            .filter(|&q| q < (1u128 << 63))
            .ok_or_else(|| Error::InvalidParams(format!("{p}^{f} is too large")))? as u64;
        let modulus = fq::smallest_irreducible(p, f);
        let p_big = BigUint::from(p);
        let p_pow_n = p_big.pow(precision);
        Ok(Arc::new(FieldParams { p, f, precision, modulus, q, p_big, p_pow_n }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Residue degree.
    pub fn f(&self) -> usize {
        self.f
    }

    /// Ramification index; every field built here is unramified.
    pub fn e(&self) -> u32 {
        1
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// Monic modulus polynomial, low degree first (length f + 1).
    pub fn modulus_poly(&self) -> &[u64] {
        &self.modulus
    }

    pub(crate) fn p_big(&self) -> &BigUint {
        &self.p_big
    }

    /// p^N as a big integer.
    pub fn p_pow_n(&self) -> &BigUint {
        &self.p_pow_n
    }

    pub(crate) fn p_pow(&self, k: u32) -> BigUint {
        if k == 0 {
            BigUint::one()
        } else {
            self.p_big.pow(k)
        }
    }

    /// All elements of F_q in lexicographic coefficient order.
    pub fn residue_field_elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.q as u128).map(move |k| FqElem { coeffs: fq::tuple_from_rank(k, self.p, self.f) })
    }

    /// Smallest generator of F_q^x.
    pub fn residue_generator(&self) -> FqElem {
        FqElem { coeffs: fq::smallest_generator(self.p, self.f, &self.modulus) }
    }

    pub fn fq_mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        FqElem::from_poly(fq::mulmod(&a.coeffs, &b.coeffs, &self.modulus, self.p), self.f)
    }

    pub fn fq_pow(&self, a: &FqElem, exp: u128) -> FqElem {
        FqElem::from_poly(fq::powmod(&a.coeffs, exp, &self.modulus, self.p), self.f)
    }

    pub(crate) fn fq_inv(&self, a: &FqElem) -> Option<FqElem> {
        if a.is_zero() {
            return None;
        }
        Some(self.fq_pow(a, self.q as u128 - 2))
    }
}

impl fmt::Debug for FieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldParams")
            .field("p", &self.p)
            .field("f", &self.f)
            .field("precision", &self.precision)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Element of the residue field F_q in the power basis over F_p.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem {
    coeffs: Vec<u64>,
}

impl FqElem {
    pub fn new(coeffs: Vec<u64>) -> Self {
        FqElem { coeffs }
    }

    fn from_poly(mut poly: Vec<u64>, f: usize) -> Self {
        poly.resize(f, 0);
        FqElem { coeffs: poly }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Dense index in [0, q), coefficient c_i weighted by p^i.
    pub(crate) fn key(&self, p: u64) -> usize {
        self.coeffs.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize)
    }
}
