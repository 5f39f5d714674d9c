use std::sync::Arc;

use crate::digits::DigitSystem;
use crate::error::{Error, Result};
use crate::number::{PadicNumber, ProjectivePoint};

/// z -> (az + b) / (cz + d), defined up to a scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusTransform {
    pub a: PadicNumber,
    pub b: PadicNumber,
    pub c: PadicNumber,
    pub d: PadicNumber,
}

impl MobiusTransform {
    pub fn new(a: PadicNumber, b: PadicNumber, c: PadicNumber, d: PadicNumber) -> Result<Self> {
        let m = MobiusTransform { a, b, c, d };
        if m.det()?.is_zero() {
            return Err(Error::DegenerateTransform);
        }
        Ok(m)
    }

    pub fn from_ints(sys: &Arc<DigitSystem>, [a, b, c, d]: [i64; 4]) -> Result<Self> {
        let n = |v| PadicNumber::from_int(sys, v);
        Self::new(n(a), n(b), n(c), n(d))
    }

    pub fn identity(sys: &Arc<DigitSystem>) -> Self {
        let (z, o) = (PadicNumber::zero(sys), PadicNumber::one(sys));
        MobiusTransform { a: o.clone(), b: z.clone(), c: z, d: o }
    }

    pub fn digit_system(&self) -> &Arc<DigitSystem> {
        self.a.sys()
    }

    pub fn det(&self) -> Result<PadicNumber> {
        self.a.mul(&self.d)?.sub(&self.b.mul(&self.c)?)
    }

    pub fn trace(&self) -> Result<PadicNumber> {
        self.a.add(&self.d)
    }

    /// `self ∘ other`, the matrix product.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let dot = |x: &PadicNumber, y: &PadicNumber, z: &PadicNumber, w: &PadicNumber| -> Result<PadicNumber> {
            x.mul(y)?.add(&z.mul(w)?)
        };
        Ok(MobiusTransform {
            a: dot(&self.a, &other.a, &self.b, &other.c)?,
            b: dot(&self.a, &other.b, &self.b, &other.d)?,
            c: dot(&self.c, &other.a, &self.d, &other.c)?,
            d: dot(&self.c, &other.b, &self.d, &other.d)?,
        })
    }

    /// Adjugate matrix, which acts as the inverse map.
    pub fn adjugate(&self) -> Self {
        MobiusTransform { a: self.d.clone(), b: self.b.neg(), c: self.c.neg(), d: self.a.clone() }
    }

    pub fn apply(&self, z: &ProjectivePoint) -> Result<ProjectivePoint> {
        let (num, den) = match z {
            ProjectivePoint::Infinity => (self.a.clone(), self.c.clone()),
            ProjectivePoint::Finite(z) => (self.a.mul(z)?.add(&self.b)?, self.c.mul(z)?.add(&self.d)?),
        };
        match (num.is_zero(), den.is_zero()) {
            (true, true) => Err(Error::PrecisionExhausted("0/0 in Möbius evaluation".into())),
            (_, true) => Ok(ProjectivePoint::Infinity),
            _ => Ok(ProjectivePoint::Finite(num.div(&den)?)),
        }
    }

    /// The map sending `a`, `b`, `c` to 0, 1, ∞.
    pub fn from_triple(a: &ProjectivePoint, b: &ProjectivePoint, c: &ProjectivePoint) -> Result<Self> {
        if a.coincides(b)? || a.coincides(c)? || b.coincides(c)? {
            return Err(Error::DegenerateTriple);
        }
        let sys = [a, b, c].iter().find_map(|x| x.finite()).ok_or(Error::DegenerateTriple)?.sys().clone();
        let zero = PadicNumber::zero(&sys);
        let one = PadicNumber::one(&sys);
        use ProjectivePoint::{Finite, Infinity};
        let m = match (a, b, c) {
            (Finite(a), Finite(b), Finite(c)) => {
                let bc = b.sub(c)?;
                let ba = b.sub(a)?;
                MobiusTransform { a: bc.clone(), b: a.mul(&bc)?.neg(), c: ba.clone(), d: c.mul(&ba)?.neg() }
            }
            (Infinity, Finite(b), Finite(c)) => MobiusTransform { a: zero, b: b.sub(c)?, c: one, d: c.neg() },
            (Finite(a), Infinity, Finite(c)) => MobiusTransform { a: one.clone(), b: a.neg(), c: one, d: c.neg() },
            (Finite(a), Finite(b), Infinity) => MobiusTransform { a: one, b: a.neg(), c: zero, d: b.sub(a)? },
            _ => return Err(Error::DegenerateTriple),
        };
        if m.det()?.is_zero() {
            return Err(Error::DegenerateTransform);
        }
        Ok(m)
    }
}

/// Image of `d` under the map sending `a`, `b`, `c` to 0, 1, ∞.
pub fn cross_ratio(
    a: &ProjectivePoint,
    b: &ProjectivePoint,
    c: &ProjectivePoint,
    d: &ProjectivePoint,
) -> Result<ProjectivePoint> {
    MobiusTransform::from_triple(a, b, c)?.apply(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::FieldParams;

    fn sys() -> Arc<DigitSystem> {
        DigitSystem::standard(&FieldParams::new(3, 1, 12).unwrap()).unwrap()
    }

    fn pt(s: &Arc<DigitSystem>, v: i64) -> ProjectivePoint {
        PadicNumber::from_int(s, v).into()
    }

    #[test]
    fn basic_maps() {
        let s = sys();
        let inv = MobiusTransform::from_ints(&s, [0, 1, 1, 0]).unwrap();
        assert_eq!(inv.apply(&pt(&s, 0)).unwrap(), ProjectivePoint::Infinity);
        assert_eq!(inv.apply(&ProjectivePoint::Infinity).unwrap(), pt(&s, 0));
        let shift = MobiusTransform::from_ints(&s, [1, 1, 0, 1]).unwrap();
        let image = shift.apply(&pt(&s, 3)).unwrap();
        assert_eq!(image, pt(&s, 4));
        assert_eq!(image.finite().unwrap().valuation().finite(), Some(0));
        let id = MobiusTransform::identity(&s);
        assert_eq!(id.apply(&pt(&s, 17)).unwrap(), pt(&s, 17));
        assert_eq!(MobiusTransform::from_ints(&s, [1, 2, 2, 4]).unwrap_err(), Error::DegenerateTransform);
    }

    #[test]
    fn triples() {
        let s = sys();
        let inf = ProjectivePoint::Infinity;
        let m = MobiusTransform::from_triple(&pt(&s, 0), &pt(&s, 1), &inf).unwrap();
        assert_eq!(m.apply(&pt(&s, 5)).unwrap(), pt(&s, 5));
        let m = MobiusTransform::from_triple(&inf, &pt(&s, 1), &pt(&s, 0)).unwrap();
        assert_eq!(m.apply(&pt(&s, 5)).unwrap(), PadicNumber::from_int(&s, 5).inv().unwrap().into());
        let (a, b, c) = (pt(&s, 2), pt(&s, 3), pt(&s, 7));
        let m = MobiusTransform::from_triple(&a, &b, &c).unwrap();
        assert_eq!(m.apply(&a).unwrap(), pt(&s, 0));
        assert_eq!(m.apply(&b).unwrap(), pt(&s, 1));
        assert_eq!(m.apply(&c).unwrap(), inf);
        assert_eq!(MobiusTransform::from_triple(&a, &a, &c).unwrap_err(), Error::DegenerateTriple);
    }

    #[test]
    fn cross_ratio_values() {
        let s = sys();
        let inf = ProjectivePoint::Infinity;
        let lam = pt(&s, 10);
        assert_eq!(cross_ratio(&pt(&s, 0), &pt(&s, 1), &inf, &lam).unwrap(), lam);
        assert_eq!(cross_ratio(&pt(&s, 0), &pt(&s, 1), &inf, &inf).unwrap(), inf);
        // (5-2)(3-7) / ((5-7)(3-2)) = 6
        let r = cross_ratio(&pt(&s, 2), &pt(&s, 3), &pt(&s, 7), &pt(&s, 5)).unwrap();
        assert!(r.finite().unwrap().agrees_to(&PadicNumber::from_int(&s, 6), 12).unwrap());
    }

    #[test]
    fn composition_and_adjugate() {
        let s = sys();
        let m = MobiusTransform::from_ints(&s, [2, 1, 1, 1]).unwrap();
        let n = MobiusTransform::from_ints(&s, [1, 3, 0, 1]).unwrap();
        let z = pt(&s, 4);
        let lhs = m.compose(&n).unwrap().apply(&z).unwrap();
        let rhs = m.apply(&n.apply(&z).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let back = m.adjugate().apply(&m.apply(&z).unwrap()).unwrap();
        assert_eq!(back, z);
    }
}
