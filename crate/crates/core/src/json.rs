//! JSON wire format for p-adic numbers.
//!
//! ```json
//! {"p": 2, "f": 2, "precision": 8, "digit_system": "custom",
//!  "custom_digits": [[0,0],[1,0],[0,1],[1,1]], "shift": 0, "digits": [1,2,0,0,0,0,0,0]}
//! ```
//! Digits are indices into the digit system, lowest exponent first.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::digits::{DigitKind, DigitSystem};
use crate::error::{Error, Result};
use crate::number::PadicNumber;
use crate::ok::OkElem;
use crate::params::FieldParams;

/// A coordinate of a custom digit: a JSON integer when it fits in a u64,
/// otherwise a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(u64),
    Big(String),
}

impl Coeff {
    fn to_bigint(&self) -> Result<BigInt> {
        match self {
            Coeff::Int(n) => Ok(BigInt::from(*n)),
            Coeff::Big(s) => s.parse().map_err(|_| Error::Format(format!("bad coefficient {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PadicJson {
    pub p: u64,
    pub f: usize,
    pub precision: u32,
    pub digit_system: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub custom_digits: Option<Vec<Vec<Coeff>>>,
    pub shift: i64,
    pub digits: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelledPadicJson {
    pub label: String,
    #[serde(flatten)]
    pub number: PadicJson,
}

fn coeff_of(c: &num_bigint::BigUint) -> Coeff {
    match u64::try_from(c) {
        Ok(n) => Coeff::Int(n),
        Err(_) => Coeff::Big(c.to_string()),
    }
}

/// Digit-system descriptor as it appears on the wire.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SystemKey {
    pub p: u64,
    pub f: usize,
    pub precision: u32,
    pub kind: String,
    pub custom_digits: Option<Vec<Vec<Coeff>>>,
}

pub fn system_key(sys: &DigitSystem) -> SystemKey {
    let params = sys.params();
    let custom_digits = (sys.kind() == DigitKind::Custom)
        .then(|| sys.digits().iter().map(|d| d.coeffs().iter().map(coeff_of).collect()).collect());
    SystemKey {
        p: params.p(),
        f: params.f(),
        precision: params.precision(),
        kind: sys.kind().as_str().to_string(),
        custom_digits,
    }
}

pub fn to_json(x: &PadicNumber) -> PadicJson {
    let key = system_key(x.sys());
    PadicJson {
        p: key.p,
        f: key.f,
        precision: key.precision,
        digit_system: key.kind,
        custom_digits: key.custom_digits,
        shift: x.shift(),
        digits: x.digits(),
    }
}

/// Builds digit systems on demand and shares them between numbers that use
/// the same descriptor.
#[derive(Default)]
pub struct SystemCache {
    systems: HashMap<SystemKey, Arc<DigitSystem>>,
}

impl SystemCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, sys: Arc<DigitSystem>) {
        self.systems.insert(system_key(&sys), sys);
    }

    pub fn resolve(&mut self, key: &SystemKey) -> Result<Arc<DigitSystem>> {
        if let Some(sys) = self.systems.get(key) {
            return Ok(sys.clone());
        }
        let params = FieldParams::new(key.p, key.f, key.precision)?;
        let sys = match (key.kind.as_str(), &key.custom_digits) {
            ("teichmuller", _) => DigitSystem::teichmuller(&params),
            ("standard", _) => DigitSystem::standard(&params)?,
            ("custom", Some(digits)) => {
                let elems = digits
                    .iter()
                    .map(|c| {
                        let coords = c.iter().map(Coeff::to_bigint).collect::<Result<Vec<_>>>()?;
                        OkElem::from_coeffs(&params, coords)
                    })
                    .collect::<Result<Vec<_>>>()?;
                DigitSystem::custom(&params, elems)?
            }
            ("custom", None) => return Err(Error::Format("custom digit system without custom_digits".into())),
            (other, _) => return Err(Error::Format(format!("unknown digit system {other:?}"))),
        };
        self.systems.insert(key.clone(), sys.clone());
        Ok(sys)
    }

    pub fn number(&mut self, j: &PadicJson) -> Result<PadicNumber> {
        let key = SystemKey {
            p: j.p,
            f: j.f,
            precision: j.precision,
            kind: j.digit_system.clone(),
            custom_digits: j.custom_digits.clone(),
        };
        let sys = self.resolve(&key)?;
        if let Some(&bad) = j.digits.iter().find(|&&d| d >= sys.len()) {
            return Err(Error::Format(format!("digit index {bad} out of range")));
        }
        PadicNumber::from_digits(&sys, j.shift, &j.digits)
    }
}

pub fn from_json(j: &PadicJson) -> Result<PadicNumber> {
    SystemCache::new().number(j)
}
