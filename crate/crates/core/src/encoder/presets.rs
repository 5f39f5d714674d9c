use std::fmt;
use std::str::FromStr;

use crate::digits::DigitSystem;
use crate::error::{Error, Result};
use crate::params::FieldParams;

use super::{Alphabet, EncodingMap};

/// DNA letters in the order used by every preset.
pub const DNA: &str = "AGCT";

/// Ready-made DNA encodings.
///
/// | preset | field      | digits                 | blank |
/// |--------|------------|------------------------|-------|
/// | `Dd5`  | Q_5        | 0, 1, 2, 3, 4          | 0     |
/// | `Xk2`  | Q_2(ζ_3)   | 0, 1, ω, 1 + ω         | none  |
/// | `Cyc2` | Q_2(ζ_3)   | 0, 1, ζ, ζ²            | none  |
/// | `Cyc7` | Q_2(ζ_7)   | 0, 1, ξ, ..., ξ⁶       | 0     |
///
/// Letters A, G, C, T take ascending digit indices (from 1 with a blank,
/// from 0 without).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    Dd5,
    Xk2,
    Cyc2,
    Cyc7,
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::Dd5, Preset::Xk2, Preset::Cyc2, Preset::Cyc7];

    pub fn p(self) -> u64 {
        match self {
            Preset::Dd5 => 5,
            _ => 2,
        }
    }

    pub fn f(self) -> usize {
        match self {
            Preset::Dd5 => 1,
            Preset::Xk2 | Preset::Cyc2 => 2,
            Preset::Cyc7 => 3,
        }
    }

    pub fn has_blank(self) -> bool {
        matches!(self, Preset::Dd5 | Preset::Cyc7)
    }

    pub fn name(self) -> &'static str {
        match self {
            Preset::Dd5 => "dd5",
            Preset::Xk2 => "xk2",
            Preset::Cyc2 => "cyc2",
            Preset::Cyc7 => "cyc7",
        }
    }

    pub fn map(self, precision: u32) -> Result<EncodingMap> {
        let params = FieldParams::new(self.p(), self.f(), precision)?;
        let sys = match self {
            Preset::Dd5 => DigitSystem::standard(&params)?,
            Preset::Xk2 => DigitSystem::custom_from_coeffs(&params, &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]])?,
            Preset::Cyc2 | Preset::Cyc7 => DigitSystem::teichmuller(&params),
        };
        EncodingMap::ascending(Alphabet::from_chars(DNA, self.has_blank())?, sys)
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidEncoding(format!("unknown preset {s:?}")))
    }
}
