use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use padico::encoder::{Alphabet, EncodingMap, Preset};
use padico::{DigitKind, DigitSystem, Error, FieldParams, Result};

/// Field, digits and encoding options shared by all subcommands.
#[derive(clap::Args, Debug, Clone)]
pub struct Config {
    /// Residue characteristic
    #[arg(short = 'p', long = "p", global = true, default_value_t = 2)]
    pub p: u64,

    /// Residue degree of the unramified extension
    #[arg(long, global = true, default_value_t = 1)]
    pub f: usize,

    /// Number of significant digits N
    #[arg(long, global = true, env = "PADICO_PRECISION", default_value_t = 64)]
    pub precision: u32,

    /// Digit system: teichmuller, standard or custom:<file>
    #[arg(long, global = true, default_value = "teichmuller")]
    pub digits: String,

    /// DNA preset (dd5, xk2, cyc2, cyc7); sets p, f and digits
    #[arg(long, global = true)]
    pub preset: Option<Preset>,

    /// Pretty-print JSON output
    #[arg(long, global = true)]
    pub pretty: bool,

    /// Write output to this file instead of stdout
    #[arg(short = 'o', long, global = true)]
    pub output: Option<PathBuf>,
}

impl Config {
    pub fn digit_system(&self) -> Result<Arc<DigitSystem>> {
        if let Some(preset) = self.preset {
            return Ok(preset.map(self.precision)?.digit_system().clone());
        }
        let params = FieldParams::new(self.p, self.f, self.precision)?;
        match self.digits.as_str() {
            "teichmuller" => DigitSystem::of_kind(DigitKind::Teichmuller, &params),
            "standard" => DigitSystem::of_kind(DigitKind::Standard, &params),
            other => {
                let Some(path) = other.strip_prefix("custom:") else {
                    return Err(Error::Format(format!("unknown digit system {other:?}")));
                };
                let text = fs::read_to_string(path).map_err(|e| Error::Format(format!("{path}: {e}")))?;
                let coeffs: Vec<Vec<i64>> =
                    serde_json::from_str(&text).map_err(|e| Error::Format(format!("{path}: {e}")))?;
                DigitSystem::custom_from_coeffs(&params, &coeffs)
            }
        }
    }

    /// Presets bring their own alphabet; otherwise letters of `alphabet` go
    /// to ascending digits.
    pub fn encoding_map(&self, alphabet: &str, blank: bool) -> Result<EncodingMap> {
        match self.preset {
            Some(preset) => preset.map(self.precision),
            None => EncodingMap::ascending(Alphabet::from_chars(alphabet, blank)?, self.digit_system()?),
        }
    }

    pub fn render(&self, value: &serde_json::Value) -> String {
        let mut out = if self.pretty { serde_json::to_string_pretty(value) } else { serde_json::to_string(value) }
            .expect("json value");
        out.push('\n');
        out
    }
}
