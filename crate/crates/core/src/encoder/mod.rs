//! Strings over a finite alphabet as elements of O_K.
//!
//! An injective assignment of letters to digits sends s_0 s_1 s_2 ... to
//! sum a(s_v) p^v. Two strings sharing exactly n leading letters then differ
//! by an element of valuation n, so the Baire distance p^{-n} is the p-adic
//! norm of the difference.

mod fasta;
mod presets;

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use crate::digits::DigitSystem;
use crate::error::{Error, Result};
use crate::number::{p_power, PadicNumber};
use crate::params::FieldParams;

pub use fasta::{read_fasta, FastaRecord};
pub use presets::Preset;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
    has_blank: bool,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I, has_blank: bool) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].contains(s) {
                return Err(Error::InvalidAlphabet(format!("symbol {s:?} repeated")));
            }
        }
        Ok(Alphabet { symbols, has_blank })
    }

    /// One symbol per character of `chars`.
    pub fn from_chars(chars: &str, has_blank: bool) -> Result<Self> {
        Self::new(chars.chars().map(String::from), has_blank)
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn has_blank(&self) -> bool {
        self.has_blank
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// Smallest f with p^f >= alphabet_size (+1 for a blank).
pub fn min_residue_degree(alphabet_size: usize, p: u64, with_blank: bool) -> usize {
    let needed = alphabet_size as u128 + u128::from(with_blank);
    let mut f = 1;
    let mut q = p as u128;
    while q < needed {
        q *= p as u128;
        f += 1;
    }
    f
}

/// Baire distance p^{-n}, n the length of the longest common prefix; 0 for
/// equal strings.
pub fn baire_distance<T: PartialEq>(s: &[T], t: &[T], p: u64) -> BigRational {
    if s == t {
        return BigRational::zero();
    }
    let n = s.iter().zip(t).take_while(|(a, b)| a == b).count();
    p_power(p, -(n as i64))
}

/// Result of [`EncodingMap::encode`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Encoded {
    pub value: PadicNumber,
    /// Number of digits the input occupied (including word separators).
    pub length: usize,
    /// The input did not fit into N digits and was cut.
    pub truncated: bool,
}

/// Injective assignment of alphabet symbols to digit indices.
#[derive(Clone, Debug)]
pub struct EncodingMap {
    alphabet: Alphabet,
    sys: Arc<DigitSystem>,
    assignment: Vec<usize>,
    lookup: HashMap<String, usize>,
    /// digit index -> symbol index
    inverse: Vec<Option<usize>>,
}

impl EncodingMap {
    pub fn new(alphabet: Alphabet, sys: Arc<DigitSystem>, assignment: Vec<usize>) -> Result<Self> {
        let q = sys.len();
        if assignment.len() != alphabet.len() {
            return Err(Error::InvalidEncoding("one digit per symbol required".into()));
        }
        if alphabet.len() + usize::from(alphabet.has_blank()) > q {
            return Err(Error::InvalidEncoding(format!(
                "{} symbols{} do not fit into {q} digits",
                alphabet.len(),
                if alphabet.has_blank() { " plus blank" } else { "" }
            )));
        }
        let mut inverse = vec![None; q];
        for (i, &d) in assignment.iter().enumerate() {
            if d >= q {
                return Err(Error::InvalidEncoding(format!("digit index {d} out of range")));
            }
            if alphabet.has_blank() && d == 0 {
                return Err(Error::InvalidEncoding("digit 0 is reserved for the blank".into()));
            }
            if inverse[d].is_some() {
                return Err(Error::InvalidEncoding(format!("digit {d} assigned twice")));
            }
            inverse[d] = Some(i);
        }
        let lookup = alphabet.symbols().iter().cloned().zip(0..).collect();
        Ok(EncodingMap { alphabet, sys, assignment, lookup, inverse })
    }

    /// Symbols in listed order on ascending digit indices, starting at 1 when
    /// a blank is reserved and at 0 otherwise.
    pub fn ascending(alphabet: Alphabet, sys: Arc<DigitSystem>) -> Result<Self> {
        let start = usize::from(alphabet.has_blank());
        let assignment = (start..start + alphabet.len()).collect();
        Self::new(alphabet, sys, assignment)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn digit_system(&self) -> &Arc<DigitSystem> {
        &self.sys
    }

    pub fn params(&self) -> &Arc<FieldParams> {
        self.sys.params()
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn digit_of(&self, symbol: &str) -> Option<usize> {
        self.lookup.get(symbol).map(|&i| self.assignment[i])
    }

    fn is_blank(&self, digit: usize) -> bool {
        self.alphabet.has_blank() && digit == 0
    }

    fn digits_for<S: AsRef<str>>(&self, s: &[S], permissive: bool) -> Result<Vec<usize>> {
        s.iter()
            .enumerate()
            .map(|(position, sym)| match self.digit_of(sym.as_ref()) {
                Some(d) => Ok(d),
                None if permissive && self.alphabet.has_blank() => Ok(0),
                None => Err(Error::UnknownSymbol { symbol: sym.as_ref().to_string(), position }),
            })
            .collect()
    }

    fn finish(&self, mut digits: Vec<usize>) -> Result<Encoded> {
        let n = self.params().precision() as usize;
        let length = digits.len();
        let truncated = length > n;
        digits.truncate(n);
        let value = PadicNumber::from_digits(&self.sys, 0, &digits)?;
        Ok(Encoded { value, length, truncated })
    }

    /// a_v = assignment(s_v) for v < |s|, zero afterwards.
    pub fn encode<S: AsRef<str>>(&self, s: &[S]) -> Result<Encoded> {
        self.finish(self.digits_for(s, false)?)
    }

    /// Like [`encode`](Self::encode) but symbols outside the alphabet become
    /// blanks; requires a blank.
    pub fn encode_permissive<S: AsRef<str>>(&self, s: &[S]) -> Result<Encoded> {
        self.finish(self.digits_for(s, true)?)
    }

    /// Encodes each character as one symbol.
    pub fn encode_str(&self, s: &str) -> Result<Encoded> {
        let symbols: Vec<String> = s.chars().map(String::from).collect();
        self.encode(&symbols)
    }

    /// Encodes several words separated by single blank digits.
    pub fn encode_words<W, S>(&self, words: &[W]) -> Result<Encoded>
    where
        W: AsRef<[S]>,
        S: AsRef<str>,
    {
        if !self.alphabet.has_blank() {
            return Err(Error::InvalidEncoding("multi-word input needs a blank".into()));
        }
        let mut digits = Vec::new();
        for (i, w) in words.iter().enumerate() {
            if i > 0 {
                digits.push(0);
            }
            digits.extend(self.digits_for(w.as_ref(), false)?);
        }
        self.finish(digits)
    }

    /// O_K digits of x at positions 0..N; negative exponents are holes.
    fn integral_digits(&self, x: &PadicNumber) -> Result<Vec<usize>> {
        if x.params() != self.params() {
            return Err(Error::ParamMismatch);
        }
        let ok = x.to_ok().map_err(|_| Error::HoleDigit { digit: x.digits()[0], position: 0 })?;
        Ok(self.sys.to_digits(&ok))
    }

    fn symbol_at(&self, digit: usize, position: usize) -> Result<String> {
        self.inverse[digit].map(|i| self.alphabet.symbols()[i].clone()).ok_or(Error::HoleDigit { digit, position })
    }

    /// Inverts the assignment digit by digit.
    ///
    /// With a blank, decoding stops at the first blank digit. Without one,
    /// trailing zero digits are dropped when 0 carries no symbol, and all N
    /// digits are decoded otherwise (see [`decode_prefix`](Self::decode_prefix)).
    pub fn decode(&self, x: &PadicNumber) -> Result<Vec<String>> {
        let digits = self.integral_digits(x)?;
        let end = if self.alphabet.has_blank() {
            digits.iter().position(|&d| d == 0).unwrap_or(digits.len())
        } else if self.inverse[0].is_none() {
            digits.iter().rposition(|&d| d != 0).map_or(0, |i| i + 1)
        } else {
            digits.len()
        };
        digits[..end].iter().enumerate().map(|(i, &d)| self.symbol_at(d, i)).collect()
    }

    /// Decodes exactly the first `len` digits.
    pub fn decode_prefix(&self, x: &PadicNumber, len: usize) -> Result<Vec<String>> {
        let digits = self.integral_digits(x)?;
        digits.iter().take(len).enumerate().map(|(i, &d)| self.symbol_at(d, i)).collect()
    }

    /// Whether every digit (up to the first blank, if any) lies in the image
    /// of the alphabet or is the blank.
    pub fn in_image(&self, x: &PadicNumber) -> bool {
        let Ok(digits) = self.integral_digits(x) else { return false };
        for (i, &d) in digits.iter().enumerate() {
            if self.is_blank(d) {
                return true;
            }
            if self.inverse[d].is_none() {
                // an unassigned zero may only pad the tail
                return d == 0 && digits[i..].iter().all(|&x| x == 0);
            }
        }
        true
    }
}
