use std::io::BufRead;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FastaRecord {
    pub id: String,
    pub sequence: String,
}

impl FastaRecord {
    pub fn symbols(&self) -> Vec<String> {
        self.sequence.chars().map(String::from).collect()
    }
}

/// Reads FASTA records. Sequence lines are folded, whitespace is dropped and
/// letters are upper-cased; symbol validation is left to the encoder.
pub fn read_fasta<R: BufRead>(reader: R) -> Result<Vec<FastaRecord>> {
    let mut records: Vec<FastaRecord> = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| Error::MalformedFasta { line: lineno, reason: e.to_string() })?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(header) = trimmed.strip_prefix('>') {
            let id = header.split_whitespace().next().unwrap_or("");
            if id.is_empty() {
                return Err(Error::MalformedFasta { line: lineno, reason: "empty header".into() });
            }
            records.push(FastaRecord { id: id.to_string(), sequence: String::new() });
        } else {
            let Some(rec) = records.last_mut() else {
                return Err(Error::MalformedFasta {
                    line: lineno,
                    reason: "sequence data before the first header".into(),
                });
            };
            rec.sequence.extend(trimmed.chars().filter(|c| !c.is_whitespace()).map(|c| c.to_ascii_uppercase()));
        }
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(id: &str, seq: &str) -> FastaRecord {
        FastaRecord { id: id.into(), sequence: seq.into() }
    }

    #[test]
    fn single_and_folded() {
        assert_eq!(read_fasta(">s1\nACGT\n".as_bytes()).unwrap(), vec![rec("s1", "ACGT")]);
        assert_eq!(read_fasta(">s1\nAC\nGT\n".as_bytes()).unwrap(), vec![rec("s1", "ACGT")]);
        assert_eq!(
            read_fasta(">a desc\nac gt\n\n>b\nTT\n".as_bytes()).unwrap(),
            vec![rec("a", "ACGT"), rec("b", "TT")]
        );
    }

    #[test]
    fn missing_header() {
        assert_eq!(
            read_fasta("ACGT".as_bytes()).unwrap_err(),
            Error::MalformedFasta { line: 1, reason: "sequence data before the first header".into() }
        );
        assert!(matches!(read_fasta("\n>\nAC".as_bytes()), Err(Error::MalformedFasta { line: 2, .. })));
    }
}
