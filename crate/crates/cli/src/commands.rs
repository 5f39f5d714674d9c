use std::sync::Arc;

use serde_json::{json, Value};

use padico::dendrogram::{Dendrogram, ExportFormat};
use padico::encoder::{read_fasta, EncodingMap, FastaRecord};
use padico::genus1::{is_tate_legendre, iterate_orbit};
use padico::json::{to_json, LabelledPadicJson, SystemCache};
use padico::moduli::{parse_series, track_series, MobiusTransform};
use padico::number::parse_rational;
use padico::{DigitSystem, Error, PadicNumber, ProjectivePoint, Result};

use crate::config::Config;

/// FASTA when the first line is a header, else one string per line with an
/// optional leading label (`label<whitespace>string`).
fn read_records(text: &str) -> Result<Vec<FastaRecord>> {
    if text.trim_start().starts_with('>') {
        return read_fasta(text.as_bytes());
    }
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let record = match line.split_once(char::is_whitespace) {
            Some((label, seq)) => FastaRecord { id: label.to_string(), sequence: seq.trim().to_string() },
            None => FastaRecord { id: format!("s{}", i + 1), sequence: line.to_string() },
        };
        out.push(record);
    }
    Ok(out)
}

fn encode_records(
    map: &EncodingMap,
    text: &str,
    permissive: bool,
) -> Result<Vec<(FastaRecord, padico::encoder::Encoded)>> {
    read_records(text)?
        .into_iter()
        .map(|rec| {
            let symbols = rec.symbols();
            let encoded = if permissive { map.encode_permissive(&symbols) } else { map.encode(&symbols) };
            match encoded {
                Ok(e) => Ok((rec, e)),
                Err(err) => {
                    eprintln!("padico: record {:?}", rec.id);
                    Err(err)
                }
            }
        })
        .collect()
}

pub fn encode(cfg: &Config, text: &str, format: &str, alphabet: &str, blank: bool, permissive: bool) -> Result<String> {
    let map = cfg.encoding_map(alphabet, blank)?;
    let encoded = encode_records(&map, text, permissive)?;
    match format {
        "json" => {
            let items: Vec<Value> = encoded
                .iter()
                .map(|(rec, e)| {
                    let mut v =
                        serde_json::to_value(LabelledPadicJson { label: rec.id.clone(), number: to_json(&e.value) })
                            .expect("json value");
                    v["length"] = json!(e.length);
                    v["truncated"] = json!(e.truncated);
                    v
                })
                .collect();
            Ok(cfg.render(&Value::Array(items)))
        }
        "csv" => {
            let mut out = String::from("label,length,truncated,shift,digits\n");
            for (rec, e) in &encoded {
                let digits: Vec<String> = e.value.digits().iter().map(usize::to_string).collect();
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    rec.id,
                    e.length,
                    e.truncated,
                    e.value.shift(),
                    digits.join(" ")
                ));
            }
            Ok(out)
        }
        other => Err(Error::Format(format!("unknown encode format {other:?}"))),
    }
}

fn parse_value(v: &Value, sys: &Arc<DigitSystem>) -> Result<PadicNumber> {
    match v {
        Value::String(s) => PadicNumber::from_rational(sys, &parse_rational(s)?),
        Value::Number(n) => {
            let n = n.as_i64().ok_or_else(|| Error::Format(format!("{n} is not an integer")))?;
            Ok(PadicNumber::from_int(sys, n))
        }
        other => Err(Error::Format(format!("cannot read a number from {other}"))),
    }
}

/// Labelled points from JSON: either p-adic number objects with a label or
/// `{"label": .., "value": ..}` with a rational value in the configured field.
fn read_points(text: &str, cfg: &Config) -> Result<Vec<(String, PadicNumber)>> {
    let items: Vec<Value> = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let sys = cfg.digit_system()?;
    let mut cache = SystemCache::new();
    cache.insert(sys.clone());
    items
        .into_iter()
        .map(|item| {
            if item.get("digits").is_some() {
                let j: LabelledPadicJson = serde_json::from_value(item).map_err(|e| Error::Format(e.to_string()))?;
                Ok((j.label, cache.number(&j.number)?))
            } else {
                let label = item
                    .get("label")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Format("point without a label".into()))?
                    .to_string();
                let value =
                    item.get("value").ok_or_else(|| Error::Format(format!("point {label:?} without a value")))?;
                Ok((label, parse_value(value, &sys)?))
            }
        })
        .collect()
}

pub fn cluster(
    cfg: &Config,
    text: &str,
    format: &str,
    threshold: Option<i64>,
    alphabet: &str,
    blank: bool,
) -> Result<(String, String)> {
    let points = if text.trim_start().starts_with('[') {
        read_points(text, cfg)?
    } else {
        let map = cfg.encoding_map(alphabet, blank)?;
        encode_records(&map, text, false)?.into_iter().map(|(rec, e)| (rec.id, e.value)).collect()
    };
    let d = Dendrogram::build(&points)?;
    let log = d.merge_log_csv();
    if let Some(k) = threshold {
        let value = serde_json::to_value(d.cluster_at_threshold(k)).expect("json value");
        return Ok((cfg.render(&value), log));
    }
    let out = match format {
        "csv" => log.clone(),
        "json" => cfg.render(&d.to_json_value()),
        other => {
            let mut s = d.export(other.parse::<ExportFormat>()?);
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
    };
    Ok((out, log))
}

pub fn series(cfg: &Config, text: &str, triple: Option<&[String]>) -> Result<String> {
    let sys = cfg.digit_system()?;
    let steps = parse_series(text, &sys)?;
    let triple = match triple {
        Some([a, b, c]) => Some([a.as_str(), b.as_str(), c.as_str()]),
        Some(_) => return Err(Error::Format("--triple takes three labels".into())),
        None => None,
    };
    let trajectory = track_series(&steps, triple)?;
    Ok(cfg.render(&trajectory.to_json()))
}

pub fn tate(cfg: &Config, lambda: &str) -> Result<(String, bool)> {
    let sys = cfg.digit_system()?;
    let lambda = PadicNumber::from_rational(&sys, &parse_rational(lambda)?)?;
    let report = is_tate_legendre(&lambda)?;
    let value = serde_json::to_value(&report).expect("json value");
    Ok((cfg.render(&value), report.tate))
}

fn parse_point(s: &str, sys: &Arc<DigitSystem>) -> Result<ProjectivePoint> {
    if s.eq_ignore_ascii_case("inf") {
        return Ok(ProjectivePoint::Infinity);
    }
    Ok(PadicNumber::from_rational(sys, &parse_rational(s)?)?.into())
}

pub fn orbit(cfg: &Config, matrix: &[String], z0: &str, steps: usize) -> Result<String> {
    let sys = cfg.digit_system()?;
    let entries =
        matrix.iter().map(|s| PadicNumber::from_rational(&sys, &parse_rational(s)?)).collect::<Result<Vec<_>>>()?;
    let [a, b, c, d] =
        <[PadicNumber; 4]>::try_from(entries).map_err(|_| Error::Format("--matrix takes four entries".into()))?;
    let m = MobiusTransform::new(a, b, c, d)?;
    let orbit = iterate_orbit(&m, &parse_point(z0, &sys)?, steps)?;
    let series: Vec<Value> = orbit
        .iter()
        .map(|z| {
            let point = match z {
                ProjectivePoint::Infinity => json!("inf"),
                ProjectivePoint::Finite(x) => serde_json::to_value(to_json(x)).expect("json value"),
            };
            json!([
                {"label": "0", "point": "0"},
                {"label": "1", "point": "1"},
                {"label": "inf", "point": "inf"},
                {"label": "z", "point": point},
            ])
        })
        .collect();
    Ok(cfg.render(&Value::Array(series)))
}
