use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::dendrogram::LevelTree;
use crate::digits::DigitSystem;
use crate::error::{Error, Result};
use crate::json::{PadicJson, SystemCache};
use crate::number::{parse_rational, PadicNumber, ProjectivePoint};

use super::{CellSignature, PuncturedLine};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Transition {
    SameCell,
    Contraction,
    Expansion,
    Jump,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrajectoryStep {
    pub t: usize,
    pub signature: CellSignature,
    pub interior_lengths: BTreeMap<String, i64>,
    pub transition: Transition,
    /// Clades of the edges that vanished (contraction) or appeared
    /// (expansion) since the previous step.
    pub edges: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    pub triple: [String; 3],
    pub steps: Vec<TrajectoryStep>,
}

impl Trajectory {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(&self.steps).expect("serialisable steps")
    }
}

/// Most edges a contraction or expansion may involve before the step is
/// reported as a jump.
const MAX_CONTRACTIONS: usize = 2;

fn classify(prev: &BTreeMap<String, i64>, cur: &BTreeMap<String, i64>) -> (Transition, Vec<String>) {
    let a: BTreeSet<&String> = prev.keys().collect();
    let b: BTreeSet<&String> = cur.keys().collect();
    if a == b {
        return (Transition::SameCell, Vec::new());
    }
    let owned = |s: BTreeSet<&String>| s.into_iter().cloned().collect::<Vec<_>>();
    if b.is_subset(&a) && a.len() - b.len() <= MAX_CONTRACTIONS {
        return (Transition::Contraction, owned(a.difference(&b).copied().collect()));
    }
    if a.is_subset(&b) && b.len() - a.len() <= MAX_CONTRACTIONS {
        return (Transition::Expansion, owned(b.difference(&a).copied().collect()));
    }
    (Transition::Jump, Vec::new())
}

/// Normalises every step with the same triple of labels (default: the first
/// three labels of the first step), applies Π and tags each step against the
/// one before it.
pub fn track_series(series: &[PuncturedLine], triple: Option<[&str; 3]>) -> Result<Trajectory> {
    let Some(first) = series.first() else {
        return Err(Error::EmptyInput);
    };
    let labels: BTreeSet<&str> = first.labels().into_iter().collect();
    let triple = match triple {
        Some(t) => t,
        None => {
            let l = first.labels();
            [l[0], l[1], l[2]]
        }
    };
    let mut steps: Vec<TrajectoryStep> = Vec::with_capacity(series.len());
    for (t, line) in series.iter().enumerate() {
        let these: BTreeSet<&str> = line.labels().into_iter().collect();
        if these != labels {
            return Err(Error::LabelMismatch(format!("step {t} has a different label set")));
        }
        let tree = LevelTree::from(&line.normalize(triple)?.pi_map()?);
        let interior_lengths = tree.clades();
        let (transition, edges) = match steps.last() {
            None => (Transition::SameCell, Vec::new()),
            Some(prev) => classify(&prev.interior_lengths, &interior_lengths),
        };
        steps.push(TrajectoryStep { t, signature: CellSignature::of(&tree), interior_lengths, transition, edges });
    }
    Ok(Trajectory { triple: triple.map(String::from), steps })
}

#[derive(Deserialize)]
struct RawPuncture {
    label: String,
    point: Value,
}

fn parse_point(v: &Value, sys: &Arc<DigitSystem>, cache: &mut SystemCache) -> Result<ProjectivePoint> {
    match v {
        Value::String(s) if s.eq_ignore_ascii_case("inf") || s == "∞" => Ok(ProjectivePoint::Infinity),
        Value::String(s) => Ok(PadicNumber::from_rational(sys, &parse_rational(s)?)?.into()),
        Value::Number(n) => {
            let n = n.as_i64().ok_or_else(|| Error::Format(format!("point {n} is not an integer")))?;
            Ok(PadicNumber::from_int(sys, n).into())
        }
        Value::Object(_) => {
            let j: PadicJson = serde_json::from_value(v.clone()).map_err(|e| Error::Format(e.to_string()))?;
            let x = cache.number(&j)?;
            if x.params() != sys.params() {
                return Err(Error::ParamMismatch);
            }
            Ok(x.into())
        }
        other => Err(Error::Format(format!("cannot read a point from {other}"))),
    }
}

/// Reads a series: a JSON list of steps, each a list of
/// `{"label": .., "point": ..}` where a point is `"inf"`, a rational such
/// as `"3/4"`, an integer, or a p-adic number object.
pub fn parse_series(text: &str, sys: &Arc<DigitSystem>) -> Result<Vec<PuncturedLine>> {
    let raw: Vec<Vec<RawPuncture>> = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let mut cache = SystemCache::new();
    cache.insert(sys.clone());
    raw.into_iter()
        .map(|step| {
            let pts = step
                .into_iter()
                .map(|r| Ok((r.label, parse_point(&r.point, sys, &mut cache)?)))
                .collect::<Result<Vec<_>>>()?;
            PuncturedLine::new(pts)
        })
        .collect()
}
