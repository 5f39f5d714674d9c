//! Punctured projective lines, Möbius normalisation and the map Π from
//! M_{0,n+1} to dendrogram space.

mod mobius;
mod series;

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::dendrogram::{Dendrogram, LevelTree};
use crate::error::{Error, Result};
use crate::number::{PadicNumber, ProjectivePoint};

pub use mobius::{cross_ratio, MobiusTransform};
pub use series::{parse_series, track_series, Trajectory, TrajectoryStep, Transition};

/// P^1 minus finitely many labelled points.
#[derive(Clone, Debug)]
pub struct PuncturedLine {
    punctures: Vec<(String, ProjectivePoint)>,
}

impl PuncturedLine {
    /// At least three pairwise distinct punctures with distinct labels.
    pub fn new(punctures: Vec<(String, ProjectivePoint)>) -> Result<Self> {
        if punctures.len() < 3 {
            return Err(Error::InvalidParams("a punctured line needs at least three punctures".into()));
        }
        let mut seen = HashSet::new();
        for (label, _) in &punctures {
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        check_collisions(&punctures)?;
        Ok(PuncturedLine { punctures })
    }

    pub fn punctures(&self) -> &[(String, ProjectivePoint)] {
        &self.punctures
    }

    pub fn labels(&self) -> Vec<&str> {
        self.punctures.iter().map(|(l, _)| l.as_str()).collect()
    }

    pub fn get(&self, label: &str) -> Option<&ProjectivePoint> {
        self.punctures.iter().find(|(l, _)| l == label).map(|(_, p)| p)
    }

    /// Moves the punctures labelled `triple` to 0, 1 and ∞.
    pub fn normalize(&self, triple: [&str; 3]) -> Result<PuncturedLine> {
        let find = |label: &str| {
            self.get(label).ok_or_else(|| Error::LabelMismatch(format!("no puncture labelled {label:?}")))
        };
        let (a, b, c) = (find(triple[0])?, find(triple[1])?, find(triple[2])?);
        let m = MobiusTransform::from_triple(a, b, c)?;
        let sys = m.digit_system().clone();
        let mut out = Vec::with_capacity(self.punctures.len());
        for (label, z) in &self.punctures {
            let image = if label == triple[0] {
                PadicNumber::zero(&sys).into()
            } else if label == triple[1] {
                PadicNumber::one(&sys).into()
            } else if label == triple[2] {
                ProjectivePoint::Infinity
            } else {
                m.apply(z)?
            };
            out.push((label.clone(), image));
        }
        check_collisions(&out)?;
        Ok(PuncturedLine { punctures: out })
    }

    /// Π: the dendrogram of the finite punctures, with ∞ on the root ray.
    pub fn pi_map(&self) -> Result<Dendrogram> {
        let finite: Vec<(String, PadicNumber)> =
            self.punctures.iter().filter_map(|(l, z)| z.finite().map(|x| (l.clone(), x.clone()))).collect();
        match Dendrogram::build(&finite) {
            Err(Error::IndistinguishablePoints(a, b)) => Err(Error::CollisionDetected(a, b)),
            other => other,
        }
    }
}

fn check_collisions(punctures: &[(String, ProjectivePoint)]) -> Result<()> {
    for (i, (la, a)) in punctures.iter().enumerate() {
        for (lb, b) in &punctures[i + 1..] {
            if a.coincides(b)? {
                return Err(Error::CollisionDetected(la.clone(), lb.clone()));
            }
        }
    }
    Ok(())
}

/// Labelled tree shape with levels forgotten; equal iff the trees are
/// isomorphic as leaf-labelled rooted trees.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CellSignature(pub String);

impl CellSignature {
    pub fn of(tree: &LevelTree) -> Self {
        CellSignature(tree.canonical(false))
    }
}

impl fmt::Display for CellSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn cell_signature(d: &Dendrogram) -> CellSignature {
    CellSignature::of(&LevelTree::from(d))
}

/// Number of interior edges of the dendrogram.
pub fn cell_dimension(d: &Dendrogram) -> usize {
    LevelTree::from(d).cell_dimension()
}

/// dim M_{0,n+1} = (n + 1) - 3 for n finite punctures.
pub fn moduli_dimension(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::InvalidParams("moduli dimension needs n >= 2".into()));
    }
    Ok(n + 1 - 3)
}
