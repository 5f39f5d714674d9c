use serde::Serialize;

use crate::error::Result;
use crate::number::PadicNumber;
use crate::ok::Valuation;

use super::{Dendrogram, Vertex};

/// Pairwise valuations v(x_i - x_j); the diagonal is `BeyondPrecision`.
pub fn valuation_matrix(points: &[(String, PadicNumber)]) -> Result<Vec<Vec<Valuation>>> {
    let n = points.len();
    let Some((_, first)) = points.first() else {
        return Ok(Vec::new());
    };
    let n_digits = first.params().precision() as i64;
    let mut out = vec![vec![Valuation::BeyondPrecision { at_least: n_digits }; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = points[i].1.sub(&points[j].1)?.valuation();
            out[i][j] = v;
            out[j][i] = v;
        }
    }
    Ok(out)
}

/// Leaves grouped by the discs of radius p^-threshold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub threshold: i64,
    pub blocks: Vec<Vec<String>>,
}

/// Clusters joined at one vertex of the dendrogram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MergeEvent {
    pub level: i64,
    pub clusters: Vec<Vec<String>>,
}

impl MergeEvent {
    pub fn labels(&self) -> Vec<String> {
        let mut all: Vec<String> = self.clusters.concat();
        all.sort();
        all
    }
}

impl Dendrogram {
    fn sorted_labels(&self, v: Vertex) -> Vec<String> {
        let mut out: Vec<String> = self.leaves_below(v).into_iter().map(|i| self.leaves[i].label.clone()).collect();
        out.sort();
        out
    }

    /// Maximal sets of leaves with pairwise merge level >= k.
    pub fn cluster_at_threshold(&self, k: i64) -> Partition {
        let mut blocks = Vec::new();
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            match v {
                Vertex::Node(id) if self.nodes[id].level < k => {
                    stack.extend(self.nodes[id].children.iter().map(|e| e.target));
                }
                _ => blocks.push(self.sorted_labels(v)),
            }
        }
        blocks.sort();
        Partition { threshold: k, blocks }
    }

    /// Agglomerative replay from singletons: closest clusters first, ties by
    /// smallest label.
    pub fn merge_sequence(&self) -> Vec<MergeEvent> {
        let mut events: Vec<MergeEvent> = self
            .nodes
            .iter()
            .map(|n| {
                let mut clusters: Vec<Vec<String>> = n.children.iter().map(|e| self.sorted_labels(e.target)).collect();
                clusters.sort();
                MergeEvent { level: n.level, clusters }
            })
            .collect();
        events.sort_by(|a, b| b.level.cmp(&a.level).then_with(|| a.clusters[0][0].cmp(&b.clusters[0][0])));
        events
    }

    /// CSV with header `level,labels`, one row per merge event.
    pub fn merge_log_csv(&self) -> String {
        let mut out = String::from("level,labels\n");
        for e in self.merge_sequence() {
            out.push_str(&format!("{},{}\n", e.level, csv_field(&e.labels().join("|"))));
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
