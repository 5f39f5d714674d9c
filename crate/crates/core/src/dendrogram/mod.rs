//! p-adic dendrograms: the subtree of the Bruhat-Tits tree spanned by a
//! finite point set and ∞.
//!
//! Vertices are discs `{x : v(x - c) >= level}`. Writing every point in a
//! common digit window turns the spanning tree into the trie of digit
//! strings with unary chains removed; the branch vertex of two points sits
//! at level v(x - y).

mod cluster;
mod export;
mod section;
mod tree;

use std::collections::HashSet;
use std::sync::Arc;

use crate::digits::DigitSystem;
use crate::error::{Error, Result};
use crate::number::PadicNumber;
use crate::ok::OkElem;

pub use cluster::{valuation_matrix, MergeEvent, Partition};
pub use export::ExportFormat;
pub use section::encode_dendrogram;
pub use tree::{InteriorEdge, LevelTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Vertex {
    Node(usize),
    Leaf(usize),
}

/// The disc of radius p^{-level} whose centre has the digits `prefix` at
/// exponents `base, base + 1, ..., level - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Disc {
    pub level: i64,
    pub prefix: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Edge {
    /// Digit at exponent `level` of the parent shared by everything below.
    pub digit: usize,
    pub target: Vertex,
}

#[derive(Clone, Debug)]
pub struct Node {
    pub level: i64,
    pub disc: Disc,
    pub children: Vec<Edge>,
    pub parent: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Leaf {
    pub label: String,
    pub value: PadicNumber,
    pub parent: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Dendrogram {
    sys: Arc<DigitSystem>,
    base: i64,
    nodes: Vec<Node>,
    leaves: Vec<Leaf>,
    root: Vertex,
}

#[derive(Default)]
struct TrieNode {
    children: Vec<(usize, usize)>,
    leaf: Option<usize>,
}

impl Dendrogram {
    /// Builds T(X ∪ {∞}) for labelled points sharing one field.
    ///
    /// All points are written with N digits starting at the smallest
    /// exponent present; two points agreeing on the whole window are
    /// rejected. Runs in O(n N) digit operations.
    pub fn build(points: &[(String, PadicNumber)]) -> Result<Self> {
        let Some((_, first)) = points.first() else {
            return Err(Error::EmptyInput);
        };
        let sys = first.sys().clone();
        let params = sys.params().clone();
        let mut seen = HashSet::new();
        for (label, x) in points {
            if x.params() != &params {
                return Err(Error::ParamMismatch);
            }
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        let n = params.precision() as i64;
        let base = points.iter().filter(|(_, x)| !x.is_zero()).map(|(_, x)| x.shift()).min().unwrap_or(0);

        let mut trie = vec![TrieNode::default()];
        for (id, (label, x)) in points.iter().enumerate() {
            let window = if x.is_zero() || x.shift() - base >= n {
                OkElem::zero(&params)
            } else {
                x.mantissa().mul_p_pow((x.shift() - base) as u32)
            };
            let mut at = 0;
            for d in sys.to_digits(&window) {
                at = match trie[at].children.iter().find(|(digit, _)| *digit == d) {
                    Some(&(_, next)) => next,
                    None => {
                        trie.push(TrieNode::default());
                        let next = trie.len() - 1;
                        trie[at].children.push((d, next));
                        next
                    }
                };
            }
            if let Some(other) = trie[at].leaf {
                return Err(Error::IndistinguishablePoints(points[other].0.clone(), label.clone()));
            }
            trie[at].leaf = Some(id);
        }

        let mut dendrogram = Dendrogram {
            sys,
            base,
            nodes: Vec::new(),
            leaves: points
                .iter()
                .map(|(label, value)| Leaf { label: label.clone(), value: value.clone(), parent: None })
                .collect(),
            root: Vertex::Leaf(0),
        };
        let mut prefix = Vec::new();
        dendrogram.root = dendrogram.compress(&mut trie, 0, 0, &mut prefix, None);
        Ok(dendrogram)
    }

    fn compress(
        &mut self,
        trie: &mut [TrieNode],
        mut at: usize,
        mut depth: i64,
        prefix: &mut Vec<usize>,
        parent: Option<usize>,
    ) -> Vertex {
        let restore = prefix.len();
        while trie[at].leaf.is_none() && trie[at].children.len() == 1 {
            let (d, next) = trie[at].children[0];
            prefix.push(d);
            at = next;
            depth += 1;
        }
        let vertex = if let Some(id) = trie[at].leaf {
            self.leaves[id].parent = parent;
            Vertex::Leaf(id)
        } else {
            let level = self.base + depth;
            let id = self.nodes.len();
            self.nodes.push(Node { level, disc: Disc { level, prefix: prefix.clone() }, children: Vec::new(), parent });
            let mut children = std::mem::take(&mut trie[at].children);
            children.sort_unstable();
            for (d, next) in children {
                prefix.push(d);
                let target = self.compress(trie, next, depth + 1, prefix, Some(id));
                prefix.pop();
                self.nodes[id].children.push(Edge { digit: d, target });
            }
            Vertex::Node(id)
        };
        prefix.truncate(restore);
        vertex
    }

    pub fn digit_system(&self) -> &Arc<DigitSystem> {
        &self.sys
    }

    /// Exponent of the first digit of every disc prefix.
    pub fn base_level(&self) -> i64 {
        self.base
    }

    pub fn root(&self) -> Vertex {
        self.root
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn leaves(&self) -> &[Leaf] {
        &self.leaves
    }

    pub fn node(&self, id: usize) -> &Node {
        &self.nodes[id]
    }

    /// Level of the root disc; `None` for a single point.
    pub fn root_level(&self) -> Option<i64> {
        match self.root {
            Vertex::Node(id) => Some(self.nodes[id].level),
            Vertex::Leaf(_) => None,
        }
    }

    pub fn leaf_index(&self, label: &str) -> Option<usize> {
        self.leaves.iter().position(|l| l.label == label)
    }

    /// Level of the smallest disc containing leaves `i` and `j` (i != j).
    pub fn merge_level(&self, i: usize, j: usize) -> i64 {
        let mut ancestors = HashSet::new();
        let mut at = self.leaves[i].parent;
        while let Some(id) = at {
            ancestors.insert(id);
            at = self.nodes[id].parent;
        }
        let mut at = self.leaves[j].parent;
        while let Some(id) = at {
            if ancestors.contains(&id) {
                return self.nodes[id].level;
            }
            at = self.nodes[id].parent;
        }
        unreachable!("leaves of one tree share the root")
    }

    /// Merge levels of all leaf pairs; `None` on the diagonal.
    pub fn merge_levels(&self) -> Vec<Vec<Option<i64>>> {
        let n = self.leaves.len();
        let mut out = vec![vec![None; n]; n];
        for node in &self.nodes {
            let groups: Vec<Vec<usize>> = node.children.iter().map(|e| self.leaves_below(e.target)).collect();
            for (a, ga) in groups.iter().enumerate() {
                for gb in &groups[a + 1..] {
                    for &i in ga {
                        for &j in gb {
                            out[i][j] = Some(node.level);
                            out[j][i] = Some(node.level);
                        }
                    }
                }
            }
        }
        out
    }

    /// Leaf ids below `v` in digit order.
    pub fn leaves_below(&self, v: Vertex) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(v) = stack.pop() {
            match v {
                Vertex::Leaf(id) => out.push(id),
                Vertex::Node(id) => stack.extend(self.nodes[id].children.iter().rev().map(|e| e.target)),
            }
        }
        out
    }

    pub fn max_branching(&self) -> usize {
        self.nodes.iter().map(|n| n.children.len()).max().unwrap_or(0)
    }
}
