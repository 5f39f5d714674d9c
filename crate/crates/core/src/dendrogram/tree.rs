use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};

use super::{Dendrogram, Vertex};

/// Abstract leaf-labelled tree with integer levels on its internal vertices;
/// the ray to ∞ sits above the root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LevelTree {
    Leaf(String),
    Node { level: i64, children: Vec<LevelTree> },
}

/// Edge between two internal vertices, named by the leaves below it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteriorEdge {
    /// Preorder index among non-root internal vertices.
    pub id: usize,
    pub clade: Vec<String>,
    pub length: i64,
}

impl InteriorEdge {
    pub fn key(&self) -> String {
        self.clade.join("|")
    }
}

impl LevelTree {
    pub fn leaf(label: impl Into<String>) -> Self {
        LevelTree::Leaf(label.into())
    }

    pub fn node(level: i64, children: Vec<LevelTree>) -> Self {
        LevelTree::Node { level, children }
    }

    pub fn level(&self) -> Option<i64> {
        match self {
            LevelTree::Leaf(_) => None,
            LevelTree::Node { level, .. } => Some(*level),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut Vec<String>) {
        match self {
            LevelTree::Leaf(l) => out.push(l.clone()),
            LevelTree::Node { children, .. } => children.iter().for_each(|c| c.collect_labels(out)),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            LevelTree::Leaf(_) => 1,
            LevelTree::Node { children, .. } => children.iter().map(LevelTree::leaf_count).sum(),
        }
    }

    pub fn max_branching(&self) -> usize {
        match self {
            LevelTree::Leaf(_) => 0,
            LevelTree::Node { children, .. } => {
                children.iter().map(LevelTree::max_branching).max().unwrap_or(0).max(children.len())
            }
        }
    }

    pub fn max_level(&self) -> Option<i64> {
        match self {
            LevelTree::Leaf(_) => None,
            LevelTree::Node { level, children } => {
                Some(children.iter().filter_map(LevelTree::max_level).fold(*level, i64::max))
            }
        }
    }

    pub fn is_binary(&self) -> bool {
        match self {
            LevelTree::Leaf(_) => true,
            LevelTree::Node { children, .. } => children.len() == 2 && children.iter().all(LevelTree::is_binary),
        }
    }

    /// Levels increase downwards, every vertex has at least two children and
    /// labels are distinct.
    pub fn validate(&self) -> Result<()> {
        fn walk(t: &LevelTree, above: Option<i64>, seen: &mut HashSet<String>) -> Result<()> {
            match t {
                LevelTree::Leaf(l) => {
                    if !seen.insert(l.clone()) {
                        return Err(Error::DuplicateLabel(l.clone()));
                    }
                }
                LevelTree::Node { level, children } => {
                    if above.is_some_and(|a| *level <= a) {
                        return Err(Error::InvalidTree(format!("level {level} does not increase")));
                    }
                    if children.len() < 2 {
                        return Err(Error::InvalidTree("internal vertex with fewer than two children".into()));
                    }
                    for c in children {
                        walk(c, Some(*level), seen)?;
                    }
                }
            }
            Ok(())
        }
        walk(self, None, &mut HashSet::new())
    }

    /// Canonical text of the tree up to reordering of children. With
    /// `levels` the vertex levels are included.
    pub fn canonical(&self, levels: bool) -> String {
        match self {
            LevelTree::Leaf(l) => escape(l),
            LevelTree::Node { level, children } => {
                let mut parts: Vec<String> = children.iter().map(|c| c.canonical(levels)).collect();
                parts.sort();
                if levels {
                    format!("({})@{level}", parts.join(","))
                } else {
                    format!("({})", parts.join(","))
                }
            }
        }
    }

    /// Same tree, same levels, any child order.
    pub fn isomorphic(&self, other: &LevelTree) -> bool {
        self.canonical(true) == other.canonical(true)
    }

    /// Interior edges in preorder of their lower endpoint.
    pub fn interior_edges(&self) -> Vec<InteriorEdge> {
        fn walk(t: &LevelTree, parent_level: Option<i64>, out: &mut Vec<InteriorEdge>) {
            if let LevelTree::Node { level, children } = t {
                if let Some(pl) = parent_level {
                    let mut clade = t.labels();
                    clade.sort();
                    out.push(InteriorEdge { id: out.len(), clade, length: level - pl });
                }
                for c in children {
                    walk(c, Some(*level), out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, None, &mut out);
        out
    }

    /// Number of interior edges, the dimension of the cell of dendrogram
    /// space containing this tree.
    pub fn cell_dimension(&self) -> usize {
        self.interior_edges().len()
    }

    /// Clade key -> interior edge length.
    pub fn clades(&self) -> BTreeMap<String, i64> {
        self.interior_edges().into_iter().map(|e| (e.key(), e.length)).collect()
    }

    /// Collapses interior edge `id`: the lower vertex's children move up to
    /// the upper vertex, in place of the lower vertex.
    pub fn contract_edge(&self, id: usize) -> Result<LevelTree> {
        fn walk(t: &LevelTree, is_root: bool, counter: &mut usize, id: usize, done: &mut bool) -> LevelTree {
            match t {
                LevelTree::Leaf(_) => t.clone(),
                LevelTree::Node { level, children } => {
                    if !is_root {
                        *counter += 1;
                    }
                    let mut out = Vec::with_capacity(children.len());
                    for c in children {
                        let is_target = matches!(c, LevelTree::Node { .. }) && *counter == id && !*done;
                        if is_target {
                            *done = true;
                            *counter += 1;
                            let LevelTree::Node { children: grand, .. } = c else { unreachable!() };
                            // the grandchildren's own subtrees keep their numbering
                            for g in grand {
                                out.push(walk(g, false, counter, id, done));
                            }
                        } else {
                            out.push(walk(c, false, counter, id, done));
                        }
                    }
                    LevelTree::Node { level: *level, children: out }
                }
            }
        }
        if id >= self.cell_dimension() {
            return Err(Error::NotInteriorEdge(id));
        }
        let mut counter = 0;
        let mut done = false;
        // preorder ids count non-root internal vertices starting at 0
        let out = walk(self, true, &mut counter, id, &mut done);
        debug_assert!(done);
        Ok(out)
    }
}

fn escape(label: &str) -> String {
    let mut out = String::with_capacity(label.len());
    for c in label.chars() {
        if matches!(c, '(' | ')' | ',' | '\\' | '@') {
            out.push('\\');
        }
        out.push(c);
    }
    out
}

impl From<&Dendrogram> for LevelTree {
    fn from(d: &Dendrogram) -> Self {
        fn walk(d: &Dendrogram, v: Vertex) -> LevelTree {
            match v {
                Vertex::Leaf(id) => LevelTree::Leaf(d.leaves()[id].label.clone()),
                Vertex::Node(id) => {
                    let n = d.node(id);
                    LevelTree::Node { level: n.level, children: n.children.iter().map(|e| walk(d, e.target)).collect() }
                }
            }
        }
        walk(d, d.root())
    }
}
