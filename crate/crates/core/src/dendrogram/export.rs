use std::fmt::Write;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::json::to_json;

use super::{Dendrogram, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Newick,
    Dot,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "newick" => Ok(ExportFormat::Newick),
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            _ => Err(Error::Format(format!("unknown export format {s:?}"))),
        }
    }
}

fn newick_label(label: &str) -> String {
    let plain = !label.is_empty() && label.chars().all(|c| !c.is_whitespace() && !"()[]':;,".contains(c));
    if plain {
        label.to_string()
    } else {
        format!("'{}'", label.replace('\'', "''"))
    }
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

impl Dendrogram {
    /// Level assigned to leaves when drawing: one below the deepest vertex.
    pub fn leaf_level(&self) -> i64 {
        self.nodes.iter().map(|n| n.level).max().map_or(0, |m| m + 1)
    }

    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Newick => self.to_newick(),
            ExportFormat::Dot => self.to_dot(),
            ExportFormat::Json => serde_json::to_string_pretty(&self.to_json_value()).expect("json value"),
        }
    }

    /// Newick text; branch lengths are level differences and the root
    /// carries length 0.
    pub fn to_newick(&self) -> String {
        fn walk(d: &Dendrogram, v: Vertex, parent_level: i64, out: &mut String) {
            match v {
                Vertex::Leaf(id) => {
                    out.push_str(&newick_label(&d.leaves[id].label));
                    let _ = write!(out, ":{}", d.leaf_level() - parent_level);
                }
                Vertex::Node(id) => {
                    let n = &d.nodes[id];
                    out.push('(');
                    for (i, e) in n.children.iter().enumerate() {
                        if i > 0 {
                            out.push(',');
                        }
                        walk(d, e.target, n.level, out);
                    }
                    out.push(')');
                    let _ = write!(out, ":{}", n.level - parent_level);
                }
            }
        }
        let mut out = String::new();
        match self.root {
            Vertex::Leaf(id) => out.push_str(&format!("{}:0", newick_label(&self.leaves[id].label))),
            Vertex::Node(id) => walk(self, self.root, self.nodes[id].level, &mut out),
        }
        out.push(';');
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dendrogram {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{}\", level={}];", n.level, n.level);
        }
        for (i, l) in self.leaves.iter().enumerate() {
            let _ = writeln!(out, "  l{i} [label={}, shape=box];", dot_id(&l.label));
        }
        let leaf_level = self.leaf_level();
        for (i, n) in self.nodes.iter().enumerate() {
            for e in &n.children {
                let (target, len) = match e.target {
                    Vertex::Node(c) => (format!("n{c}"), self.nodes[c].level - n.level),
                    Vertex::Leaf(c) => (format!("l{c}"), leaf_level - n.level),
                };
                let _ = writeln!(out, "  n{i} -> {target} [digit={}, len={len}];", e.digit);
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json_value(&self) -> Value {
        fn walk(d: &Dendrogram, v: Vertex) -> Value {
            match v {
                Vertex::Leaf(id) => {
                    let l = &d.leaves[id];
                    json!({ "label": l.label, "value": to_json(&l.value) })
                }
                Vertex::Node(id) => {
                    let n = &d.nodes[id];
                    let children: Vec<Value> = n
                        .children
                        .iter()
                        .map(|e| {
                            let mut c = walk(d, e.target);
                            c["digit"] = json!(e.digit);
                            c
                        })
                        .collect();
                    json!({ "level": n.level, "prefix": n.disc.prefix, "children": children })
                }
            }
        }
        let p = self.sys.params();
        json!({
            "p": p.p(),
            "f": p.f(),
            "precision": p.precision(),
            "digit_system": self.sys.kind().as_str(),
            "base_level": self.base,
            "root": walk(self, self.root),
        })
    }
}
