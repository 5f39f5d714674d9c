mod common;

use std::collections::HashMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use padico::dendrogram::{Dendrogram, ExportFormat};
use padico::{DigitSystem, FieldParams, PadicNumber};

use common::clustered_points;

#[derive(Debug)]
enum Newick {
    Leaf(String, i64),
    Node(Vec<Newick>, i64),
}

struct Parser<'a> {
    s: &'a [u8],
    at: usize,
}

impl Parser<'_> {
    fn peek(&self) -> u8 {
        self.s[self.at]
    }

    fn label(&mut self) -> String {
        if self.peek() == b'\'' {
            self.at += 1;
            let mut out = Vec::new();
            loop {
                let c = self.peek();
                self.at += 1;
                if c == b'\'' {
                    if self.at < self.s.len() && self.peek() == b'\'' {
                        out.push(b'\'');
                        self.at += 1;
                        continue;
                    }
                    break;
                }
                out.push(c);
            }
            return String::from_utf8(out).unwrap();
        }
        let start = self.at;
        while !b":,();".contains(&self.peek()) {
            self.at += 1;
        }
        String::from_utf8(self.s[start..self.at].to_vec()).unwrap()
    }

    fn length(&mut self) -> i64 {
        assert_eq!(self.peek(), b':', "missing branch length at {}", self.at);
        self.at += 1;
        let start = self.at;
        while self.peek() == b'-' || self.peek().is_ascii_digit() {
            self.at += 1;
        }
        std::str::from_utf8(&self.s[start..self.at]).unwrap().parse().unwrap()
    }

    fn subtree(&mut self) -> Newick {
        if self.peek() == b'(' {
            self.at += 1;
            let mut children = vec![self.subtree()];
            while self.peek() == b',' {
                self.at += 1;
                children.push(self.subtree());
            }
            assert_eq!(self.peek(), b')');
            self.at += 1;
            let len = self.length();
            Newick::Node(children, len)
        } else {
            let l = self.label();
            let len = self.length();
            Newick::Leaf(l, len)
        }
    }
}

fn parse_newick(s: &str) -> Newick {
    let mut p = Parser { s: s.as_bytes(), at: 0 };
    let t = p.subtree();
    assert_eq!(&s[p.at..], ";");
    t
}

/// Each leaf with the (node id, depth) of its ancestors, root first.
fn leaf_paths(
    t: &Newick,
    depth: i64,
    path: &mut Vec<(usize, i64)>,
    next: &mut usize,
    out: &mut HashMap<String, Vec<(usize, i64)>>,
) {
    match t {
        Newick::Leaf(l, _) => {
            out.insert(l.clone(), path.clone());
        }
        Newick::Node(children, _) => {
            let id = *next;
            *next += 1;
            path.push((id, depth));
            for c in children {
                let d = match c {
                    Newick::Node(_, len) => depth + len,
                    Newick::Leaf(..) => depth,
                };
                leaf_paths(c, d, path, next, out);
            }
            path.pop();
        }
    }
}

fn eight_points() -> Vec<(String, PadicNumber)> {
    let sys = DigitSystem::standard(&FieldParams::new(2, 1, 16).unwrap()).unwrap();
    [0, 64, 32, 4, 20, 12, 3, 1]
        .iter()
        .enumerate()
        .map(|(i, &v)| (format!("x{}", i + 1), PadicNumber::from_int(&sys, v)))
        .collect()
}

fn check_newick(d: &Dendrogram) {
    let text = d.to_newick();
    let tree = parse_newick(&text);
    let mut paths = HashMap::new();
    leaf_paths(&tree, 0, &mut Vec::new(), &mut 0, &mut paths);
    assert_eq!(paths.len(), d.leaves().len());
    let root = d.root_level().unwrap();
    let levels = d.merge_levels();
    for (i, a) in d.leaves().iter().enumerate() {
        for (j, b) in d.leaves().iter().enumerate() {
            if i == j {
                continue;
            }
            let (pa, pb) = (&paths[&a.label], &paths[&b.label]);
            let lca = pa.iter().zip(pb).take_while(|(x, y)| x.0 == y.0).last().unwrap().0 .1;
            assert_eq!(Some(root + lca), levels[i][j], "{} / {}", a.label, b.label);
        }
    }
    // leaves all sit at the same level
    fn leaf_depths(t: &Newick, depth: i64, out: &mut Vec<i64>) {
        match t {
            Newick::Leaf(_, len) => out.push(depth + len),
            Newick::Node(children, len) => {
                for c in children {
                    leaf_depths(c, depth + len, out);
                }
            }
        }
    }
    let mut depths = Vec::new();
    leaf_depths(&tree, 0, &mut depths);
    assert!(depths.iter().all(|&x| x == d.leaf_level() - root));
}

#[test]
fn newick_encodes_merge_levels() {
    let d = Dendrogram::build(&eight_points()).unwrap();
    assert_eq!(d.to_newick(), "((((x1:1,x2:1):1,x3:2):3,((x4:3,x5:3):1,x6:4):1):2,(x8:6,x7:6):1):0;");
    check_newick(&d);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, f) in [(2, 1), (3, 1), (2, 2)] {
        let sys = DigitSystem::teichmuller(&FieldParams::new(p, f, 10).unwrap());
        for n in [2, 5, 17, 40] {
            check_newick(&Dendrogram::build(&clustered_points(&mut rng, &sys, n)).unwrap());
        }
    }
}

#[test]
fn newick_quotes_awkward_labels() {
    let sys = DigitSystem::standard(&FieldParams::new(3, 1, 8).unwrap()).unwrap();
    let pts = vec![
        ("it's".to_string(), PadicNumber::from_int(&sys, 1)),
        ("a b,c".to_string(), PadicNumber::from_int(&sys, 2)),
        ("plain".to_string(), PadicNumber::from_int(&sys, 4)),
    ];
    let d = Dendrogram::build(&pts).unwrap();
    let mut paths = HashMap::new();
    leaf_paths(&parse_newick(&d.to_newick()), 0, &mut Vec::new(), &mut 0, &mut paths);
    let mut labels: Vec<&String> = paths.keys().collect();
    labels.sort();
    assert_eq!(labels, ["a b,c", "it's", "plain"]);
}

#[test]
fn dot_lists_every_edge() {
    let d = Dendrogram::build(&eight_points()).unwrap();
    let dot = d.export(ExportFormat::Dot);
    let lines: Vec<&str> = dot.lines().collect();
    assert_eq!(lines[0], "digraph dendrogram {");
    assert_eq!(*lines.last().unwrap(), "}");
    let edges: Vec<&str> = lines.iter().copied().filter(|l| l.contains("->")).collect();
    // a tree on 7 interior vertices and 8 leaves has 14 edges
    assert_eq!(edges.len(), 14);
    for e in &edges {
        let e = e.trim();
        assert!(e.ends_with("];"), "{e}");
        let (head, attrs) = e.split_once(" [").unwrap();
        let (from, to) = head.split_once(" -> ").unwrap();
        assert!(from.starts_with('n') && (to.starts_with('n') || to.starts_with('l')));
        assert!(attrs.contains("digit=") && attrs.contains("len="));
    }
    assert_eq!(lines.iter().filter(|l| l.contains("shape=box")).count(), 8);
}

#[test]
fn json_nests_children_with_digits() {
    let d = Dendrogram::build(&eight_points()).unwrap();
    let v = d.export(ExportFormat::Json);
    let v: serde_json::Value = serde_json::from_str(&v).unwrap();
    assert_eq!(v["p"], 2);
    assert_eq!(v["precision"], 16);
    fn count(v: &serde_json::Value) -> usize {
        match v.get("children") {
            Some(c) => c.as_array().unwrap().iter().map(count).sum(),
            None => 1,
        }
    }
    assert_eq!(count(&v["root"]), 8);
    assert_eq!(v["root"]["level"], 0);
}

#[test]
fn formats_parse_by_name() {
    assert_eq!("newick".parse::<ExportFormat>().unwrap(), ExportFormat::Newick);
    assert_eq!("DOT".parse::<ExportFormat>().unwrap(), ExportFormat::Dot);
    assert!("xml".parse::<ExportFormat>().is_err());
}
