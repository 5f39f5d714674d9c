use std::sync::Arc;

use crate::digits::DigitSystem;
use crate::error::{Error, Result};
use crate::number::PadicNumber;

use super::LevelTree;

/// Codes whose dendrogram is `tree`, levels included.
///
/// Sibling edges take digit indices 0, 1, 2, ... left to right. At the
/// root the rightmost child takes 1 instead, so with two root children the
/// leftmost leaf is coded 0 and the rightmost 1.
pub fn encode_dendrogram(tree: &LevelTree, sys: &Arc<DigitSystem>) -> Result<Vec<(String, PadicNumber)>> {
    tree.validate()?;
    let q = sys.params().q();
    let branching = tree.max_branching();
    if branching as u64 > q {
        return Err(Error::BranchingExceedsQ { branching, q });
    }
    let LevelTree::Node { level: root, .. } = tree else {
        let LevelTree::Leaf(label) = tree else { unreachable!() };
        return Ok(vec![(label.clone(), PadicNumber::zero(sys))]);
    };
    let span = tree.max_level().unwrap_or(*root) - root + 1;
    let n = sys.params().precision() as i64;
    if span > n {
        return Err(Error::PrecisionExhausted(format!("tree spans {span} levels, precision is {n}")));
    }

    fn walk(t: &LevelTree, root: i64, is_root: bool, digits: &mut Vec<usize>, out: &mut Vec<(String, Vec<usize>)>) {
        match t {
            LevelTree::Leaf(label) => out.push((label.clone(), digits.clone())),
            LevelTree::Node { level, children } => {
                let k = children.len();
                let at = (level - root) as usize;
                for (i, c) in children.iter().enumerate() {
                    let d = match (is_root, i) {
                        (true, 0) => 0,
                        (true, i) if i == k - 1 => 1,
                        (true, i) => i + 1,
                        (false, i) => i,
                    };
                    let saved = digits.clone();
                    if digits.len() <= at {
                        digits.resize(at + 1, 0);
                    }
                    digits[at] = d;
                    walk(c, root, false, digits, out);
                    *digits = saved;
                }
            }
        }
    }
    let mut raw = Vec::new();
    walk(tree, *root, true, &mut Vec::new(), &mut raw);
    raw.into_iter().map(|(label, digits)| Ok((label, PadicNumber::from_digits(sys, *root, &digits)?))).collect()
}
