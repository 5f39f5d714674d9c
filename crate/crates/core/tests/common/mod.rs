#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use padico::dendrogram::LevelTree;
use padico::ok::OkElem;
use padico::{DigitSystem, FieldParams, PadicNumber, Valuation};
use rand::Rng;

/// Random leaf-labelled level tree with `n` leaves, at most `max_branch`
/// children per vertex and level gaps of 1 to 3.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize, max_branch: usize, root_level: i64) -> LevelTree {
    let mut next = 0usize;
    grow(rng, n, max_branch, root_level, &mut next)
}

fn grow<R: Rng>(rng: &mut R, n: usize, max_branch: usize, level: i64, next: &mut usize) -> LevelTree {
    if n == 1 {
        *next += 1;
        return LevelTree::leaf(format!("L{next}"));
    }
    let k = rng.gen_range(2..=max_branch.min(n));
    // split n into k positive parts
    let mut cuts: BTreeSet<usize> = BTreeSet::new();
    while cuts.len() < k - 1 {
        cuts.insert(rng.gen_range(1..n));
    }
    let mut parts = Vec::with_capacity(k);
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(n)) {
        parts.push(c - prev);
        prev = c;
    }
    let children = parts
        .into_iter()
        .map(|m| {
            let child_level = level + rng.gen_range(1..=3);
            grow(rng, m, max_branch, child_level, next)
        })
        .collect();
    LevelTree::node(level, children)
}

pub fn random_unit<R: Rng>(rng: &mut R, params: &Arc<FieldParams>) -> OkElem {
    let bound = BigInt::from(params.p()).pow(params.precision());
    loop {
        let coeffs: Vec<BigInt> = (0..params.f()).map(|_| random_below(rng, &bound)).collect();
        let x = OkElem::from_coeffs(params, coeffs).unwrap();
        if x.is_unit() {
            return x;
        }
    }
}

pub fn random_below<R: Rng>(rng: &mut R, bound: &BigInt) -> BigInt {
    let bits = bound.bits();
    loop {
        let bytes: Vec<u8> = (0..bits.div_ceil(8)).map(|_| rng.gen()).collect();
        let mut x = BigInt::from_bytes_le(num_bigint::Sign::Plus, &bytes);
        x %= BigInt::from(1u8) << bits;
        if &x < bound {
            return x;
        }
    }
}

/// Points that share long digit prefixes: each is a random extension of one
/// of a few random stems. Shifts lie in -2..=2 and every point is zero from
/// exponent N - 2 on, so all of them fit in one window of N digits.
pub fn clustered_points<R: Rng>(rng: &mut R, sys: &Arc<DigitSystem>, n: usize) -> Vec<(String, PadicNumber)> {
    let q = sys.len();
    let nd = sys.params().precision() as usize;
    let stems: Vec<(i64, Vec<usize>)> = (0..rng.gen_range(1..=4))
        .map(|_| (rng.gen_range(-2..=2), (0..nd).map(|_| rng.gen_range(0..q)).collect()))
        .collect();
    let mut out: Vec<(String, PadicNumber)> = Vec::new();
    while out.len() < n {
        let (mut shift, mut digits) = stems[rng.gen_range(0..stems.len())].clone();
        if rng.gen_ratio(1, 5) {
            shift = rng.gen_range(-2..=2);
        }
        let keep = rng.gen_range(0..=nd);
        for d in digits.iter_mut().skip(keep) {
            *d = rng.gen_range(0..q);
        }
        let top = nd - (shift + 2) as usize;
        for d in digits.iter_mut().skip(top) {
            *d = 0;
        }
        let x = PadicNumber::from_digits(sys, shift, &digits).unwrap();
        // equal on the shared window [-2, N - 2) means indistinguishable
        if out.iter().any(|(_, y)| y.agrees_to(&x, nd as i64 - 2).unwrap()) {
            continue;
        }
        out.push((format!("p{}", out.len()), x));
    }
    out
}

/// Naive agglomerative single linkage on a valuation matrix: repeatedly
/// joins the two clusters with the largest member-to-member valuation and
/// returns the level at which each pair first shares a cluster.
pub fn single_linkage(m: &[Vec<Valuation>]) -> Vec<Vec<Option<i64>>> {
    let n = m.len();
    let sim = |i: usize, j: usize| m[i][j].finite().expect("distinct points");
    let mut clusters: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut out = vec![vec![None; n]; n];
    while clusters.len() > 1 {
        let mut best = (i64::MIN, 0, 0);
        for a in 0..clusters.len() {
            for b in a + 1..clusters.len() {
                let s = clusters[a]
                    .iter()
                    .flat_map(|&i| clusters[b].iter().map(move |&j| (i, j)))
                    .map(|(i, j)| sim(i, j))
                    .max()
                    .unwrap();
                if s > best.0 {
                    best = (s, a, b);
                }
            }
        }
        let (level, a, b) = best;
        let merged = clusters.remove(b);
        for &i in &clusters[a] {
            for &j in &merged {
                out[i][j] = Some(level);
                out[j][i] = Some(level);
            }
        }
        clusters[a].extend(merged);
    }
    out
}

/// Blocks of leaves whose oracle merge level is at least k.
pub fn oracle_blocks(labels: &[String], levels: &[Vec<Option<i64>>], k: i64) -> Vec<Vec<String>> {
    let n = labels.len();
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    for i in 0..n {
        if seen[i] {
            continue;
        }
        let mut block: Vec<String> = Vec::new();
        for j in 0..n {
            if i == j || levels[i][j].is_some_and(|l| l >= k) {
                seen[j] = true;
                block.push(labels[j].clone());
            }
        }
        block.sort();
        blocks.push(block);
    }
    blocks.sort();
    blocks
}
