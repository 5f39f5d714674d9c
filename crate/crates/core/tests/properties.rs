mod common;

use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use padico::dendrogram::{encode_dendrogram, valuation_matrix, Dendrogram, LevelTree};
use padico::encoder::{baire_distance, Preset};
use padico::genus1::{legendre_j, scaling, translation_length};
use padico::moduli::{cross_ratio, MobiusTransform, PuncturedLine};
use padico::{DigitKind, DigitSystem, FieldParams, PadicNumber, ProjectivePoint, Valuation};

use common::{clustered_points, random_tree, single_linkage};

const N: u32 = 12;

fn system(p: u64, f: usize, kind: DigitKind) -> Arc<DigitSystem> {
    DigitSystem::of_kind(kind, &FieldParams::new(p, f, N).unwrap()).unwrap()
}

fn field() -> impl Strategy<Value = (u64, usize)> {
    (prop::sample::select(vec![2u64, 3, 5]), 1usize..=3)
}

fn raw_number() -> impl Strategy<Value = (i64, Vec<usize>)> {
    (-3i64..=3, prop::collection::vec(any::<usize>(), N as usize))
}

fn number(sys: &Arc<DigitSystem>, shift: i64, raw: &[usize]) -> Option<PadicNumber> {
    let digits: Vec<usize> = raw.iter().map(|d| d % sys.len()).collect();
    let x = PadicNumber::from_digits(sys, shift, &digits).unwrap();
    (!x.is_zero()).then_some(x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ultrametric_and_multiplicative(
        (p, f) in field(),
        (sx, dx) in raw_number(),
        (sy, dy) in raw_number(),
    ) {
        let sys = system(p, f, DigitKind::Teichmuller);
        let (Some(x), Some(y)) = (number(&sys, sx, &dx), number(&sys, sy, &dy)) else {
            return Ok(());
        };
        let (a, b) = (x.valuation().finite().unwrap(), y.valuation().finite().unwrap());
        if let Valuation::Finite(c) = x.add(&y).unwrap().valuation() {
            prop_assert!(c >= a.min(b));
            if a != b {
                prop_assert_eq!(c, a.min(b));
            }
        }
        prop_assert_eq!(x.mul(&y).unwrap().valuation(), Valuation::Finite(a + b));
        let one = PadicNumber::one(&sys);
        prop_assert!(x.mul(&x.inv().unwrap()).unwrap().coincides(&one).unwrap());
    }

    #[test]
    fn digit_round_trip(
        (p, f) in field(),
        kind in prop::sample::select(vec![DigitKind::Teichmuller, DigitKind::Standard]),
        shift in -4i64..=4,
        raw in prop::collection::vec(any::<usize>(), N as usize),
    ) {
        prop_assume!(kind == DigitKind::Teichmuller || f == 1);
        let sys = system(p, f, kind);
        let digits: Vec<usize> = raw.iter().map(|d| d % sys.len()).collect();
        let x = PadicNumber::from_digits(&sys, shift, &digits).unwrap();
        if x.is_zero() {
            return Ok(());
        }
        let lead = digits.iter().position(|&d| d != 0).unwrap();
        prop_assert_eq!(x.shift(), shift + lead as i64);
        let mut back = x.digits();
        back.truncate(N as usize - lead);
        prop_assert_eq!(&back[..], &digits[lead..]);
    }

    #[test]
    fn dendrogram_matches_valuations(seed in any::<u64>(), n in 2usize..24, pf in prop::sample::select(vec![(2u64, 1usize), (3, 1), (2, 2)])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = system(pf.0, pf.1, DigitKind::Teichmuller);
        let points = clustered_points(&mut rng, &sys, n);
        let d = Dendrogram::build(&points).unwrap();
        let m = valuation_matrix(&points).unwrap();
        let levels = d.merge_levels();
        let idx: Vec<usize> = points.iter().map(|(l, _)| d.leaf_index(l).unwrap()).collect();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    prop_assert_eq!(levels[idx[i]][idx[j]], m[i][j].finite());
                }
            }
        }
        // three-point condition: the two smallest of the three levels agree
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut t = [levels[idx[i]][idx[j]], levels[idx[i]][idx[k]], levels[idx[j]][idx[k]]];
                    t.sort();
                    prop_assert_eq!(t[0], t[1]);
                }
            }
        }
        prop_assert_eq!(single_linkage(&m).iter().flatten().filter(|x| x.is_some()).count(), n * (n - 1));
    }

    #[test]
    fn permuting_inputs_gives_the_same_tree(seed in any::<u64>(), n in 2usize..16) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = system(3, 1, DigitKind::Teichmuller);
        let points = clustered_points(&mut rng, &sys, n);
        let mut reversed = points.clone();
        reversed.reverse();
        let a = LevelTree::from(&Dendrogram::build(&points).unwrap());
        let b = LevelTree::from(&Dendrogram::build(&reversed).unwrap());
        prop_assert_eq!(a.canonical(true), b.canonical(true));
    }

    #[test]
    fn representatives_do_not_matter(seed in any::<u64>(), n in 2usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let teich = system(5, 1, DigitKind::Teichmuller);
        let points = clustered_points(&mut rng, &teich, n);
        let std = system(5, 1, DigitKind::Standard);
        let moved: Vec<(String, PadicNumber)> =
            points.iter().map(|(l, x)| (l.clone(), x.with_digit_system(&std).unwrap())).collect();
        let a = LevelTree::from(&Dendrogram::build(&points).unwrap());
        let b = LevelTree::from(&Dendrogram::build(&moved).unwrap());
        prop_assert_eq!(a.canonical(true), b.canonical(true));
    }

    #[test]
    fn section_rebuilds_tree(seed in any::<u64>(), n in 1usize..10, pf in prop::sample::select(vec![(2u64, 1usize), (3, 1), (2, 2), (7, 1)])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = FieldParams::new(pf.0, pf.1, 40).unwrap();
        let sys = DigitSystem::teichmuller(&params);
        let tree = random_tree(&mut rng, n, params.q() as usize, 0);
        let points = encode_dendrogram(&tree, &sys).unwrap();
        prop_assert_eq!(points.len(), n);
        let back = LevelTree::from(&Dendrogram::build(&points).unwrap());
        prop_assert!(back.isomorphic(&tree));
    }

    #[test]
    fn contraction_drops_one_dimension(seed in any::<u64>(), n in 2usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tree = random_tree(&mut rng, n, 4, 0);
        let dim = tree.cell_dimension();
        prop_assert!(dim <= n.saturating_sub(2));
        for e in tree.interior_edges() {
            let c = tree.contract_edge(e.id).unwrap();
            prop_assert_eq!(c.cell_dimension(), dim - 1);
            prop_assert_eq!(c.labels(), tree.labels());
            prop_assert!(!c.clades().contains_key(&e.key()));
        }
    }

    #[test]
    fn translation_length_of_powers(d in 1i64..=3, k in 1i64..=4, unit in 1i64..40, p in prop::sample::select(vec![2u64, 3, 5])) {
        prop_assume!(unit % p as i64 != 0);
        let sys = system(p, 1, DigitKind::Teichmuller);
        let c = PadicNumber::from_int(&sys, unit).mul(&PadicNumber::from_int(&sys, p as i64).pow(d).unwrap()).unwrap();
        let m = scaling(&c).unwrap();
        let mut mk = m.clone();
        for _ in 1..k {
            mk = mk.compose(&m).unwrap();
        }
        prop_assert_eq!(translation_length(&mk).unwrap(), (k * d) as u64);
        let inverse = m.adjugate();
        prop_assert_eq!(translation_length(&inverse).unwrap(), d as u64);
    }

    #[test]
    fn cross_ratio_is_mobius_invariant(
        pts in prop::collection::btree_set(-50i64..50, 4),
        g in (1i64..9, -9i64..9, -9i64..9, 1i64..9),
    ) {
        let sys = DigitSystem::teichmuller(&FieldParams::new(3, 1, 24).unwrap());
        let g = match MobiusTransform::from_ints(&sys, [g.0, g.1, g.2, g.3]) {
            Ok(g) => g,
            Err(_) => return Ok(()),
        };
        let z: Vec<ProjectivePoint> = pts.iter().map(|&x| PadicNumber::from_int(&sys, x).into()).collect();
        let before = cross_ratio(&z[0], &z[1], &z[2], &z[3]).unwrap();
        let moved: Vec<ProjectivePoint> = z.iter().map(|x| g.apply(x).unwrap()).collect();
        let after = cross_ratio(&moved[0], &moved[1], &moved[2], &moved[3]).unwrap();
        match (before.finite(), after.finite()) {
            (Some(a), Some(b)) => prop_assert!(a.agrees_to(b, 8).unwrap()),
            _ => prop_assert!(before.is_infinity() && after.is_infinity()),
        }
    }

    #[test]
    fn normalising_keeps_the_labels(pts in prop::collection::btree_set(-40i64..40, 4..7)) {
        let sys = DigitSystem::teichmuller(&FieldParams::new(5, 1, 20).unwrap());
        let line = PuncturedLine::new(
            pts.iter().enumerate().map(|(i, &x)| (format!("z{i}"), PadicNumber::from_int(&sys, x).into())).collect(),
        ).unwrap();
        let norm = line.normalize(["z0", "z1", "z2"]).unwrap();
        prop_assert_eq!(norm.labels(), line.labels());
        prop_assert!(norm.get("z0").unwrap().finite().unwrap().is_zero());
        prop_assert!(norm.get("z2").unwrap().is_infinity());
    }

    #[test]
    fn j_invariant_symmetry(l in 2i64..500, p in prop::sample::select(vec![3u64, 5, 7])) {
        let sys = DigitSystem::teichmuller(&FieldParams::new(p, 1, 24).unwrap());
        let lambda = PadicNumber::from_int(&sys, l);
        let one = PadicNumber::one(&sys);
        let variants = [
            one.sub(&lambda).unwrap(),
            lambda.inv().unwrap(),
        ];
        let j = legendre_j(&lambda).unwrap();
        for other in variants {
            let jo = legendre_j(&other).unwrap();
            prop_assert_eq!(jo.valuation, j.valuation);
            if let Valuation::Finite(vj) = j.valuation {
                prop_assert!(j.value.agrees_to(&jo.value, vj + 8).unwrap());
            }
        }
    }

    #[test]
    fn encodings_are_isometric(
        s in prop::collection::vec(0usize..4, 0..20),
        t in prop::collection::vec(0usize..4, 0..20),
        preset in prop::sample::select(Preset::ALL.to_vec()),
    ) {
        let letters = ["A", "G", "C", "T"];
        let t = if preset.has_blank() { t } else { let mut t = t; t.resize(s.len(), 0); t };
        let s: Vec<&str> = s.iter().map(|&i| letters[i]).collect();
        let t: Vec<&str> = t.iter().map(|&i| letters[i]).collect();
        let map = preset.map(24).unwrap();
        let diff = map.encode(&s).unwrap().value.sub(&map.encode(&t).unwrap().value).unwrap();
        let baire = baire_distance(&s, &t, preset.p());
        if s == t {
            prop_assert!(diff.is_zero());
        } else {
            prop_assert_eq!(diff.norm().unwrap(), baire);
        }
    }
}

#[test]
fn big_integer_valuations() {
    let sys = system(3, 1, DigitKind::Standard);
    let x = PadicNumber::from_bigint(&sys, &(BigInt::from(3).pow(7) * 5));
    assert_eq!(x.valuation(), Valuation::Finite(7));
}
