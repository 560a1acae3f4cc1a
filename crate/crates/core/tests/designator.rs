//! The designator laws, judged by the independent breadth-first closure
//! oracle: correctness (designations stay in the class), uniqueness (one
//! designated form per marked occurrence), independent substructure
//! preservation, and canonical forms cutting exactly along oracle classes.

mod util;

use snacl_core::equivalence::{canonicalize, equivalent, rotations};
use snacl_core::formula::atom;
use snacl_core::structure::{leaf, pair, Structure};
use util::*;

#[test]
fn exhaustive_laws_up_to_five_leaves() {
    for n in 1..=5 {
        let universe = all_structures_distinct(n);
        for s in &universe {
            check_designator_correctness(s);
            check_designator_uniqueness(s);
            let paths = s.node_paths();
            for p in &paths {
                for q in &paths {
                    check_designator_preservation(s, p, q);
                }
            }
        }
    }
}

#[test]
fn canonical_buckets_up_to_five_leaves() {
    for n in 1..=5 {
        check_canonical_buckets(&all_structures_distinct(n));
    }
}

#[test]
fn three_leaf_universe_splits_into_two_classes() {
    // 12 arrangements of three distinct leaves; the closure predicts two
    // classes of six, and canonical forms agree
    let universe = all_structures_distinct(3);
    assert_eq!(universe.len(), 12);
    let mut canons: Vec<Structure> = universe.iter().map(|s| canonicalize(s).unwrap()).collect();
    canons.sort_by_key(|s| s.to_string());
    canons.dedup();
    assert_eq!(canons.len(), 2);
    for s in &universe {
        assert_eq!(closure(s).len(), 6);
    }
}

#[test]
fn random_structures_up_to_twelve_leaves() {
    let mut rng = Rng::new(0xD1CE);
    for round in 0..1000 {
        let n = 2 + rng.below(11);
        let s = random_structure(&mut rng, n);
        check_designator_correctness(&s);
        check_designator_uniqueness(&s);
        let paths = s.node_paths();
        let p = paths[rng.below(paths.len())].clone();
        let q = paths[rng.below(paths.len())].clone();
        check_designator_preservation(&s, &p, &q);
        let _ = round;
    }
}

#[test]
fn equivalence_matches_oracle_on_random_pairs() {
    let mut rng = Rng::new(0xBEEF);
    for _ in 0..300 {
        let n = 2 + rng.below(7);
        let s = random_structure(&mut rng, n);
        let class: Vec<Structure> = closure(&s).into_iter().collect();
        let t = class[rng.below(class.len())].clone();
        assert!(equivalent(&s, &t));
        // an unrelated structure with different leaves is never equivalent
        let u = pair(leaf(atom("zz")), s.clone());
        assert!(!equivalent(&s, &u));
    }
}

#[test]
fn rotations_cover_each_leaf_exactly_once() {
    let s = pair(pair(leaf(atom("a")), leaf(atom("b"))), leaf(atom("c")));
    let rots = rotations(&s);
    assert_eq!(rots.len(), 3);
    for (rot, _) in &rots {
        assert!(oracle_equivalent(&s, rot));
    }
}

#[test]
fn printing_and_parsing_are_inverse_on_generated_structures() {
    use snacl_core::parse::parse_structure;
    let mut rng = Rng::new(0x9A53);
    for _ in 0..500 {
        let n = 1 + rng.below(9);
        let s = random_structure(&mut rng, n);
        assert_eq!(parse_structure(&s.to_string()).unwrap(), s);
    }
}

#[test]
fn canonical_buckets_at_six_leaves() {
    check_canonical_buckets(&all_structures_distinct(6));
}

#[test]
fn printing_and_parsing_are_inverse_on_generated_formulas() {
    use snacl_core::parse::parse_formula;
    let mut rng = Rng::new(0xF0F0);
    for _ in 0..500 {
        let f = random_classical_formula(&mut rng, 6);
        assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }
}
