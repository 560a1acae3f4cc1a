//! Shared helpers for the integration suites: the independent breadth-first
//! closure oracle for structural equivalence, exhaustive structure and
//! formula enumeration, and a small deterministic generator.
//!
//! The oracle rewrites top-level shapes directly from the defining
//! equations and never touches the designator code it is used to judge.

#![allow(dead_code)]

use snacl_core::formula::{self, Formula};
use snacl_core::structure::{pair, Structure};
use std::collections::{HashSet, VecDeque};

/// Top-level rewrites generating structural equivalence: the swap
/// `(Γ, Δ) ~ (Δ, Γ)` and the shift `(Γ, (Δ, Π)) ~ ((Γ, Δ), Π)`, the latter
/// in both directions.
fn top_rewrites(s: &Structure) -> Vec<Structure> {
    let mut out = Vec::new();
    if let Structure::Pair(a, b) = s {
        out.push(pair((**b).clone(), (**a).clone()));
        if let Structure::Pair(ba, bb) = &**b {
            out.push(pair(pair((**a).clone(), (**ba).clone()), (**bb).clone()));
        }
        if let Structure::Pair(aa, ab) = &**a {
            out.push(pair((**aa).clone(), pair((**ab).clone(), (**b).clone())));
        }
    }
    out
}

/// The whole `~`-class of `s`, by breadth-first closure.
pub fn closure(s: &Structure) -> HashSet<Structure> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(s.clone());
    queue.push_back(s.clone());
    while let Some(cur) = queue.pop_front() {
        for next in top_rewrites(&cur) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

pub fn oracle_equivalent(s: &Structure, t: &Structure) -> bool {
    closure(s).contains(t)
}

/// Every plane binary tree over the given leaf sequence.
pub fn all_trees(leaves: &[Structure]) -> Vec<Structure> {
    match leaves {
        [] => vec![],
        [one] => vec![one.clone()],
        _ => {
            let mut out = Vec::new();
            for split in 1..leaves.len() {
                for l in all_trees(&leaves[..split]) {
                    for r in all_trees(&leaves[split..]) {
                        out.push(pair(l.clone(), r));
                    }
                }
            }
            out
        }
    }
}

/// Every permutation of the input (Heap's algorithm, deterministic order).
pub fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    fn go<T: Clone>(work: &mut Vec<T>, k: usize, out: &mut Vec<Vec<T>>) {
        if k <= 1 {
            out.push(work.clone());
            return;
        }
        for i in 0..k {
            go(work, k - 1, out);
            if k % 2 == 0 {
                work.swap(i, k - 1);
            } else {
                work.swap(0, k - 1);
            }
        }
    }
    let mut work = items.to_vec();
    let mut out = Vec::new();
    let n = work.len();
    go(&mut work, n, &mut out);
    out
}

/// All structures with exactly `n` pairwise distinct atom leaves, over all
/// leaf orders and tree shapes.
pub fn all_structures_distinct(n: usize) -> Vec<Structure> {
    let names = ["a", "b", "c", "d", "e", "f"];
    let leaves: Vec<Structure> = names[..n]
        .iter()
        .map(|x| Structure::Leaf(formula::atom(x)))
        .collect();
    let mut out = Vec::new();
    for perm in permutations(&leaves) {
        out.extend(all_trees(&perm));
    }
    out
}

/// xorshift64*: deterministic, seedable, no dependencies.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed.max(1))
    }

    pub fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

/// Random structure with `n` leaves drawn from a three-atom alphabet
/// (duplicates on purpose).
pub fn random_structure(rng: &mut Rng, n: usize) -> Structure {
    let names = ["a", "b", "c"];
    let leaves: Vec<Structure> = (0..n)
        .map(|_| Structure::Leaf(formula::atom(names[rng.below(3)])))
        .collect();
    random_tree(rng, &leaves)
}

fn random_tree(rng: &mut Rng, leaves: &[Structure]) -> Structure {
    match leaves {
        [one] => one.clone(),
        _ => {
            let split = 1 + rng.below(leaves.len() - 1);
            pair(
                random_tree(rng, &leaves[..split]),
                random_tree(rng, &leaves[split..]),
            )
        }
    }
}

/// Intuitionistic formulas with at most `max_connectives` connectives.
/// `rich` uses two atoms, both units, all five binaries and one bang label;
/// the lean alphabet keeps enumeration feasible at larger sizes.
pub fn int_formulas(max_connectives: usize, rich: bool) -> Vec<Formula> {
    let atoms: Vec<Formula> = if rich {
        vec![
            formula::atom("a"),
            formula::atom("b"),
            Formula::One,
            Formula::Top,
        ]
    } else {
        vec![formula::atom("a")]
    };
    let mut by_size: Vec<Vec<Formula>> = vec![atoms];
    for size in 1..=max_connectives {
        let mut here = Vec::new();
        for left_size in 0..size {
            let right_size = size - 1 - left_size;
            for l in &by_size[left_size] {
                for r in &by_size[right_size] {
                    here.push(formula::tensor(l.clone(), r.clone()));
                    here.push(formula::impl_r(l.clone(), r.clone()));
                    if rich {
                        here.push(formula::impl_l(l.clone(), r.clone()));
                        here.push(formula::with(l.clone(), r.clone()));
                        here.push(formula::plus(l.clone(), r.clone()));
                    }
                }
            }
        }
        for f in &by_size[size - 1] {
            here.push(formula::bang("k", f.clone()));
        }
        by_size.push(here);
    }
    by_size.into_iter().flatten().collect()
}

use snacl_core::equivalence::{canonicalize, designate_remainder};
use snacl_core::structure::Path;

/// Designator correctness: every subtree designation lands in the
/// `~`-class computed by the oracle.
pub fn check_designator_correctness(s: &Structure) {
    let class = closure(s);
    for p in s.node_paths() {
        let rest = designate_remainder(s, &p).unwrap();
        let sub = s.at(&p).unwrap().clone();
        let designated = pair(rest, sub);
        assert!(
            class.contains(&designated),
            "designation of {} at {} gives {}, outside its class",
            s,
            p,
            designated
        );
    }
}

/// Designator uniqueness: all members of a marked class designate the
/// marked occurrence to the same remainder.
pub fn check_designator_uniqueness(s: &Structure) {
    for p in s.node_paths() {
        check_designator_uniqueness_at(s, &p);
    }
}

pub fn check_designator_uniqueness_at(s: &Structure, p: &Path) {
    let marker = Structure::Leaf(formula::atom("mrk0"));
    let marked = s.replace(p, marker).unwrap();
    let expected = designate_remainder(&marked, &marker_path(&marked)).unwrap();
    for member in closure(&marked) {
        let q = marker_path(&member);
        let got = designate_remainder(&member, &q).unwrap();
        assert_eq!(
            got, expected,
            "marked designation differs between {} and {}",
            marked, member
        );
    }
}

fn marker_path(s: &Structure) -> Path {
    let hits: Vec<Path> = s
        .leaves()
        .into_iter()
        .filter(|(_, f)| matches!(f, Formula::Atom(a) if a == "mrk0"))
        .map(|(p, _)| p)
        .collect();
    assert_eq!(hits.len(), 1, "marker must occur exactly once in {}", s);
    hits.into_iter().next().unwrap()
}

/// Independent substructure preservation: a marker-free subtree survives
/// designation verbatim, and substituting it commutes with designation.
pub fn check_designator_preservation(s: &Structure, marker_at: &Path, delta_at: &Path) {
    if marker_at.is_prefix_of(delta_at) || delta_at.is_prefix_of(marker_at) {
        return;
    }
    let sentinel = Structure::Leaf(formula::atom("sent0"));
    let delta = s.at(delta_at).unwrap().clone();
    let hollowed = s.replace(delta_at, sentinel).unwrap();
    let skeleton = designate_remainder(&hollowed, marker_at).unwrap();
    let spots: Vec<Path> = skeleton
        .leaves()
        .into_iter()
        .filter(|(_, f)| matches!(f, Formula::Atom(a) if a == "sent0"))
        .map(|(p, _)| p)
        .collect();
    assert_eq!(spots.len(), 1, "sentinel lost by designation of {}", hollowed);
    let spot = &spots[0];

    // the original subtree appears verbatim
    let direct = designate_remainder(s, marker_at).unwrap();
    assert_eq!(
        direct,
        skeleton.replace(spot, delta).unwrap(),
        "subtree at {} not preserved by designation of {}",
        delta_at,
        s
    );

    // and replacing it before or after designation commutes
    let pi = pair(
        Structure::Leaf(formula::atom("x9")),
        Structure::Leaf(formula::atom("y9")),
    );
    let replaced_first = s.replace(delta_at, pi.clone()).unwrap();
    assert_eq!(
        designate_remainder(&replaced_first, marker_at).unwrap(),
        skeleton.replace(spot, pi).unwrap(),
        "substitution does not commute with designation of {}",
        s
    );
}

/// Canonical forms cut the universe exactly into oracle classes.
pub fn check_canonical_buckets(universe: &[Structure]) {
    use std::collections::HashMap;
    let mut buckets: HashMap<Structure, HashSet<Structure>> = HashMap::new();
    for s in universe {
        buckets
            .entry(canonicalize(s).unwrap())
            .or_default()
            .insert(s.clone());
    }
    for s in universe {
        let class = closure(s);
        let bucket = &buckets[&canonicalize(s).unwrap()];
        assert_eq!(
            &class, bucket,
            "canonical bucket of {} does not match its oracle class",
            s
        );
    }
}

/// Random classical formula with at most `max` connectives.
pub fn random_classical_formula(rng: &mut Rng, max: usize) -> Formula {
    if max == 0 || rng.below(3) == 0 {
        return match rng.below(6) {
            0 => formula::atom("a"),
            1 => formula::atom("b"),
            2 => formula::negatom("a"),
            3 => formula::negatom("b"),
            4 => Formula::One,
            _ => Formula::Top,
        };
    }
    let half = (max - 1) / 2;
    match rng.below(6) {
        0 => formula::tensor(
            random_classical_formula(rng, half),
            random_classical_formula(rng, max - 1 - half),
        ),
        1 => formula::par(
            random_classical_formula(rng, half),
            random_classical_formula(rng, max - 1 - half),
        ),
        2 => formula::plus(
            random_classical_formula(rng, half),
            random_classical_formula(rng, max - 1 - half),
        ),
        3 => formula::with(
            random_classical_formula(rng, half),
            random_classical_formula(rng, max - 1 - half),
        ),
        4 => formula::bang(["w", "e", "c"][rng.below(3)], random_classical_formula(rng, max - 1)),
        _ => formula::quest(["w", "e", "c"][rng.below(3)], random_classical_formula(rng, max - 1)),
    }
}
