//! Acceptance suite: one test per criterion, each printing a pass line
//! (run with `--nocapture` to see them). Every tolerance is pinned here.
//!
//! 1. designator laws, exhaustively to 5 leaves and on 10,000 random
//!    structures up to 12 leaves, against the closure oracle;
//! 2. the four golden derivations check in strict mode, rule for rule;
//! 3. the two counterexamples saturate in the two-sided systems while
//!    their translations are classically provable, each within 60 s;
//! 4. conservativity sweep: two-sided provability and classical
//!    provability of the translation agree on an enumerated corpus of at
//!    least 300 sequents, and every classical proof lowers;
//! 5. polarization: every provable translated sequent, and every sequent
//!    inside its proof, has exactly one positive leaf and h-sum n-1;
//! 6. cut admissibility, empirically: 100 cut-composed conclusions are
//!    re-proved cut-free within depth 14;
//! 7. the extended system accepts every base-system proof unchanged and
//!    recaptures the reassociation counterexample, whose lowered proof
//!    checks;
//! 8. search verdicts with and without canonical-form memoization agree
//!    on the low-connective classical corpus.

mod util;

use snacl_core::classical::{check_proof, Mode, Proof, Rule};
use snacl_core::embedding::{
    classify, h_count, lower_proof, polarizable, translate_sequent, Polarity,
};
use snacl_core::equivalence::designate_remainder;
use snacl_core::formula::{self, negate, Formula};
use snacl_core::intuitionistic::{check_proof_i, IProof, ISequent, SystemConfig};
use snacl_core::parse::parse_intuitionistic_sequent;
use snacl_core::search::{
    prove_classical, prove_classical_with_options, prove_intuitionistic, Budget, SearchOutcome,
};
use snacl_core::sexpr::{parse_proof, AnyProof};
use snacl_core::signature::Signature;
use snacl_core::structure::{leaf, pair, Structure};
use std::collections::HashSet;
use std::path::PathBuf;
use std::sync::OnceLock;
use std::time::Instant;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn read(name: &str) -> String {
    let path = corpus_dir().join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {}", path.display(), e))
}

fn golden_classical(name: &str) -> Proof {
    match parse_proof(&read(&format!("proofs/{}", name))).unwrap() {
        AnyProof::Classical(p) => p,
        _ => panic!("{} is not classical", name),
    }
}

fn sig(name: &str) -> Signature {
    Signature::load(&read(name)).unwrap()
}

fn conclude(criterion: u32, detail: String) {
    println!("criterion {}: PASS — {}", criterion, detail);
}

// ---------------------------------------------------------------- corpus

struct ConsEntry {
    sequent: ISequent,
    translation: Structure,
    int_proof: Option<IProof>,
    cls_proof: Option<Proof>,
}

struct ConsCorpus {
    sig: Signature,
    entries: Vec<ConsEntry>,
}

static CORPUS: OnceLock<ConsCorpus> = OnceLock::new();

fn cons_sig() -> Signature {
    Signature::load("label w : W\nlabel e : E\nlabel c : C\nlabel k : C, W, E\n").unwrap()
}

fn cons_budget() -> Budget {
    Budget::default()
}

/// Deterministic enumeration: atoms and units, all one-connective
/// formulas over them, a strided slice of two-connective formulas, glued
/// into sequents of at most five connectives.
fn cons_sequents() -> Vec<ISequent> {
    let atoms: Vec<Formula> = vec![
        formula::atom("a"),
        formula::atom("b"),
        Formula::One,
        Formula::Top,
    ];
    let mut one = Vec::new();
    for l in &atoms {
        for r in &atoms {
            one.push(formula::tensor(l.clone(), r.clone()));
            one.push(formula::impl_r(l.clone(), r.clone()));
            one.push(formula::impl_l(l.clone(), r.clone()));
            one.push(formula::with(l.clone(), r.clone()));
            one.push(formula::plus(l.clone(), r.clone()));
        }
    }
    for label in ["w", "e", "k"] {
        for x in &atoms {
            one.push(formula::bang(label, x.clone()));
        }
    }
    let mut two = Vec::new();
    for (i, f) in one.iter().enumerate().step_by(3) {
        let g = &atoms[i % atoms.len()];
        two.push(formula::tensor(f.clone(), g.clone()));
        two.push(formula::impl_r(g.clone(), f.clone()));
        two.push(formula::impl_l(f.clone(), g.clone()));
    }

    let mut out = Vec::new();
    let mut push = |ant: Structure, succ: &Formula| {
        out.push(ISequent::new(ant, succ.clone()));
    };
    for h in atoms.iter().chain(&one) {
        push(Structure::Empty, h);
    }
    for f in atoms.iter().chain(&one) {
        for h in &atoms {
            push(leaf(f.clone()), h);
        }
    }
    for f in &atoms {
        for h in &one {
            push(leaf(f.clone()), h);
        }
    }
    for f in &atoms {
        for g in &atoms {
            for h in &atoms {
                push(pair(leaf(f.clone()), leaf(g.clone())), h);
            }
        }
    }
    for h in &two {
        push(Structure::Empty, h);
    }
    for (i, f) in one.iter().enumerate().step_by(5) {
        let h = &two[(i * 7 + 1) % two.len()];
        push(leaf(f.clone()), h);
    }
    for (i, f) in two.iter().enumerate().step_by(4) {
        let h = &one[(i * 11 + 2) % one.len()];
        push(leaf(f.clone()), h);
    }
    // identities over every one-connective formula
    for f in &one {
        push(leaf(f.clone()), f);
    }
    // three-leaf antecedents in both association orders
    let deep_pool: Vec<Formula> = vec![
        formula::atom("a"),
        formula::atom("b"),
        formula::bang("w", formula::atom("a")),
        formula::impl_r(formula::atom("a"), formula::atom("b")),
    ];
    let deep_succ: Vec<Formula> = vec![
        formula::atom("a"),
        formula::tensor(formula::atom("a"), formula::atom("b")),
        formula::tensor(
            formula::atom("a"),
            formula::tensor(formula::atom("b"), formula::atom("a")),
        ),
    ];
    for f in &deep_pool {
        for g in &deep_pool {
            for h in &deep_pool {
                for s in &deep_succ {
                    push(
                        pair(pair(leaf(f.clone()), leaf(g.clone())), leaf(h.clone())),
                        s,
                    );
                    push(
                        pair(leaf(f.clone()), pair(leaf(g.clone()), leaf(h.clone()))),
                        s,
                    );
                }
            }
        }
    }
    out.retain(|s| {
        s.antecedent.connective_count() + s.succedent.connective_count() <= 5
    });
    out
}

fn corpus() -> &'static ConsCorpus {
    CORPUS.get_or_init(|| {
        let sig = cons_sig();
        let budget = cons_budget();
        let entries = cons_sequents()
            .into_iter()
            .map(|sequent| {
                let translation = translate_sequent(&sequent).unwrap();
                let int_proof =
                    match prove_intuitionistic(&sequent, &sig, SystemConfig::base(), &budget) {
                        SearchOutcome::Proved(p) => Some(p),
                        SearchOutcome::Exhausted { .. } => None,
                        SearchOutcome::BudgetExceeded => {
                            panic!("budget exceeded on two-sided `{}`", sequent)
                        }
                    };
                let cls_proof = match prove_classical(&translation, &sig, &budget) {
                    SearchOutcome::Proved(p) => Some(p),
                    SearchOutcome::Exhausted { .. } => None,
                    SearchOutcome::BudgetExceeded => {
                        panic!("budget exceeded on classical `|- {}`", translation)
                    }
                };
                ConsEntry {
                    sequent,
                    translation,
                    int_proof,
                    cls_proof,
                }
            })
            .collect();
        ConsCorpus { sig, entries }
    })
}

// ------------------------------------------------------------- criteria

#[test]
fn criterion_1_designator_suite() {
    let start = Instant::now();
    for n in 1..=5 {
        let universe = util::all_structures_distinct(n);
        for s in &universe {
            util::check_designator_correctness(s);
            util::check_designator_uniqueness(s);
            let paths = s.node_paths();
            for p in &paths {
                for q in &paths {
                    util::check_designator_preservation(s, p, q);
                }
            }
        }
        util::check_canonical_buckets(&universe);
    }
    let mut rng = util::Rng::new(0xACCE9717);
    for _ in 0..10_000 {
        let n = 2 + rng.below(11);
        let s = util::random_structure(&mut rng, n);
        util::check_designator_correctness(&s);
        let paths = s.node_paths();
        let p = paths[rng.below(paths.len())].clone();
        let q = paths[rng.below(paths.len())].clone();
        util::check_designator_uniqueness_at(&s, &p);
        util::check_designator_preservation(&s, &p, &q);
    }
    conclude(
        1,
        format!(
            "designator laws exhaustive to 5 leaves and on 10000 random structures ({} ms)",
            start.elapsed().as_millis()
        ),
    );
}

#[test]
fn criterion_2_golden_derivations() {
    let cases: [(&str, &str, &[&str]); 4] = [
        (
            "exchange_identity.sexp",
            "empty.sig",
            &["par", "e", "tensor", "init", "init"],
        ),
        (
            "curry_assoc.sexp",
            "empty.sig",
            &["par", "a2", "tensor", "init", "init"],
        ),
        (
            "assoc_embedding.sexp",
            "assoc.sig",
            &[
                "par", "par", "par", "a1", "e", "qa1", "e", "a2", "a2", "tensor", "tensor",
                "prom", "der", "init", "init", "init",
            ],
        ),
        (
            "zero_embedding.sexp",
            "zero.sig",
            &[
                "a1", "e", "tensor", "par", "a1", "e", "qa1", "der", "tensor", "tensor", "init",
                "par", "top", "init", "top",
            ],
        ),
    ];
    for (file, sig_file, rules) in cases {
        let p = golden_classical(file);
        check_proof(&p, &sig(sig_file), Mode::Strict)
            .unwrap_or_else(|e| panic!("{} fails strict check: {}", file, e));
        let used: Vec<&str> = p.rules_used().iter().map(|r| r.name()).collect();
        assert_eq!(used, rules, "{} rule sequence drifted", file);
    }
    conclude(2, "four golden derivations check strictly, rule for rule".to_string());
}

#[test]
fn criterion_3_counterexamples() {
    let deep = Budget {
        max_depth: 30,
        max_contractions: 0,
        ..Budget::default()
    };
    let assoc_sig = sig("assoc.sig");
    let zero_sig = sig("zero.sig");

    let mut timings = Vec::new();
    let mut timed = |name: &str, f: &mut dyn FnMut() -> bool| {
        let t = Instant::now();
        let ok = f();
        let secs = t.elapsed().as_secs_f64();
        assert!(ok, "{} has the wrong outcome", name);
        assert!(secs <= 60.0, "{} took {:.1}s", name, secs);
        timings.push(format!("{} {:.2}s", name, secs));
    };

    let assoc_seq =
        parse_intuitionistic_sequent("((a * b) * ![a1]c) |- (a * (b * ![a1]c))").unwrap();
    timed("reassociation saturates", &mut || {
        prove_intuitionistic(&assoc_seq, &assoc_sig, SystemConfig::base(), &deep).is_exhausted()
    });
    let assoc_cls = translate_sequent(&assoc_seq).unwrap();
    timed("reassociation translation proves", &mut || {
        prove_classical(&assoc_cls, &assoc_sig, &Budget::default()).is_proved()
    });

    let zero_seq = parse_intuitionistic_sequent(
        "(![a]((r <- (0 -> q)) <- p), ((s <- p) -> 0)) |- r",
    )
    .unwrap();
    timed("zero counterexample saturates", &mut || {
        prove_intuitionistic(
            &zero_seq,
            &zero_sig,
            SystemConfig::base().with_zero(),
            &deep,
        )
        .is_exhausted()
    });
    let zero_cls = translate_sequent(&zero_seq).unwrap();
    assert_eq!(zero_cls, golden_classical("zero_embedding.sexp").sequent);
    timed("zero translation proves", &mut || {
        prove_classical(&zero_cls, &zero_sig, &Budget::default()).is_proved()
    });

    conclude(3, timings.join(", "));
}

#[test]
fn criterion_4_conservativity_sweep() {
    let start = Instant::now();
    let c = corpus();
    assert!(
        c.entries.len() >= 300,
        "corpus too small: {}",
        c.entries.len()
    );
    let mut proved = 0;
    let mut fallbacks = 0;
    for e in &c.entries {
        assert_eq!(
            e.int_proof.is_some(),
            e.cls_proof.is_some(),
            "conservativity failed on `{}` (translation `|- {}`)",
            e.sequent,
            e.translation
        );
        if let Some(cp) = &e.cls_proof {
            proved += 1;
            let lowered = lower_proof(cp, &c.sig, SystemConfig::base())
                .unwrap_or_else(|err| panic!("lowering `{}` failed: {}", e.sequent, err));
            assert_eq!(lowered.proof.sequent, e.sequent);
            check_proof_i(&lowered.proof, &c.sig, SystemConfig::base()).unwrap();
            fallbacks += lowered.fallbacks;
        }
    }
    conclude(
        4,
        format!(
            "{} sequents agree on both sides, {} provable, all lowered ({} search-backed steps, {} ms)",
            c.entries.len(),
            proved,
            fallbacks,
            start.elapsed().as_millis()
        ),
    );
}

#[test]
fn criterion_5_polarization() {
    let c = corpus();
    let mut sequents_checked = 0;
    for e in &c.entries {
        let Some(cp) = &e.cls_proof else { continue };
        // every sequent inside the proof is provable and in the image, so
        // the polarization law must hold throughout
        let mut stack = vec![cp];
        while let Some(node) = stack.pop() {
            let leaves = node.sequent.leaves();
            let n = leaves.len();
            let h_sum: u32 = leaves
                .iter()
                .map(|(_, f)| {
                    u32::from(h_count(f).unwrap_or_else(|| {
                        panic!("leaf {} outside the image in a proof of `{}`", f, e.sequent)
                    }))
                })
                .sum();
            assert_eq!(h_sum as usize, n - 1, "h-sum off in `|- {}`", node.sequent);
            let positives = leaves
                .iter()
                .filter(|(_, f)| classify(f) == Polarity::Positive)
                .count();
            assert_eq!(positives, 1, "positive count off in `|- {}`", node.sequent);
            assert!(polarizable(&node.sequent).unwrap().is_some());
            stack.extend(&node.premises);
            sequents_checked += 1;
        }
    }
    assert!(sequents_checked > 300);
    conclude(
        5,
        format!(
            "exactly one positive leaf and h-sum n-1 across {} proof sequents",
            sequents_checked
        ),
    );
}

#[test]
fn criterion_6_cut_admissibility() {
    let start = Instant::now();
    let c = corpus();
    let proved: Vec<&Proof> = c.entries.iter().filter_map(|e| e.cls_proof.as_ref()).collect();
    let mut seen = HashSet::new();
    let mut done = 0;
    'outer: for (i, p1) in proved.iter().enumerate() {
        for p2 in proved.iter().skip(i) {
            for (pa, la) in p1.sequent.leaves() {
                let Ok(nla) = negate(la) else { continue };
                for (pb, lb) in p2.sequent.leaves() {
                    if lb != &nla {
                        continue;
                    }
                    let gamma = designate_remainder(&p1.sequent, &pa).unwrap();
                    let delta = designate_remainder(&p2.sequent, &pb).unwrap();
                    let conclusion = pair(gamma, delta);
                    if conclusion.is_empty() || conclusion.connective_count() > 9 {
                        continue;
                    }
                    if !seen.insert(conclusion.clone()) {
                        continue;
                    }
                    let cut_proof = Proof {
                        rule: Rule::Cut,
                        sequent: conclusion.clone(),
                        at: vec![],
                        label: None,
                        premises: vec![(*p1).clone(), (*p2).clone()],
                    };
                    check_proof(&cut_proof, &c.sig, Mode::Modulo)
                        .unwrap_or_else(|e| panic!("composed cut fails to check: {}", e));
                    let out = prove_classical(&conclusion, &c.sig, &Budget::default());
                    assert!(
                        out.is_proved(),
                        "cut-composed `|- {}` not re-proved cut-free (got {})",
                        conclusion,
                        out.verdict()
                    );
                    if let SearchOutcome::Proved(p) = out {
                        assert!(!p.uses_cut());
                    }
                    done += 1;
                    if done == 100 {
                        break 'outer;
                    }
                }
            }
        }
    }
    assert_eq!(done, 100, "not enough cut compositions found");
    conclude(
        6,
        format!(
            "100 cut-composed sequents re-proved cut-free within depth 14 ({} ms)",
            start.elapsed().as_millis()
        ),
    );
}

#[test]
fn criterion_7_extended_system_containment() {
    let c = corpus();
    let mut rechecked = 0;
    for e in &c.entries {
        if let Some(ip) = &e.int_proof {
            check_proof_i(ip, &c.sig, SystemConfig::extended())
                .unwrap_or_else(|err| panic!("base proof rejected by the extended system: {}", err));
            rechecked += 1;
        }
    }
    assert!(rechecked > 0);

    // the reassociation sequent becomes provable in the extended system
    let assoc_sig = sig("assoc.sig");
    let assoc_seq =
        parse_intuitionistic_sequent("((a * b) * ![a1]c) |- (a * (b * ![a1]c))").unwrap();
    let out = prove_intuitionistic(
        &assoc_seq,
        &assoc_sig,
        SystemConfig::extended(),
        &Budget::default(),
    );
    assert!(out.is_proved(), "extended system failed: {}", out.verdict());

    // and lowering the golden classical derivation yields a checking proof
    let golden = golden_classical("assoc_embedding.sexp");
    // the golden proof concludes the translation of the empty-antecedent
    // form; lower the sequent form instead, built from the searched proof
    let cls = prove_classical(
        &translate_sequent(&assoc_seq).unwrap(),
        &assoc_sig,
        &Budget::default(),
    );
    let SearchOutcome::Proved(cp) = cls else { panic!("translation not proved") };
    let lowered = lower_proof(&cp, &assoc_sig, SystemConfig::extended()).unwrap();
    assert_eq!(lowered.proof.sequent, assoc_seq);
    check_proof_i(&lowered.proof, &assoc_sig, SystemConfig::extended()).unwrap();

    // the golden one lowers too: its conclusion is a single translated
    // implication with an empty antecedent
    let lowered_golden = lower_proof(&golden, &assoc_sig, SystemConfig::extended()).unwrap();
    check_proof_i(&lowered_golden.proof, &assoc_sig, SystemConfig::extended()).unwrap();
    assert_eq!(
        lowered_golden.proof.sequent.to_string(),
        "() |- (((a * b) * ![a1]c) -> (a * (b * ![a1]c)))"
    );

    conclude(
        7,
        format!(
            "{} base proofs recheck unchanged; reassociation recaptured and lowered",
            rechecked
        ),
    );
}

#[test]
fn criterion_8_canonical_quotient_safety() {
    let start = Instant::now();
    let sig = Signature::load("label w : W\nlabel e : E\nlabel c : C\n").unwrap();
    let atoms: Vec<Formula> = vec![
        formula::atom("a"),
        formula::atom("b"),
        formula::negatom("a"),
        formula::negatom("b"),
        Formula::One,
        Formula::Bot,
        Formula::Top,
        Formula::Zero,
    ];
    let mut composite = Vec::new();
    for l in &atoms {
        for r in &atoms {
            composite.push(formula::tensor(l.clone(), r.clone()));
            composite.push(formula::par(l.clone(), r.clone()));
            composite.push(formula::plus(l.clone(), r.clone()));
            composite.push(formula::with(l.clone(), r.clone()));
        }
    }
    for label in ["w", "e", "c"] {
        for x in &atoms {
            composite.push(formula::quest(label, x.clone()));
            composite.push(formula::bang(label, x.clone()));
        }
    }
    let mut sequents: Vec<Structure> = Vec::new();
    for f in &composite {
        sequents.push(leaf(f.clone()));
    }
    for f in &atoms {
        for g in &atoms {
            sequents.push(pair(leaf(f.clone()), leaf(g.clone())));
        }
    }
    for f in &atoms {
        for g in &atoms {
            for h in &atoms {
                sequents.push(pair(pair(leaf(f.clone()), leaf(g.clone())), leaf(h.clone())));
            }
        }
    }
    sequents.retain(|s| s.connective_count() <= 4);
    let budget = Budget::default();
    let mut agreements = 0;
    for s in &sequents {
        let with = prove_classical_with_options(s, &sig, &budget, true);
        let without = prove_classical_with_options(s, &sig, &budget, false);
        assert_eq!(
            with.verdict(),
            without.verdict(),
            "quotient changed the verdict on `|- {}`",
            s
        );
        agreements += 1;
    }
    conclude(
        8,
        format!(
            "{} sequents, identical verdicts with and without the canonical memo ({} ms)",
            agreements,
            start.elapsed().as_millis()
        ),
    );
}
