//! Brute-force validation of the polarity recognizers against the
//! translation, and the rule-by-rule transport invariants: every two-sided
//! rule instance lifts to classical steps the checker accepts, and lowering
//! inverts the lift at the provability level.

mod util;

use snacl_core::classical::{check_proof, Mode};
use snacl_core::embedding::*;
use snacl_core::formula::{atom, par, Formula};
use snacl_core::intuitionistic::{check_proof_i, IRule, ISequent, SystemConfig};
use snacl_core::parse::parse_intuitionistic_sequent;
use snacl_core::search::{prove_intuitionistic, Budget, SearchOutcome};
use snacl_core::signature::Signature;
use std::collections::HashSet;
use util::int_formulas;

#[test]
fn image_and_negated_image_are_disjoint() {
    // rich alphabet to cover every connective, lean alphabet for depth
    for (max, rich) in [(3, true), (6, false)] {
        let mut image = HashSet::new();
        let mut negated = HashSet::new();
        for c in int_formulas(max, rich) {
            let h = hat(&c).unwrap();
            assert_eq!(classify(&h), Polarity::Positive, "hat({})", c);
            assert_eq!(h_count(&h), Some(0));
            let hn = hat_neg(&c).unwrap();
            assert_eq!(classify(&hn), Polarity::Negative, "hat_neg({})", c);
            assert_eq!(h_count(&hn), Some(1));
            image.insert(h);
            negated.insert(hn);
        }
        assert!(
            image.is_disjoint(&negated),
            "a formula cannot be both a translation and a negated translation"
        );
    }
}

#[test]
fn self_par_is_outside_the_image() {
    let junk = par(atom("a"), atom("a"));
    assert_eq!(classify(&junk), Polarity::Neither);
    let image: HashSet<Formula> = int_formulas(4, false)
        .into_iter()
        .map(|c| hat(&c).unwrap())
        .collect();
    assert!(!image.contains(&junk));
}

#[test]
fn untranslation_inverts_translation() {
    for (max, rich) in [(3, true), (5, false)] {
        for c in int_formulas(max, rich) {
            let h = hat(&c).unwrap();
            assert_eq!(unhat_pos(&h).unwrap(), c, "unhat_pos(hat({}))", c);
            let hn = hat_neg(&c).unwrap();
            assert_eq!(unhat_neg(&hn).unwrap(), c, "unhat_neg(hat_neg({}))", c);
        }
    }
}

/// One provable sequent per rule; collectively the searched proofs use the
/// whole two-sided rule set, and each lifts to a checking classical proof.
#[test]
fn every_rule_lifts() {
    let sig = Signature::load(
        "label k :\nlabel w : W\nlabel e : E\nlabel c : C\nlabel a1 : A1\nlabel a2 : A2\n",
    )
    .unwrap();
    let base = SystemConfig::base();
    let ext = SystemConfig::extended();
    let zero = SystemConfig::base().with_zero();
    let cases: Vec<(&str, IRule, SystemConfig)> = vec![
        ("a |- a", IRule::Id, base),
        ("(a, b) |- (a * b)", IRule::TensorR, base),
        ("(a * b) |- (a * b)", IRule::TensorL, base),
        ("(a -> b) |- (a -> b)", IRule::ArrowR, base),
        ("(a, (a -> b)) |- b", IRule::ArrowL, base),
        ("(b <- a) |- (b <- a)", IRule::LArrowR, base),
        ("((b <- a), a) |- b", IRule::LArrowL, base),
        ("(a & b) |- (a & b)", IRule::WithR, base),
        ("(a & b) |- a", IRule::WithL1, base),
        ("(a & b) |- b", IRule::WithL2, base),
        ("a |- (a + b)", IRule::PlusR1, base),
        ("b |- (a + b)", IRule::PlusR2, base),
        ("(a + b) |- (a + b)", IRule::PlusL, base),
        ("() |- 1", IRule::OneR, base),
        ("(1, a) |- a", IRule::OneL, base),
        ("a |- top", IRule::TopR, base),
        ("(0, a) |- b", IRule::ZeroL, zero),
        ("![k]a |- a", IRule::BangL, base),
        ("![k]a |- ![k]a", IRule::BangR, base),
        ("(![w]a, b) |- b", IRule::BangW, base),
        ("![c]a |- (a * a)", IRule::BangC, base),
        ("(![e]a, b) |- (b * ![e]a)", IRule::BangE, base),
        ("((![a1]x, y), z) |- (![a1]x * (y * z))", IRule::A1L, base),
        ("(x, (y, ![a2]z)) |- ((x * y) * ![a2]z)", IRule::A2R, base),
        ("(x, (y, ![a1]z)) |- ((x * y) * ![a1]z)", IRule::A1R, ext),
        ("((x, ![a1]y), z) |- (x * (![a1]y * z))", IRule::A1M, ext),
        ("((![a2]x, y), z) |- (![a2]x * (y * z))", IRule::A2L, ext),
        ("((x, ![a2]y), z) |- (x * (![a2]y * z))", IRule::A2M, ext),
    ];
    for (src, rule, sys) in cases {
        let seq = parse_intuitionistic_sequent(src).unwrap();
        let proof = match prove_intuitionistic(&seq, &sig, sys, &Budget::default()) {
            SearchOutcome::Proved(p) => p,
            other => panic!("{} should be provable, got {}", src, other.verdict()),
        };
        assert!(
            proof.rules_used().contains(&rule),
            "the proof of {} was expected to use {}",
            src,
            rule.name()
        );
        let lifted = lift_proof(&proof).unwrap();
        assert_eq!(lifted.sequent, translate_sequent(&seq).unwrap());
        check_proof(&lifted, &sig, Mode::Modulo)
            .unwrap_or_else(|e| panic!("lift of {} does not check: {}", src, e));
    }
}

#[test]
fn lift_of_the_implication_identity_matches_the_golden_shape() {
    // the searched two-sided identity proof lifts to par over tensor over
    // two inits: the golden strict derivation minus its exchange step
    let seq = parse_intuitionistic_sequent("(a -> b) |- (a -> b)").unwrap();
    let proof = match prove_intuitionistic(
        &seq,
        &Signature::empty(),
        SystemConfig::base(),
        &Budget::default(),
    ) {
        SearchOutcome::Proved(p) => p,
        _ => unreachable!(),
    };
    let lifted = lift_proof(&proof).unwrap();
    let names: Vec<&str> = lifted.rules_used().iter().map(|r| r.name()).collect();
    assert_eq!(names, ["par", "tensor", "init", "init"]);
    assert_eq!(lifted.sequent.to_string(), "((b^ * a), (a^ # b))");
}

#[test]
fn lowering_inverts_lifting_on_searched_proofs() {
    let sig = Signature::load("label w : W\nlabel e : E\nlabel c : C\n").unwrap();
    let base = SystemConfig::base();
    let cases = [
        "(a, b) |- (a * b)",
        "(a -> b) |- (a -> b)",
        "((b <- a), a) |- b",
        "(![w]a, b) |- b",
        "(![e]a, b) |- (b * ![e]a)",
        "![c]a |- (a * a)",
        "(a + b) |- (b + a)",
    ];
    for src in cases {
        let seq = parse_intuitionistic_sequent(src).unwrap();
        let proof = match prove_intuitionistic(&seq, &sig, base, &Budget::default()) {
            SearchOutcome::Proved(p) => p,
            other => panic!("{} should be provable, got {}", src, other.verdict()),
        };
        let lifted = lift_proof(&proof).unwrap();
        let lowered = lower_proof(&lifted, &sig, base)
            .unwrap_or_else(|e| panic!("lowering the lift of {} failed: {}", src, e));
        assert_eq!(lowered.proof.sequent, seq, "round trip changed {}", src);
        check_proof_i(&lowered.proof, &sig, base).unwrap();
    }
}

#[test]
fn recovered_sequents_match_over_a_formula_sweep() {
    // rotate every translation and recover the original sequent
    let pool = int_formulas(2, true);
    let sig_atoms = ["a", "b"];
    let mut count = 0;
    for (i, f) in pool.iter().enumerate().step_by(7) {
        let succ = &pool[(i * 13 + 5) % pool.len()];
        let seq = ISequent::new(
            snacl_core::structure::leaf(f.clone()),
            succ.clone(),
        );
        let t = translate_sequent(&seq).unwrap();
        assert_eq!(recover_sequent(&t).unwrap(), seq);
        count += 1;
        let _ = sig_atoms;
    }
    assert!(count > 100);
}
