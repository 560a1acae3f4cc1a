//! The polarity-preserving embedding of the two-sided system into the
//! one-sided classical system.
//!
//! Translation sends implications to pars with a negated argument and
//! reverses pair order on antecedent structures. A classical formula is
//! *positive* when it is the translation of some intuitionistic formula and
//! *negative* when it is the negation of one; the two readings never
//! overlap, and a provable sequent built from such formulas has exactly one
//! positive leaf. That unique leaf drives sequent recovery: rotate it to
//! the top-right and un-translate leaf by leaf.
//!
//! `lift_proof` transports a two-sided derivation rule by rule into the
//! classical system; `lower_proof` inverts the transport on classical
//! proofs of translated sequents, falling back to bounded proof search for
//! any step whose shape matches none of the expected cases (the fallback
//! count is reported alongside the result).

use crate::classical::{erase_structural, Proof, Rule};
use crate::equivalence::designate_remainder;
use crate::formula::{self, negate, Formula, IllFormed};
use crate::intuitionistic::{
    check_proof_i, enumerate_i, IProof, IRule, ISequent, SystemConfig,
};
use crate::search::{prove_intuitionistic, Budget, SearchOutcome};
use crate::signature::{Axiom, Signature};
use crate::structure::{leaf, pair, Dir, Path, Structure};
use std::fmt;

/// Translation of an intuitionistic formula (`0` maps to itself, for the
/// zero-extended system).
pub fn hat(f: &Formula) -> Result<Formula, IllFormed> {
    use Formula::*;
    Ok(match f {
        Atom(a) => Atom(a.clone()),
        One => One,
        Top => Top,
        Zero => Zero,
        Tensor(a, b) => formula::tensor(hat(a)?, hat(b)?),
        With(a, b) => formula::with(hat(a)?, hat(b)?),
        Plus(a, b) => formula::plus(hat(a)?, hat(b)?),
        Bang(i, a) => formula::bang(i, hat(a)?),
        ImplR(a, b) => formula::par(negate(&hat(a)?)?, hat(b)?),
        ImplL(b, a) => formula::par(hat(b)?, negate(&hat(a)?)?),
        NegAtom(_) | Bot | Par(..) | Quest(..) => {
            return Err(IllFormed {
                formula: f.clone(),
                expected: "intuitionistic",
            })
        }
    })
}

/// `hat` followed by negation: the translation of an antecedent occurrence.
pub fn hat_neg(f: &Formula) -> Result<Formula, IllFormed> {
    negate(&hat(f)?)
}

/// Negated-and-hatted antecedent structure; pair order reverses at every
/// node.
pub fn translate_antecedent(s: &Structure) -> Result<Structure, IllFormed> {
    Ok(match s {
        Structure::Empty => Structure::Empty,
        Structure::Leaf(f) => leaf(hat_neg(f)?),
        Structure::Pair(a, b) => pair(translate_antecedent(b)?, translate_antecedent(a)?),
    })
}

/// `Γ |- A` becomes `|- (Γ-translated, Â)`; an empty antecedent leaves
/// just the succedent translation.
pub fn translate_sequent(seq: &ISequent) -> Result<Structure, IllFormed> {
    Ok(pair(
        translate_antecedent(&seq.antecedent)?,
        leaf(hat(&seq.succedent)?),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    /// the translation of some intuitionistic formula
    Positive,
    /// the negation of such a translation
    Negative,
    /// neither: not in the image of the embedding
    Neither,
}

/// Recognizer for the translation image and its negation.
pub fn classify(f: &Formula) -> Polarity {
    use Formula::*;
    use Polarity::*;
    match f {
        Atom(_) | Top | One => Positive,
        NegAtom(_) | Zero | Bot => Negative,
        Tensor(a, b) => match (classify(a), classify(b)) {
            (Positive, Positive) => Positive,
            (Negative, Positive) | (Positive, Negative) => Negative,
            _ => Neither,
        },
        Par(a, b) => match (classify(a), classify(b)) {
            (Negative, Positive) | (Positive, Negative) => Positive,
            (Negative, Negative) => Negative,
            _ => Neither,
        },
        With(a, b) | Plus(a, b) => match (classify(a), classify(b)) {
            (Positive, Positive) => Positive,
            (Negative, Negative) => Negative,
            _ => Neither,
        },
        Bang(_, a) => match classify(a) {
            Positive => Positive,
            _ => Neither,
        },
        Quest(_, a) => match classify(a) {
            Negative => Negative,
            _ => Neither,
        },
        ImplR(..) | ImplL(..) => Neither,
    }
}

/// The polarity counter on the translation image: 0 on translations,
/// 1 on negated translations, undefined elsewhere.
pub fn h_count(f: &Formula) -> Option<u8> {
    match classify(f) {
        Polarity::Positive => Some(0),
        Polarity::Negative => Some(1),
        Polarity::Neither => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotInImage {
    pub formula: Formula,
}

impl fmt::Display for NotInImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} is not in the translation image", self.formula)
    }
}

impl std::error::Error for NotInImage {}

/// Path of the unique positive leaf, if there is exactly one. A leaf
/// outside the image is an error; zero or several positives yield `None`.
pub fn polarizable(s: &Structure) -> Result<Option<Path>, NotInImage> {
    let mut positives = Vec::new();
    for (p, f) in s.leaves() {
        match classify(f) {
            Polarity::Positive => positives.push(p),
            Polarity::Negative => {}
            Polarity::Neither => {
                return Err(NotInImage { formula: f.clone() })
            }
        }
    }
    Ok(match positives.as_slice() {
        [only] => Some(only.clone()),
        _ => None,
    })
}

/// Inverse of `hat` on positive formulas.
pub fn unhat_pos(f: &Formula) -> Result<Formula, NotInImage> {
    use Formula::*;
    let err = || NotInImage { formula: f.clone() };
    Ok(match f {
        Atom(a) => Atom(a.clone()),
        Top => Top,
        One => One,
        Tensor(a, b) => formula::tensor(unhat_pos(a)?, unhat_pos(b)?),
        Par(a, b) => match (classify(a), classify(b)) {
            // (A -> B)^ = Â^ par B̂
            (Polarity::Negative, Polarity::Positive) => {
                formula::impl_r(unhat_neg(a)?, unhat_pos(b)?)
            }
            // (B <- A)^ = B̂ par Â^
            (Polarity::Positive, Polarity::Negative) => {
                formula::impl_l(unhat_pos(a)?, unhat_neg(b)?)
            }
            _ => return Err(err()),
        },
        With(a, b) => formula::with(unhat_pos(a)?, unhat_pos(b)?),
        Plus(a, b) => formula::plus(unhat_pos(a)?, unhat_pos(b)?),
        Bang(i, a) => formula::bang(i, unhat_pos(a)?),
        _ => return Err(err()),
    })
}

/// Inverse of `hat_neg` on negative formulas.
pub fn unhat_neg(f: &Formula) -> Result<Formula, NotInImage> {
    use Formula::*;
    let err = || NotInImage { formula: f.clone() };
    Ok(match f {
        NegAtom(a) => Atom(a.clone()),
        Zero => Top,
        Bot => One,
        // (A * B)^neg = B̂^ par Â^: components come back reversed
        Par(a, b) => match (classify(a), classify(b)) {
            (Polarity::Negative, Polarity::Negative) => {
                formula::tensor(unhat_neg(b)?, unhat_neg(a)?)
            }
            _ => return Err(err()),
        },
        Tensor(a, b) => match (classify(a), classify(b)) {
            // (A -> B)^neg = B̂^ * Â
            (Polarity::Negative, Polarity::Positive) => {
                formula::impl_r(unhat_pos(b)?, unhat_neg(a)?)
            }
            // (B <- A)^neg = Â * B̂^
            (Polarity::Positive, Polarity::Negative) => {
                formula::impl_l(unhat_neg(b)?, unhat_pos(a)?)
            }
            _ => return Err(err()),
        },
        // additive negation keeps component order
        With(a, b) => formula::plus(unhat_neg(a)?, unhat_neg(b)?),
        Plus(a, b) => formula::with(unhat_neg(a)?, unhat_neg(b)?),
        Quest(i, a) => formula::bang(i, unhat_neg(a)?),
        _ => return Err(err()),
    })
}

fn untranslate_antecedent(s: &Structure) -> Result<Structure, NotInImage> {
    Ok(match s {
        Structure::Empty => Structure::Empty,
        Structure::Leaf(f) => leaf(unhat_neg(f)?),
        Structure::Pair(a, b) => pair(untranslate_antecedent(b)?, untranslate_antecedent(a)?),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecoverError {
    NotInImage(Formula),
    NoUniquePositive,
}

impl fmt::Display for RecoverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecoverError::NotInImage(x) => {
                write!(f, "{} is not in the translation image", x)
            }
            RecoverError::NoUniquePositive => {
                write!(f, "the sequent does not have exactly one positive leaf")
            }
        }
    }
}

impl std::error::Error for RecoverError {}

/// The unique two-sided sequent whose translation is equivalent to `s`:
/// rotate the positive leaf to the top-right and un-translate. The result
/// is an invariant of the equivalence class of `s`.
pub fn recover_sequent(s: &Structure) -> Result<ISequent, RecoverError> {
    let pos = polarizable(s)
        .map_err(|e| RecoverError::NotInImage(e.formula))?
        .ok_or(RecoverError::NoUniquePositive)?;
    let succ_hat = match s.at(&pos).expect("polarizable returned a leaf path") {
        Structure::Leaf(f) => f.clone(),
        _ => unreachable!(),
    };
    let rest = designate_remainder(s, &pos).expect("leaf path");
    let antecedent =
        untranslate_antecedent(&rest).map_err(|e| RecoverError::NotInImage(e.formula))?;
    let succedent = unhat_pos(&succ_hat).map_err(|e| RecoverError::NotInImage(e.formula))?;
    Ok(ISequent {
        antecedent,
        succedent,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftError(pub String);

impl fmt::Display for LiftError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot lift: {}", self.0)
    }
}

impl std::error::Error for LiftError {}

/// Translate an antecedent path into the corresponding path of the
/// translated sequent structure (pair reversal flips every step).
fn lift_path(antecedent_nonempty: bool, p: &Path) -> Path {
    let mut v = Vec::with_capacity(p.0.len() + 1);
    if antecedent_nonempty {
        v.push(Dir::L);
    }
    for d in &p.0 {
        v.push(match d {
            Dir::L => Dir::R,
            Dir::R => Dir::L,
        });
    }
    Path(v)
}

/// Path of the succedent translation inside the translated sequent.
fn succedent_path(antecedent_nonempty: bool) -> Path {
    if antecedent_nonempty {
        Path(vec![Dir::R])
    } else {
        Path::root()
    }
}

/// Transport a two-sided derivation into the classical system, rule by
/// rule. The result is a modulo-mode proof of the translated sequent.
pub fn lift_proof(p: &IProof) -> Result<Proof, LiftError> {
    let seq = translate_sequent(&p.sequent).map_err(|e| LiftError(e.to_string()))?;
    let ant_full = !p.sequent.antecedent.is_empty();
    let lifted: Vec<Proof> = p.premises.iter().map(lift_proof).collect::<Result<_, _>>()?;
    let mut take = lifted.into_iter();
    let mut next = || take.next().expect("arity checked by construction");

    let node = match p.rule {
        IRule::Id => Proof::axiom(Rule::Init, seq),
        IRule::OneR => Proof::axiom(Rule::One, seq),
        IRule::TopR => Proof {
            rule: Rule::Top,
            sequent: seq,
            at: vec![succedent_path(ant_full)],
            label: None,
            premises: vec![],
        },
        IRule::ZeroL => {
            // the translated 0 occurrence is a top leaf
            let at = lift_path(ant_full, &p.at[0]);
            Proof {
                rule: Rule::Top,
                sequent: seq,
                at: vec![at],
                label: None,
                premises: vec![],
            }
        }
        IRule::TensorR => {
            let l1 = next();
            let l2 = next();
            // classical premise order: (Γ, G) first, so the second
            // two-sided premise comes first
            Proof::binary(Rule::Tensor, seq, l2, l1)
        }
        IRule::ArrowL => {
            let l1 = next();
            let l2 = next();
            Proof::binary(Rule::Tensor, seq, l1, l2)
        }
        IRule::LArrowL => {
            let l1 = next();
            let l2 = next();
            Proof::binary(Rule::Tensor, seq, l2, l1)
        }
        IRule::ArrowR | IRule::LArrowR => {
            Proof::unary_at(Rule::Par, seq, succedent_path(ant_full), next())
        }
        IRule::TensorL => {
            let at = lift_path(ant_full, &p.at[0]);
            Proof::unary_at(Rule::Par, seq, at, next())
        }
        IRule::WithR => {
            let l1 = next();
            let l2 = next();
            Proof {
                rule: Rule::With,
                sequent: seq,
                at: vec![succedent_path(ant_full)],
                label: None,
                premises: vec![l1, l2],
            }
        }
        IRule::PlusL => {
            let l1 = next();
            let l2 = next();
            Proof {
                rule: Rule::With,
                sequent: seq,
                at: vec![lift_path(ant_full, &p.at[0])],
                label: None,
                premises: vec![l1, l2],
            }
        }
        IRule::PlusR1 => Proof::unary_at(Rule::Plus1, seq, succedent_path(ant_full), next()),
        IRule::PlusR2 => Proof::unary_at(Rule::Plus2, seq, succedent_path(ant_full), next()),
        IRule::WithL1 => {
            Proof::unary_at(Rule::Plus1, seq, lift_path(ant_full, &p.at[0]), next())
        }
        IRule::WithL2 => {
            Proof::unary_at(Rule::Plus2, seq, lift_path(ant_full, &p.at[0]), next())
        }
        IRule::OneL => Proof::unary_at(Rule::Bot, seq, lift_path(ant_full, &p.at[0]), next()),
        IRule::BangL => Proof::unary_at(Rule::Der, seq, lift_path(ant_full, &p.at[0]), next()),
        IRule::BangR => Proof::unary(Rule::Prom, seq, next()),
        IRule::BangW => Proof::unary_at(Rule::QW, seq, lift_path(ant_full, &p.at[0]), next()),
        IRule::BangC => {
            // copy positions live in the premise antecedent
            let prem_ant_full = !p.premises[0].sequent.antecedent.is_empty();
            let at = p
                .at
                .iter()
                .map(|q| lift_path(prem_ant_full, q))
                .collect();
            Proof {
                rule: Rule::QC,
                sequent: seq,
                at,
                label: None,
                premises: vec![next()],
            }
        }
        IRule::BangE => Proof::unary(Rule::QE, seq, next()),
        IRule::A1L | IRule::A1M | IRule::A1R => Proof::unary(Rule::QA1, seq, next()),
        IRule::A2L | IRule::A2M | IRule::A2R => Proof::unary(Rule::QA2, seq, next()),
    };
    Ok(node)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LowerError {
    NotATranslation(RecoverError),
    /// The base system requires every index to license only C, W, E.
    SignatureNotAdmissible { label: String, axiom: Axiom },
    /// Neither direct transport nor the search fallback produced a proof.
    Failed(Box<ISequent>),
}

impl fmt::Display for LowerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LowerError::NotATranslation(e) => write!(f, "cannot lower: {}", e),
            LowerError::SignatureNotAdmissible { label, axiom } => write!(
                f,
                "cannot lower into the base system: index {} licenses {}; target the extended system",
                label, axiom
            ),
            LowerError::Failed(seq) => {
                write!(f, "cannot lower: no two-sided proof found for `{}`", seq)
            }
        }
    }
}

impl std::error::Error for LowerError {}

#[derive(Debug, Clone)]
pub struct Lowered {
    pub proof: IProof,
    /// Steps reconstructed by bounded search instead of direct transport.
    pub fallbacks: usize,
}

fn rule_candidates(rule: Rule) -> &'static [IRule] {
    match rule {
        Rule::Tensor => &[IRule::TensorR, IRule::ArrowL, IRule::LArrowL],
        Rule::Par => &[IRule::ArrowR, IRule::LArrowR, IRule::TensorL],
        Rule::Plus1 => &[IRule::PlusR1, IRule::WithL1],
        Rule::Plus2 => &[IRule::PlusR2, IRule::WithL2],
        Rule::With => &[IRule::WithR, IRule::PlusL],
        Rule::Bot => &[IRule::OneL],
        Rule::Der => &[IRule::BangL],
        Rule::Prom => &[IRule::BangR],
        Rule::QW => &[IRule::BangW],
        Rule::QC => &[IRule::BangC],
        Rule::QE => &[IRule::BangE],
        Rule::QA1 => &[IRule::A1L, IRule::A1M, IRule::A1R],
        Rule::QA2 => &[IRule::A2L, IRule::A2M, IRule::A2R],
        _ => &[],
    }
}

struct LowerCtx<'a> {
    sig: &'a Signature,
    sys: SystemConfig,
    fallback_budget: Budget,
    fallbacks: usize,
}

impl<'a> LowerCtx<'a> {
    fn lower(&mut self, node: &Proof) -> Option<IProof> {
        let is = recover_sequent(&node.sequent).ok()?;
        match self.direct(node, &is) {
            Some(p) => Some(p),
            None => self.fallback(is),
        }
    }

    fn fallback(&mut self, is: ISequent) -> Option<IProof> {
        match prove_intuitionistic(&is, self.sig, self.sys, &self.fallback_budget) {
            SearchOutcome::Proved(p) => {
                self.fallbacks += 1;
                Some(p)
            }
            _ => None,
        }
    }

    fn direct(&mut self, node: &Proof, is: &ISequent) -> Option<IProof> {
        match node.rule {
            Rule::Init => {
                match (&is.antecedent, &is.succedent) {
                    (Structure::Leaf(Formula::Atom(x)), Formula::Atom(y)) if x == y => {
                        Some(IProof::axiom(IRule::Id, is.clone()))
                    }
                    _ => None,
                }
            }
            Rule::One => {
                (is.antecedent.is_empty() && is.succedent == Formula::One)
                    .then(|| IProof::axiom(IRule::OneR, is.clone()))
            }
            Rule::Top => {
                (is.succedent == Formula::Top).then(|| IProof::axiom(IRule::TopR, is.clone()))
            }
            _ => {
                let wanted = rule_candidates(node.rule);
                if wanted.is_empty() {
                    return None;
                }
                let lowered: Option<Vec<IProof>> =
                    node.premises.iter().map(|q| self.lower(q)).collect();
                let lowered = lowered?;
                let goals: Vec<&ISequent> = lowered.iter().map(|p| &p.sequent).collect();
                for app in enumerate_i(is, self.sig, self.sys, true) {
                    if !wanted.contains(&app.rule) {
                        continue;
                    }
                    if let Some(order) = premise_assignment(&app.premises, &goals) {
                        let premises = order.into_iter().map(|i| lowered[i].clone()).collect();
                        return Some(IProof {
                            rule: app.rule,
                            sequent: is.clone(),
                            at: app.at,
                            label: app.label,
                            premises,
                        });
                    }
                }
                None
            }
        }
    }
}

/// For each instance premise, which lowered subproof proves it.
fn premise_assignment(wanted: &[ISequent], have: &[&ISequent]) -> Option<Vec<usize>> {
    if wanted.len() != have.len() {
        return None;
    }
    match wanted.len() {
        0 => Some(vec![]),
        1 => (have[0] == &wanted[0]).then(|| vec![0]),
        2 => {
            if have[0] == &wanted[0] && have[1] == &wanted[1] {
                Some(vec![0, 1])
            } else if have[1] == &wanted[0] && have[0] == &wanted[1] {
                Some(vec![1, 0])
            } else {
                None
            }
        }
        _ => None,
    }
}

/// Recover a two-sided proof from a classical proof of a translated
/// sequent. Strict-mode structural steps are erased first; cut steps have
/// no transport and go through the search fallback.
pub fn lower_proof(
    p: &Proof,
    sig: &Signature,
    sys: SystemConfig,
) -> Result<Lowered, LowerError> {
    if !sys.extended_assoc {
        for i in sig.indices() {
            for ax in [Axiom::A1, Axiom::A2] {
                if sig.allows(i, ax) {
                    return Err(LowerError::SignatureNotAdmissible {
                        label: i.clone(),
                        axiom: ax,
                    });
                }
            }
        }
    }
    let p = erase_structural(p);
    let root = recover_sequent(&p.sequent).map_err(LowerError::NotATranslation)?;
    let mut ctx = LowerCtx {
        sig,
        sys,
        fallback_budget: Budget::default(),
        fallbacks: 0,
    };
    let proof = ctx
        .lower(&p)
        .ok_or_else(|| LowerError::Failed(Box::new(root)))?;
    if let Err(e) = check_proof_i(&proof, sig, sys) {
        panic!("lowering produced a proof the checker rejects: {}", e);
    }
    Ok(Lowered {
        proof,
        fallbacks: ctx.fallbacks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{check_proof, Mode};
    use crate::formula::*;
    use crate::parse::{parse_formula, parse_intuitionistic_sequent};
    use crate::search::prove_intuitionistic;

    fn iq(s: &str) -> ISequent {
        parse_intuitionistic_sequent(s).unwrap()
    }

    #[test]
    fn hat_on_the_translation_table() {
        assert_eq!(hat(&atom("p")).unwrap(), atom("p"));
        // (a -> b)^ = a^ # b
        assert_eq!(
            hat(&impl_r(atom("a"), atom("b"))).unwrap(),
            par(negatom("a"), atom("b"))
        );
        // (b <- a)^ = b # a^
        assert_eq!(
            hat(&impl_l(atom("b"), atom("a"))).unwrap(),
            par(atom("b"), negatom("a"))
        );
    }

    #[test]
    fn translation_of_the_implication_identity() {
        // (a -> b) |- (a -> b) becomes |- ((b^ * a), (a^ # b))
        let s = translate_sequent(&iq("(a -> b) |- (a -> b)")).unwrap();
        assert_eq!(s.to_string(), "((b^ * a), (a^ # b))");
    }

    #[test]
    fn translation_of_the_curried_pairing() {
        let s = translate_sequent(&iq("b |- (a -> (a * b))")).unwrap();
        assert_eq!(s.to_string(), "(b^, (a^ # (a * b)))");
    }

    #[test]
    fn translation_reverses_antecedent_pairs() {
        let s = translate_sequent(&iq("(a, b) |- c")).unwrap();
        assert_eq!(s.to_string(), "((b^, a^), c)");
    }

    #[test]
    fn translation_of_the_reassociation_formula() {
        // the negated translation of (a*b) * ![a1]c
        let f = parse_formula("((a * b) * ![a1]c)").unwrap();
        let n = hat_neg(&f).unwrap();
        assert_eq!(n.to_string(), "(?[a1]c^ # (b^ # a^))");
    }

    #[test]
    fn classify_on_literals_and_junk() {
        assert_eq!(classify(&atom("p")), Polarity::Positive);
        assert_eq!(h_count(&atom("p")), Some(0));
        assert_eq!(classify(&negatom("p")), Polarity::Negative);
        assert_eq!(h_count(&negatom("p")), Some(1));
        assert_eq!(classify(&par(atom("a"), atom("a"))), Polarity::Neither);
        assert_eq!(h_count(&par(atom("a"), atom("a"))), None);
    }

    #[test]
    fn polarizable_finds_the_unique_positive() {
        let s = translate_sequent(&iq("(a -> b) |- (a -> b)")).unwrap();
        let p = polarizable(&s).unwrap().unwrap();
        assert_eq!(p.to_string(), "R");
        // two positives: absent
        let two = pair(leaf(atom("p")), leaf(atom("q")));
        assert_eq!(polarizable(&two).unwrap(), None);
        // junk leaf: error
        let junk = pair(leaf(par(atom("a"), atom("a"))), leaf(atom("q")));
        assert!(polarizable(&junk).is_err());
    }

    #[test]
    fn recover_inverts_translate() {
        for src in [
            "(a -> b) |- (a -> b)",
            "b |- (a -> (a * b))",
            "(a, (b, c)) |- ((a * b) * c)",
            "() |- ((a & 1) <- a)",
            "((a * b) * ![a1]c) |- (a * (b * ![a1]c))",
        ] {
            let iseq = iq(src);
            let t = translate_sequent(&iseq).unwrap();
            assert_eq!(recover_sequent(&t).unwrap(), iseq, "on {}", src);
            // recovery is invariant under rotation
            for (rot, _) in crate::equivalence::rotations(&t) {
                assert_eq!(recover_sequent(&rot).unwrap(), iseq, "rotation of {}", src);
            }
        }
    }

    #[test]
    fn lift_of_a_searched_proof_checks_classically() {
        let sig = Signature::empty();
        for src in ["(a -> b) |- (a -> b)", "b |- (a -> (a * b))", "(a, b) |- (a * b)"] {
            let iseq = iq(src);
            let out = prove_intuitionistic(&iseq, &sig, SystemConfig::base(), &Budget::default());
            let ip = match out {
                SearchOutcome::Proved(p) => p,
                other => panic!("{} should be provable, got {}", src, other.verdict()),
            };
            let lifted = lift_proof(&ip).unwrap();
            assert_eq!(lifted.sequent, translate_sequent(&iseq).unwrap());
            check_proof(&lifted, &sig, Mode::Modulo)
                .unwrap_or_else(|e| panic!("lift of {} fails: {}", src, e));
        }
    }

    #[test]
    fn lift_of_the_atom_identity_is_an_init() {
        let ip = IProof::axiom(IRule::Id, iq("a |- a"));
        let lifted = lift_proof(&ip).unwrap();
        assert_eq!(lifted.rule, Rule::Init);
        assert_eq!(lifted.sequent.to_string(), "(a^, a)");
    }

    #[test]
    fn lower_round_trips_the_lift() {
        let sig = Signature::empty();
        for src in ["(a -> b) |- (a -> b)", "b |- (a -> (a * b))"] {
            let iseq = iq(src);
            let out = prove_intuitionistic(&iseq, &sig, SystemConfig::base(), &Budget::default());
            let ip = match out {
                SearchOutcome::Proved(p) => p,
                _ => unreachable!(),
            };
            let lifted = lift_proof(&ip).unwrap();
            let lowered = lower_proof(&lifted, &sig, SystemConfig::base()).unwrap();
            assert_eq!(lowered.proof.sequent, iseq);
        }
    }

    #[test]
    fn lower_rejects_junk_and_bad_signatures() {
        let junk = pair(leaf(par(atom("a"), atom("a"))), leaf(atom("q")));
        let fake = Proof::axiom(Rule::Init, junk);
        assert!(matches!(
            lower_proof(&fake, &Signature::empty(), SystemConfig::base()),
            Err(LowerError::NotATranslation(_))
        ));
        let sig = Signature::load("label a1 : A1\n").unwrap();
        let ok = Proof::axiom(
            Rule::Init,
            pair(leaf(negatom("a")), leaf(atom("a"))),
        );
        assert!(matches!(
            lower_proof(&ok, &sig, SystemConfig::base()),
            Err(LowerError::SignatureNotAdmissible { .. })
        ));
        assert!(lower_proof(&ok, &sig, SystemConfig::extended()).is_ok());
    }
}
