//! The one-sided classical calculus: rule schemas, proof objects, and the
//! proof checker.
//!
//! Two checking modes exist. In strict mode every shape is literal and the
//! top-level structural rules `e`, `a1`, `a2` are ordinary proof steps. In
//! modulo mode sequents are compared up to structural equivalence, shape
//! matching goes through designated rotations, and the three structural
//! rules are not legal steps (their content is absorbed into `~`).

use crate::equivalence::{designate_remainder, equivalent, subtree_rotations};
use crate::formula::{negate, Formula};
use crate::signature::{upset_restrict, Axiom, Restriction, Signature};
use crate::structure::{leaf, pair, Path, Structure};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Strict,
    Modulo,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Init,
    One,
    Top,
    Tensor,
    Par,
    Plus1,
    Plus2,
    With,
    Bot,
    Cut,
    Ex,
    Assoc1,
    Assoc2,
    Prom,
    Der,
    QA1,
    QA2,
    QE,
    QW,
    QC,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Init => "init",
            Rule::One => "one",
            Rule::Top => "top",
            Rule::Tensor => "tensor",
            Rule::Par => "par",
            Rule::Plus1 => "plus1",
            Rule::Plus2 => "plus2",
            Rule::With => "with",
            Rule::Bot => "bot",
            Rule::Cut => "cut",
            Rule::Ex => "e",
            Rule::Assoc1 => "a1",
            Rule::Assoc2 => "a2",
            Rule::Prom => "prom",
            Rule::Der => "der",
            Rule::QA1 => "qa1",
            Rule::QA2 => "qa2",
            Rule::QE => "qe",
            Rule::QW => "qw",
            Rule::QC => "qc",
        }
    }

    pub fn parse(s: &str) -> Option<Rule> {
        Some(match s {
            "init" => Rule::Init,
            "one" => Rule::One,
            "top" => Rule::Top,
            "tensor" => Rule::Tensor,
            "par" => Rule::Par,
            "plus1" => Rule::Plus1,
            "plus2" => Rule::Plus2,
            "with" => Rule::With,
            "bot" => Rule::Bot,
            "cut" => Rule::Cut,
            "e" => Rule::Ex,
            "a1" => Rule::Assoc1,
            "a2" => Rule::Assoc2,
            "prom" => Rule::Prom,
            "der" => Rule::Der,
            "qa1" => Rule::QA1,
            "qa2" => Rule::QA2,
            "qe" => Rule::QE,
            "qw" => Rule::QW,
            "qc" => Rule::QC,
            _ => return None,
        })
    }

    pub fn arity(self) -> usize {
        match self {
            Rule::Init | Rule::One | Rule::Top => 0,
            Rule::Tensor | Rule::With | Rule::Cut => 2,
            _ => 1,
        }
    }

    pub fn is_structural(self) -> bool {
        matches!(self, Rule::Ex | Rule::Assoc1 | Rule::Assoc2)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A rule-labeled derivation node. `sequent` is the structure Γ of the
/// conclusion `=> Γ`; `at` lists the principal positions the rule needs
/// (for contraction, premise-side copy positions, retained copy first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proof {
    pub rule: Rule,
    pub sequent: Structure,
    pub at: Vec<Path>,
    pub label: Option<String>,
    pub premises: Vec<Proof>,
}

impl Proof {
    pub fn axiom(rule: Rule, sequent: Structure) -> Proof {
        Proof {
            rule,
            sequent,
            at: Vec::new(),
            label: None,
            premises: Vec::new(),
        }
    }

    pub fn unary(rule: Rule, sequent: Structure, premise: Proof) -> Proof {
        Proof {
            rule,
            sequent,
            at: Vec::new(),
            label: None,
            premises: vec![premise],
        }
    }

    pub fn unary_at(rule: Rule, sequent: Structure, at: Path, premise: Proof) -> Proof {
        Proof {
            rule,
            sequent,
            at: vec![at],
            label: None,
            premises: vec![premise],
        }
    }

    pub fn binary(rule: Rule, sequent: Structure, p1: Proof, p2: Proof) -> Proof {
        Proof {
            rule,
            sequent,
            at: Vec::new(),
            label: None,
            premises: vec![p1, p2],
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(Proof::node_count).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.premises.iter().map(Proof::depth).max().unwrap_or(0)
    }

    /// Largest number of contraction steps along any branch.
    pub fn contractions_used(&self) -> u32 {
        let own = u32::from(self.rule == Rule::QC);
        own + self
            .premises
            .iter()
            .map(Proof::contractions_used)
            .max()
            .unwrap_or(0)
    }

    pub fn uses_cut(&self) -> bool {
        self.rule == Rule::Cut || self.premises.iter().any(Proof::uses_cut)
    }

    pub fn rules_used(&self) -> Vec<Rule> {
        let mut out = vec![self.rule];
        for p in &self.premises {
            out.extend(p.rules_used());
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Arity {
        rule: Rule,
        expected: usize,
        got: usize,
    },
    PathCount {
        rule: Rule,
        expected: usize,
        got: usize,
    },
    BadPath {
        rule: Rule,
        path: Path,
    },
    Shape {
        rule: Rule,
        detail: String,
    },
    PromotionUndefined {
        label: String,
    },
    PromotionNotApplicable,
    Unlicensed {
        label: String,
        axiom: Axiom,
    },
    ModeRestricted {
        rule: Rule,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Arity {
                rule,
                expected,
                got,
            } => write!(f, "{}: expected {} premises, found {}", rule, expected, got),
            Violation::PathCount {
                rule,
                expected,
                got,
            } => write!(f, "{}: expected {} path(s), found {}", rule, expected, got),
            Violation::BadPath { rule, path } => {
                write!(f, "{}: path {} does not address a node", rule, path)
            }
            Violation::Shape { rule, detail } => write!(f, "{}: {}", rule, detail),
            Violation::PromotionUndefined { label } => write!(
                f,
                "prom: the restriction of the context above {} is undefined",
                label
            ),
            Violation::PromotionNotApplicable => {
                write!(f, "prom: context has a leaf without a question mark")
            }
            Violation::Unlicensed { label, axiom } => {
                write!(f, "index {} does not license axiom {}", label, axiom)
            }
            Violation::ModeRestricted { rule } => {
                write!(f, "{}: structural steps are only legal in strict mode", rule)
            }
        }
    }
}

impl std::error::Error for Violation {}

/// A violation located inside a proof tree by premise indices from the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofError {
    pub at: Vec<usize>,
    pub violation: Violation,
}

impl fmt::Display for ProofError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.at.is_empty() {
            write!(f, "at the root: {}", self.violation)
        } else {
            let steps: Vec<String> = self.at.iter().map(|i| i.to_string()).collect();
            write!(f, "at premise path {}: {}", steps.join("."), self.violation)
        }
    }
}

impl std::error::Error for ProofError {}

fn shape(rule: Rule, detail: impl Into<String>) -> Violation {
    Violation::Shape {
        rule,
        detail: detail.into(),
    }
}

/// `(rest, f)` where `f` is the top-right formula and `rest` the remaining
/// left part (empty for a bare leaf). `None` if the top-right is not a leaf.
fn top_right_leaf(s: &Structure) -> Option<(Structure, &Formula)> {
    match s {
        Structure::Leaf(f) => Some((Structure::Empty, f)),
        Structure::Pair(l, r) => match &**r {
            Structure::Leaf(f) => Some(((**l).clone(), f)),
            _ => None,
        },
        Structure::Empty => None,
    }
}

fn top_left_leaf(s: &Structure) -> Option<(&Formula, Structure)> {
    match s {
        Structure::Leaf(f) => Some((f, Structure::Empty)),
        Structure::Pair(l, r) => match &**l {
            Structure::Leaf(f) => Some((f, (**r).clone())),
            _ => None,
        },
        Structure::Empty => None,
    }
}

/// The one-step reassociations of the top of `s`: `(a,(b,c)) <-> ((a,b),c)`.
/// Normalization guarantees the three parts are non-empty.
pub(crate) fn reassoc_candidates(s: &Structure) -> Vec<Structure> {
    let mut out = Vec::new();
    if let Structure::Pair(l, r) = s {
        if let Structure::Pair(rl, rr) = &**r {
            out.push(pair(
                pair((**l).clone(), (**rl).clone()),
                (**rr).clone(),
            ));
        }
        if let Structure::Pair(ll, lr) = &**l {
            out.push(pair(
                (**ll).clone(),
                pair((**lr).clone(), (**r).clone()),
            ));
        }
    }
    out
}

fn eq_mod(mode: Mode, a: &Structure, b: &Structure) -> bool {
    match mode {
        Mode::Strict => a == b,
        Mode::Modulo => equivalent(a, b),
    }
}

fn the_path<'a>(rule: Rule, at: &'a [Path]) -> Result<&'a Path, Violation> {
    if at.len() != 1 {
        return Err(Violation::PathCount {
            rule,
            expected: 1,
            got: at.len(),
        });
    }
    Ok(&at[0])
}

fn leaf_at<'a>(rule: Rule, s: &'a Structure, p: &Path) -> Result<&'a Formula, Violation> {
    match s.at(p) {
        Ok(Structure::Leaf(f)) => Ok(f),
        Ok(_) => Err(shape(rule, format!("path {} is not a formula leaf", p))),
        Err(_) => Err(Violation::BadPath {
            rule,
            path: p.clone(),
        }),
    }
}

/// Validate a single inference, reading backward from the conclusion.
pub fn check_step(
    rule: Rule,
    conclusion: &Structure,
    at: &[Path],
    label: Option<&str>,
    premises: &[&Structure],
    sig: &Signature,
    mode: Mode,
) -> Result<(), Violation> {
    if premises.len() != rule.arity() {
        return Err(Violation::Arity {
            rule,
            expected: rule.arity(),
            got: premises.len(),
        });
    }
    let needs_path = matches!(
        rule,
        Rule::Top | Rule::Par | Rule::Plus1 | Rule::Plus2 | Rule::With | Rule::Bot | Rule::Der | Rule::QW
    );
    if needs_path {
        the_path(rule, at)?;
    } else if rule != Rule::QC && !at.is_empty() {
        return Err(Violation::PathCount {
            rule,
            expected: 0,
            got: at.len(),
        });
    }

    match rule {
        Rule::Init => check_init(conclusion),
        Rule::One => {
            if conclusion == &leaf(Formula::One) {
                Ok(())
            } else {
                Err(shape(rule, "conclusion must be exactly `|- 1`"))
            }
        }
        Rule::Top => {
            let p = the_path(rule, at)?;
            match leaf_at(rule, conclusion, p)? {
                Formula::Top => Ok(()),
                f => Err(shape(rule, format!("leaf at {} is {}, not top", p, f))),
            }
        }
        Rule::Tensor => check_tensor(conclusion, premises[0], premises[1], mode),
        Rule::Par => {
            let p = the_path(rule, at)?;
            match leaf_at(rule, conclusion, p)? {
                Formula::Par(a, b) => {
                    let expected = conclusion
                        .replace(p, pair(leaf((**a).clone()), leaf((**b).clone())))
                        .expect("path checked");
                    if eq_mod(mode, premises[0], &expected) {
                        Ok(())
                    } else {
                        Err(shape(rule, format!("premise should be `{}`", expected)))
                    }
                }
                f => Err(shape(rule, format!("leaf at {} is {}, not a par", p, f))),
            }
        }
        Rule::Plus1 | Rule::Plus2 => {
            let p = the_path(rule, at)?;
            match leaf_at(rule, conclusion, p)? {
                Formula::Plus(a, b) => {
                    let kept = if rule == Rule::Plus1 { a } else { b };
                    let expected = conclusion
                        .replace(p, leaf((**kept).clone()))
                        .expect("path checked");
                    if eq_mod(mode, premises[0], &expected) {
                        Ok(())
                    } else {
                        Err(shape(rule, format!("premise should be `{}`", expected)))
                    }
                }
                f => Err(shape(rule, format!("leaf at {} is {}, not a plus", p, f))),
            }
        }
        Rule::With => {
            let p = the_path(rule, at)?;
            match leaf_at(rule, conclusion, p)? {
                Formula::With(a, b) => {
                    let e1 = conclusion.replace(p, leaf((**a).clone())).expect("path checked");
                    let e2 = conclusion.replace(p, leaf((**b).clone())).expect("path checked");
                    if eq_mod(mode, premises[0], &e1) && eq_mod(mode, premises[1], &e2) {
                        Ok(())
                    } else {
                        Err(shape(
                            rule,
                            format!("premises should be `{}` and `{}`", e1, e2),
                        ))
                    }
                }
                f => Err(shape(rule, format!("leaf at {} is {}, not a with", p, f))),
            }
        }
        Rule::Bot => {
            let p = the_path(rule, at)?;
            match leaf_at(rule, conclusion, p)? {
                Formula::Bot => {
                    let expected = conclusion.replace(p, Structure::Empty).expect("path checked");
                    if expected.is_empty() {
                        return Err(shape(rule, "removing bot would empty the sequent"));
                    }
                    if eq_mod(mode, premises[0], &expected) {
                        Ok(())
                    } else {
                        Err(shape(rule, format!("premise should be `{}`", expected)))
                    }
                }
                f => Err(shape(rule, format!("leaf at {} is {}, not bot", p, f))),
            }
        }
        Rule::Cut => check_cut(conclusion, premises[0], premises[1], mode),
        Rule::Ex | Rule::Assoc1 | Rule::Assoc2 => {
            if mode == Mode::Modulo {
                return Err(Violation::ModeRestricted { rule });
            }
            check_structural(rule, conclusion, premises[0])
        }
        Rule::Prom => check_prom(conclusion, premises[0], label, sig, mode),
        Rule::Der => {
            let p = the_path(rule, at)?;
            match leaf_at(rule, conclusion, p)? {
                Formula::Quest(i, a) => {
                    if let Some(l) = label {
                        if l != i {
                            return Err(shape(rule, format!("label {} does not match ?[{}]", l, i)));
                        }
                    }
                    let expected = conclusion.replace(p, leaf((**a).clone())).expect("path checked");
                    if eq_mod(mode, premises[0], &expected) {
                        Ok(())
                    } else {
                        Err(shape(rule, format!("premise should be `{}`", expected)))
                    }
                }
                f => Err(shape(rule, format!("leaf at {} is {}, not a quest", p, f))),
            }
        }
        Rule::QA1 | Rule::QA2 => {
            let ax = if rule == Rule::QA1 { Axiom::A1 } else { Axiom::A2 };
            check_quest_reassoc(rule, ax, conclusion, premises[0], sig, mode)
        }
        Rule::QE => check_quest_exchange(conclusion, premises[0], sig, mode),
        Rule::QW => {
            let p = the_path(rule, at)?;
            let sub = conclusion.at(p).map_err(|_| Violation::BadPath {
                rule,
                path: p.clone(),
            })?;
            require_quest_structure(rule, sub, Axiom::W, sig)?;
            let expected = conclusion.replace(p, Structure::Empty).expect("path checked");
            if expected.is_empty() {
                return Err(shape(rule, "weakening would empty the sequent"));
            }
            if eq_mod(mode, premises[0], &expected) {
                Ok(())
            } else {
                Err(shape(rule, format!("premise should be `{}`", expected)))
            }
        }
        Rule::QC => check_contraction(conclusion, at, premises[0], sig, mode),
    }
}

fn check_init(conclusion: &Structure) -> Result<(), Violation> {
    if let Structure::Pair(l, r) = conclusion {
        if let (Structure::Leaf(x), Structure::Leaf(y)) = (&**l, &**r) {
            if x.is_literal() && negate(x).ok().as_ref() == Some(y) {
                return Ok(());
            }
        }
    }
    Err(shape(
        Rule::Init,
        "conclusion must be a dual pair of literals `(A, A^)`",
    ))
}

fn check_structural(rule: Rule, conclusion: &Structure, premise: &Structure) -> Result<(), Violation> {
    let expected = match (rule, conclusion) {
        (Rule::Ex, Structure::Pair(a, b)) => pair((**b).clone(), (**a).clone()),
        (Rule::Assoc1, Structure::Pair(l, c)) => match &**l {
            // conclusion ((a,b),c), premise (a,(b,c))
            Structure::Pair(a, b) => pair((**a).clone(), pair((**b).clone(), (**c).clone())),
            _ => return Err(shape(rule, "conclusion must look like ((Γ, Δ), Π)")),
        },
        (Rule::Assoc2, Structure::Pair(a, r)) => match &**r {
            // conclusion (a,(b,c)), premise ((a,b),c)
            Structure::Pair(b, c) => pair(pair((**a).clone(), (**b).clone()), (**c).clone()),
            _ => return Err(shape(rule, "conclusion must look like (Γ, (Δ, Π))")),
        },
        _ => return Err(shape(rule, "conclusion must be a pair")),
    };
    if premise == &expected {
        Ok(())
    } else {
        Err(shape(rule, format!("premise should be `{}`", expected)))
    }
}

fn check_tensor(
    conclusion: &Structure,
    p1: &Structure,
    p2: &Structure,
    mode: Mode,
) -> Result<(), Violation> {
    match mode {
        Mode::Strict => {
            let (rest, princ) = top_right_leaf(conclusion)
                .ok_or_else(|| shape(Rule::Tensor, "conclusion top-right must be F * G"))?;
            let (f, g) = match princ {
                Formula::Tensor(f, g) => (&**f, &**g),
                other => {
                    return Err(shape(
                        Rule::Tensor,
                        format!("top-right leaf is {}, not a tensor", other),
                    ))
                }
            };
            let (gamma, g1) = top_right_leaf(p1)
                .ok_or_else(|| shape(Rule::Tensor, "first premise must end in G"))?;
            let (delta, f1) = top_right_leaf(p2)
                .ok_or_else(|| shape(Rule::Tensor, "second premise must end in F"))?;
            if g1 != g || f1 != f {
                return Err(shape(
                    Rule::Tensor,
                    "premises carry the wrong components (first takes G, second takes F)",
                ));
            }
            if pair(gamma, delta) == rest {
                Ok(())
            } else {
                Err(shape(Rule::Tensor, "premise contexts do not rebuild the conclusion"))
            }
        }
        Mode::Modulo => {
            for (pa, ga) in p1.leaves() {
                for (pb, fb) in p2.leaves() {
                    let gamma = designate_remainder(p1, &pa).expect("leaf path");
                    let delta = designate_remainder(p2, &pb).expect("leaf path");
                    let princ = crate::formula::tensor(fb.clone(), ga.clone());
                    let cand = pair(pair(gamma, delta), leaf(princ));
                    if equivalent(conclusion, &cand) {
                        return Ok(());
                    }
                }
            }
            Err(shape(
                Rule::Tensor,
                "no rotation of the premises rebuilds the conclusion",
            ))
        }
    }
}

fn check_cut(
    conclusion: &Structure,
    p1: &Structure,
    p2: &Structure,
    mode: Mode,
) -> Result<(), Violation> {
    match mode {
        Mode::Strict => {
            let (gamma, a) =
                top_right_leaf(p1).ok_or_else(|| shape(Rule::Cut, "first premise must end in A"))?;
            let (a_neg, delta) = top_left_leaf(p2)
                .ok_or_else(|| shape(Rule::Cut, "second premise must start with A^"))?;
            let expected_neg = negate(a).map_err(|_| shape(Rule::Cut, "cut formula is not classical"))?;
            if &expected_neg != a_neg {
                return Err(shape(Rule::Cut, "premises do not share a dual cut formula"));
            }
            let cand = pair(gamma, delta);
            if cand.is_empty() {
                return Err(shape(Rule::Cut, "cut would produce an empty sequent"));
            }
            if &cand == conclusion {
                Ok(())
            } else {
                Err(shape(Rule::Cut, format!("conclusion should be `{}`", cand)))
            }
        }
        Mode::Modulo => {
            for (pa, la) in p1.leaves() {
                let Ok(la_neg) = negate(la) else { continue };
                for (pb, lb) in p2.leaves() {
                    if lb != &la_neg {
                        continue;
                    }
                    let gamma = designate_remainder(p1, &pa).expect("leaf path");
                    let delta = designate_remainder(p2, &pb).expect("leaf path");
                    let cand = pair(gamma, delta);
                    if !cand.is_empty() && equivalent(conclusion, &cand) {
                        return Ok(());
                    }
                }
            }
            Err(shape(Rule::Cut, "no dual pair of leaves rebuilds the conclusion"))
        }
    }
}

fn check_prom(
    conclusion: &Structure,
    premise: &Structure,
    label: Option<&str>,
    sig: &Signature,
    mode: Mode,
) -> Result<(), Violation> {
    let try_one = |gamma: Structure, i: &str, f: &Formula| -> Result<(), Violation> {
        match upset_restrict(sig, &gamma, i) {
            Restriction::Restricted(up) => {
                let expected = pair(up, leaf(f.clone()));
                if eq_mod(mode, premise, &expected) {
                    Ok(())
                } else {
                    Err(shape(Rule::Prom, format!("premise should be `{}`", expected)))
                }
            }
            Restriction::Undefined => Err(Violation::PromotionUndefined {
                label: i.to_string(),
            }),
            Restriction::NotApplicable => Err(Violation::PromotionNotApplicable),
        }
    };
    match mode {
        Mode::Strict => {
            let (gamma, princ) = top_right_leaf(conclusion)
                .ok_or_else(|| shape(Rule::Prom, "conclusion top-right must be ![i]F"))?;
            match princ {
                Formula::Bang(i, f) => {
                    if let Some(l) = label {
                        if l != i {
                            return Err(shape(
                                Rule::Prom,
                                format!("label {} does not match ![{}]", l, i),
                            ));
                        }
                    }
                    try_one(gamma, i, f)
                }
                other => Err(shape(
                    Rule::Prom,
                    format!("top-right leaf is {}, not a bang", other),
                )),
            }
        }
        Mode::Modulo => {
            let mut last = shape(Rule::Prom, "conclusion has no bang leaf");
            for (p, lf) in conclusion.leaves() {
                if let Formula::Bang(i, f) = lf {
                    if let Some(l) = label {
                        if l != i {
                            continue;
                        }
                    }
                    let gamma = designate_remainder(conclusion, &p).expect("leaf path");
                    match try_one(gamma, i, f) {
                        Ok(()) => return Ok(()),
                        Err(v) => last = v,
                    }
                }
            }
            Err(last)
        }
    }
}

fn require_quest_structure(
    rule: Rule,
    s: &Structure,
    ax: Axiom,
    sig: &Signature,
) -> Result<(), Violation> {
    for (_, f) in s.leaves() {
        match f {
            Formula::Quest(j, _) => {
                if !sig.allows(j, ax) {
                    return Err(Violation::Unlicensed {
                        label: j.clone(),
                        axiom: ax,
                    });
                }
            }
            other => {
                return Err(shape(
                    rule,
                    format!("leaf {} is not question-marked", other),
                ))
            }
        }
    }
    if s.is_empty() {
        return Err(shape(rule, "the active structure is empty"));
    }
    Ok(())
}

fn check_quest_reassoc(
    rule: Rule,
    ax: Axiom,
    conclusion: &Structure,
    premise: &Structure,
    sig: &Signature,
    mode: Mode,
) -> Result<(), Violation> {
    match mode {
        Mode::Strict => {
            let (rest, q) = match conclusion {
                Structure::Pair(l, r) => ((**l).clone(), (**r).clone()),
                _ => return Err(shape(rule, "conclusion must be (Δ-part, ?-structure)")),
            };
            require_quest_structure(rule, &q, ax, sig)?;
            let (prest, pq) = match premise {
                Structure::Pair(l, r) => ((**l).clone(), (**r).clone()),
                _ => return Err(shape(rule, "premise must be (Δ-part, ?-structure)")),
            };
            if pq != q {
                return Err(shape(rule, "premise must keep the same ?-structure on the right"));
            }
            if reassoc_candidates(&rest).contains(&prest) {
                Ok(())
            } else {
                Err(shape(
                    rule,
                    "premise is not one reassociation step from the conclusion",
                ))
            }
        }
        Mode::Modulo => {
            let mut last = shape(rule, "no licensed ?-structure rotation applies");
            for (rest, sub, _) in subtree_rotations(conclusion) {
                if rest.is_empty() {
                    continue;
                }
                if let Err(v) = require_quest_structure(rule, &sub, ax, sig) {
                    if matches!(v, Violation::Unlicensed { .. }) {
                        last = v;
                    }
                    continue;
                }
                for cand in reassoc_candidates(&rest) {
                    if equivalent(premise, &pair(cand, sub.clone())) {
                        return Ok(());
                    }
                }
            }
            Err(last)
        }
    }
}

fn check_quest_exchange(
    conclusion: &Structure,
    premise: &Structure,
    sig: &Signature,
    mode: Mode,
) -> Result<(), Violation> {
    let rule = Rule::QE;
    match mode {
        Mode::Strict => {
            let (rest, q) = match conclusion {
                Structure::Pair(l, r) => ((**l).clone(), (**r).clone()),
                _ => return Err(shape(rule, "conclusion must be ((Δ1, Δ2), ?-structure)")),
            };
            require_quest_structure(rule, &q, Axiom::E, sig)?;
            let swapped = match &rest {
                Structure::Pair(a, b) => pair((**b).clone(), (**a).clone()),
                _ => return Err(shape(rule, "the exchanged part must be a pair")),
            };
            let expected = pair(swapped, q);
            if premise == &expected {
                Ok(())
            } else {
                Err(shape(rule, format!("premise should be `{}`", expected)))
            }
        }
        Mode::Modulo => {
            let mut last = shape(rule, "no licensed ?-structure rotation applies");
            for (rest, sub, _) in subtree_rotations(conclusion) {
                let Structure::Pair(a, b) = &rest else { continue };
                if let Err(v) = require_quest_structure(rule, &sub, Axiom::E, sig) {
                    if matches!(v, Violation::Unlicensed { .. }) {
                        last = v;
                    }
                    continue;
                }
                let cand = pair(pair((**b).clone(), (**a).clone()), sub);
                if equivalent(premise, &cand) {
                    return Ok(());
                }
            }
            Err(last)
        }
    }
}

fn check_contraction(
    conclusion: &Structure,
    at: &[Path],
    premise: &Structure,
    sig: &Signature,
    mode: Mode,
) -> Result<(), Violation> {
    let rule = Rule::QC;
    if at.len() < 2 {
        return Err(Violation::PathCount {
            rule,
            expected: 2,
            got: at.len(),
        });
    }
    for (i, p) in at.iter().enumerate() {
        for q in &at[i + 1..] {
            if p.is_prefix_of(q) || q.is_prefix_of(p) {
                return Err(shape(rule, format!("copy positions {} and {} overlap", p, q)));
            }
        }
    }
    let first = premise.at(&at[0]).map_err(|_| Violation::BadPath {
        rule,
        path: at[0].clone(),
    })?;
    require_quest_structure(rule, first, Axiom::C, sig)?;
    for p in &at[1..] {
        let sub = premise.at(p).map_err(|_| Violation::BadPath {
            rule,
            path: p.clone(),
        })?;
        if sub != first {
            return Err(shape(rule, format!("copy at {} differs from the retained copy", p)));
        }
    }
    let erased = premise.erase_all(&at[1..]).expect("paths checked disjoint");
    if erased.is_empty() {
        return Err(shape(rule, "contraction would empty the sequent"));
    }
    if eq_mod(mode, conclusion, &erased) {
        Ok(())
    } else {
        Err(shape(rule, format!("conclusion should be `{}`", erased)))
    }
}

/// Check a whole derivation; the first failure is located by premise indices.
pub fn check_proof(p: &Proof, sig: &Signature, mode: Mode) -> Result<(), ProofError> {
    fn go(p: &Proof, sig: &Signature, mode: Mode, trail: &mut Vec<usize>) -> Result<(), ProofError> {
        let premise_seqs: Vec<&Structure> = p.premises.iter().map(|q| &q.sequent).collect();
        check_step(
            p.rule,
            &p.sequent,
            &p.at,
            p.label.as_deref(),
            &premise_seqs,
            sig,
            mode,
        )
        .map_err(|violation| ProofError {
            at: trail.clone(),
            violation,
        })?;
        for (i, q) in p.premises.iter().enumerate() {
            trail.push(i);
            go(q, sig, mode, trail)?;
            trail.pop();
        }
        Ok(())
    }
    go(p, sig, mode, &mut Vec::new())
}

/// Cut-free derivation of `=> (F^, F)`, in modulo mode.
pub fn identity_expansion(f: &Formula) -> Result<Proof, crate::formula::IllFormed> {
    use Formula::*;
    let nf = negate(f)?;
    let conclusion = pair(leaf(nf.clone()), leaf(f.clone()));
    Ok(match f {
        Atom(_) | NegAtom(_) => Proof::axiom(Rule::Init, conclusion),
        One => {
            // (bot, 1): remove bot, then the 1 axiom
            let one_ax = Proof::axiom(Rule::One, leaf(One));
            Proof::unary_at(Rule::Bot, conclusion, Path::parse("L").unwrap(), one_ax)
        }
        Bot => {
            let one_ax = Proof::axiom(Rule::One, leaf(One));
            Proof::unary_at(Rule::Bot, conclusion, Path::parse("R").unwrap(), one_ax)
        }
        Top => Proof {
            rule: Rule::Top,
            sequent: conclusion,
            at: vec![Path::parse("R").unwrap()],
            label: None,
            premises: vec![],
        },
        Zero => Proof {
            rule: Rule::Top,
            sequent: conclusion,
            at: vec![Path::parse("L").unwrap()],
            label: None,
            premises: vec![],
        },
        Tensor(a, b) => {
            // ((b^ # a^), a*b)  <-par-  ((b^, a^), a*b)  <-tensor-  id(b), id(a)
            let na = negate(a)?;
            let nb = negate(b)?;
            let mid = pair(pair(leaf(nb), leaf(na)), leaf(f.clone()));
            let t = Proof::binary(
                Rule::Tensor,
                mid,
                identity_expansion(b)?,
                identity_expansion(a)?,
            );
            Proof::unary_at(Rule::Par, conclusion, Path::parse("L").unwrap(), t)
        }
        Par(a, b) => {
            // ((b^ * a^), a#b)  <-par@R-  ((b^*a^), (a, b))  <-tensor-  id(a^.. )
            let mid = pair(leaf(nf.clone()), pair(leaf((**a).clone()), leaf((**b).clone())));
            // tensor principal is b^ * a^ = negate(a#b); premises (a, a^) and (b, b^)
            let ida = identity_expansion(&negate(a)?)?;
            let idb = identity_expansion(&negate(b)?)?;
            let t = Proof::binary(Rule::Tensor, mid, ida, idb);
            Proof::unary_at(Rule::Par, conclusion, Path::parse("R").unwrap(), t)
        }
        Plus(a, b) => {
            // ((a^ & b^), a+b) <-with@L- (a^, a+b) and (b^, a+b)
            let na = negate(a)?;
            let nb = negate(b)?;
            let left = Proof::unary_at(
                Rule::Plus1,
                pair(leaf(na), leaf(f.clone())),
                Path::parse("R").unwrap(),
                identity_expansion(a)?,
            );
            let right = Proof::unary_at(
                Rule::Plus2,
                pair(leaf(nb), leaf(f.clone())),
                Path::parse("R").unwrap(),
                identity_expansion(b)?,
            );
            Proof {
                rule: Rule::With,
                sequent: conclusion,
                at: vec![Path::parse("L").unwrap()],
                label: None,
                premises: vec![left, right],
            }
        }
        With(a, b) => {
            // ((a^ + b^), a&b) <-with@R- ((a^+b^), a) and ((a^+b^), b)
            let left = Proof::unary_at(
                Rule::Plus1,
                pair(leaf(nf.clone()), leaf((**a).clone())),
                Path::parse("L").unwrap(),
                identity_expansion(a)?,
            );
            let right = Proof::unary_at(
                Rule::Plus2,
                pair(leaf(nf.clone()), leaf((**b).clone())),
                Path::parse("L").unwrap(),
                identity_expansion(b)?,
            );
            Proof {
                rule: Rule::With,
                sequent: conclusion,
                at: vec![Path::parse("R").unwrap()],
                label: None,
                premises: vec![left, right],
            }
        }
        Bang(i, a) => {
            // (?[i]a^, ![i]a) <-prom- (?[i]a^, a) <-der@L- (a^, a)
            let na = negate(a)?;
            let mid = pair(leaf(crate::formula::quest(i, na)), leaf((**a).clone()));
            let d = Proof::unary_at(
                Rule::Der,
                mid.clone(),
                Path::parse("L").unwrap(),
                identity_expansion(a)?,
            );
            Proof::unary(Rule::Prom, conclusion, d)
        }
        Quest(i, a) => {
            // (![i]a^, ?[i]a) <-prom- (?[i]a, a^) <-der@L- (a, a^)
            let na = negate(a)?;
            let inner = identity_expansion(&na)?;
            let mid = pair(leaf(crate::formula::quest(i, (**a).clone())), leaf(na));
            let d = Proof::unary_at(Rule::Der, mid, Path::parse("L").unwrap(), inner);
            Proof::unary(Rule::Prom, conclusion, d)
        }
        ImplR(..) | ImplL(..) => unreachable!("negate already rejected these"),
    })
}

/// Drop strict-mode structural steps, leaving a proof valid in modulo mode.
pub fn erase_structural(p: &Proof) -> Proof {
    if p.rule.is_structural() {
        return erase_structural(&p.premises[0]);
    }
    Proof {
        rule: p.rule,
        sequent: p.sequent.clone(),
        at: p.at.clone(),
        label: p.label.clone(),
        premises: p.premises.iter().map(erase_structural).collect(),
    }
}

/// Shortest `e`/`a1`/`a2` chain transforming conclusion `from` into premise
/// `to`, as (rule, conclusion, premise) triples listed bottom-up.
pub fn structural_chain(from: &Structure, to: &Structure) -> Option<Vec<(Rule, Structure, Structure)>> {
    use std::collections::{HashMap, VecDeque};
    if from == to {
        return Some(Vec::new());
    }
    if !equivalent(from, to) {
        return None;
    }
    let mut parent: HashMap<Structure, (Structure, Rule)> = HashMap::new();
    let mut queue = VecDeque::new();
    queue.push_back(from.clone());
    while let Some(cur) = queue.pop_front() {
        let mut steps: Vec<(Rule, Structure)> = Vec::new();
        if let Structure::Pair(a, b) = &cur {
            steps.push((Rule::Ex, pair((**b).clone(), (**a).clone())));
            if let Structure::Pair(a2, b2) = &**a {
                // conclusion ((a2,b2),b) via a1 has premise (a2,(b2,b))
                steps.push((Rule::Assoc1, pair((**a2).clone(), pair((**b2).clone(), (**b).clone()))));
            }
            if let Structure::Pair(b2, c2) = &**b {
                steps.push((Rule::Assoc2, pair(pair((**a).clone(), (**b2).clone()), (**c2).clone())));
            }
        }
        for (rule, premise) in steps {
            if premise == *from || parent.contains_key(&premise) {
                continue;
            }
            parent.insert(premise.clone(), (cur.clone(), rule));
            if &premise == to {
                // rebuild bottom-up: each entry is (rule, conclusion, premise)
                let mut chain = Vec::new();
                let mut node = premise.clone();
                while node != *from {
                    let (below, rule) = parent.get(&node).unwrap().clone();
                    chain.push((rule, below.clone(), node.clone()));
                    node = below;
                }
                chain.reverse();
                return Some(chain);
            }
            queue.push_back(premise);
        }
    }
    None
}

/// Stack structural nodes under `top` so the whole thing concludes `bottom`.
fn chain_down(top: Proof, bottom: &Structure) -> Option<Proof> {
    let chain = structural_chain(bottom, &top.sequent)?;
    let mut proof = top;
    for (rule, conclusion, _premise) in chain.into_iter().rev() {
        proof = Proof::unary(rule, conclusion, proof);
    }
    Some(proof)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandError(pub String);

impl fmt::Display for ExpandError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot expand to strict mode: {}", self.0)
    }
}

impl std::error::Error for ExpandError {}

/// Rebuild a modulo-mode proof as a strict-mode proof by inserting explicit
/// `e`/`a1`/`a2` steps around each inference.
pub fn expand_to_strict(p: &Proof, sig: &Signature) -> Result<Proof, ExpandError> {
    let expanded: Vec<Proof> = p
        .premises
        .iter()
        .map(|q| expand_to_strict(q, sig))
        .collect::<Result<_, _>>()?;
    let fail = |msg: &str| ExpandError(format!("{} at `{}`: {}", p.rule, p.sequent, msg));

    // Find a strict instance: a conclusion representative plus premise
    // representatives that satisfy the literal shapes.
    let (strict_conclusion, strict_premises): (Structure, Vec<Structure>) = match p.rule {
        Rule::Init | Rule::One | Rule::Top => (p.sequent.clone(), vec![]),
        Rule::Par | Rule::Plus1 | Rule::Plus2 | Rule::With | Rule::Bot | Rule::Der | Rule::QW => {
            // deep rules: the conclusion stays put, premises move to the
            // literal replacement shapes
            let path = p.at.first().ok_or_else(|| fail("missing path"))?;
            let lf = p
                .sequent
                .at(path)
                .map_err(|_| fail("bad path"))?
                .clone();
            let shapes: Vec<Structure> = match (p.rule, &lf) {
                (Rule::Par, Structure::Leaf(Formula::Par(a, b))) => vec![p
                    .sequent
                    .replace(path, pair(leaf((**a).clone()), leaf((**b).clone())))
                    .unwrap()],
                (Rule::Plus1, Structure::Leaf(Formula::Plus(a, _))) => {
                    vec![p.sequent.replace(path, leaf((**a).clone())).unwrap()]
                }
                (Rule::Plus2, Structure::Leaf(Formula::Plus(_, b))) => {
                    vec![p.sequent.replace(path, leaf((**b).clone())).unwrap()]
                }
                (Rule::With, Structure::Leaf(Formula::With(a, b))) => vec![
                    p.sequent.replace(path, leaf((**a).clone())).unwrap(),
                    p.sequent.replace(path, leaf((**b).clone())).unwrap(),
                ],
                (Rule::Bot, Structure::Leaf(Formula::Bot)) => {
                    vec![p.sequent.replace(path, Structure::Empty).unwrap()]
                }
                (Rule::Der, Structure::Leaf(Formula::Quest(_, a))) => {
                    vec![p.sequent.replace(path, leaf((**a).clone())).unwrap()]
                }
                (Rule::QW, sub) => {
                    let _ = sub;
                    vec![p.sequent.replace(path, Structure::Empty).unwrap()]
                }
                _ => return Err(fail("principal position does not match the rule")),
            };
            (p.sequent.clone(), shapes)
        }
        Rule::Tensor => {
            let mut found = None;
            'outer: for (pa, ga) in expanded[0].sequent.leaves() {
                for (pb, fb) in expanded[1].sequent.leaves() {
                    let gamma = designate_remainder(&expanded[0].sequent, &pa).unwrap();
                    let delta = designate_remainder(&expanded[1].sequent, &pb).unwrap();
                    let princ = crate::formula::tensor(fb.clone(), ga.clone());
                    let cand = pair(pair(gamma.clone(), delta.clone()), leaf(princ));
                    if equivalent(&p.sequent, &cand) {
                        found = Some((
                            cand,
                            vec![
                                pair(gamma, leaf(ga.clone())),
                                pair(delta, leaf(fb.clone())),
                            ],
                        ));
                        break 'outer;
                    }
                }
            }
            found.ok_or_else(|| fail("no tensor instance"))?
        }
        Rule::Cut => {
            let mut found = None;
            'outer: for (pa, la) in expanded[0].sequent.leaves() {
                let Ok(nla) = negate(la) else { continue };
                for (pb, lb) in expanded[1].sequent.leaves() {
                    if lb != &nla {
                        continue;
                    }
                    let gamma = designate_remainder(&expanded[0].sequent, &pa).unwrap();
                    let delta = designate_remainder(&expanded[1].sequent, &pb).unwrap();
                    let cand = pair(gamma.clone(), delta.clone());
                    if !cand.is_empty() && equivalent(&p.sequent, &cand) {
                        found = Some((
                            cand,
                            vec![
                                pair(gamma, leaf(la.clone())),
                                pair(leaf(lb.clone()), delta),
                            ],
                        ));
                        break 'outer;
                    }
                }
            }
            found.ok_or_else(|| fail("no cut instance"))?
        }
        Rule::Prom => {
            let mut found = None;
            for (path, lf) in p.sequent.leaves() {
                if let Formula::Bang(i, f) = lf {
                    let gamma = designate_remainder(&p.sequent, &path).unwrap();
                    if let Restriction::Restricted(up) = upset_restrict(sig, &gamma, i) {
                        let prem = pair(up, leaf((**f).clone()));
                        if equivalent(&expanded[0].sequent, &prem) {
                            found = Some((pair(gamma, leaf(lf.clone())), vec![prem]));
                            break;
                        }
                    }
                }
            }
            found.ok_or_else(|| fail("no promotion instance"))?
        }
        Rule::QA1 | Rule::QA2 | Rule::QE => {
            let ax = match p.rule {
                Rule::QA1 => Axiom::A1,
                Rule::QA2 => Axiom::A2,
                _ => Axiom::E,
            };
            let mut found = None;
            'outer: for (rest, sub, _) in subtree_rotations(&p.sequent) {
                if rest.is_empty() || require_quest_structure(p.rule, &sub, ax, sig).is_err() {
                    continue;
                }
                let cands = if p.rule == Rule::QE {
                    match &rest {
                        Structure::Pair(a, b) => vec![pair((**b).clone(), (**a).clone())],
                        _ => vec![],
                    }
                } else {
                    reassoc_candidates(&rest)
                };
                for cand in cands {
                    let prem = pair(cand, sub.clone());
                    if equivalent(&expanded[0].sequent, &prem) {
                        found = Some((pair(rest, sub.clone()), vec![prem]));
                        break 'outer;
                    }
                }
            }
            found.ok_or_else(|| fail("no licensed structural instance"))?
        }
        Rule::QC => {
            let erased = expanded[0]
                .sequent
                .erase_all(&p.at[1..])
                .map_err(|_| fail("overlapping copy positions"))?;
            (erased, vec![expanded[0].sequent.clone()])
        }
        Rule::Ex | Rule::Assoc1 | Rule::Assoc2 => {
            // already strict; keep as-is
            (p.sequent.clone(), vec![expanded[0].sequent.clone()])
        }
    };

    let mut wrapped = Vec::new();
    for (want, sub) in strict_premises.iter().zip(expanded) {
        let w = chain_down(sub, want).ok_or_else(|| fail("premise not equivalent"))?;
        // the chain ends at the literal premise shape
        debug_assert_eq!(&w.sequent, want);
        wrapped.push(w);
    }
    let node = Proof {
        rule: p.rule,
        sequent: strict_conclusion,
        at: p.at.clone(),
        label: p.label.clone(),
        premises: wrapped,
    };
    chain_down(node, &p.sequent).ok_or_else(|| fail("conclusion not equivalent"))
}
