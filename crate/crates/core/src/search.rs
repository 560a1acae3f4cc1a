//! Bounded backward cut-free proof search for both calculi.
//!
//! The classical engine works in modulo mode: goal states are quotiented by
//! canonical forms, candidate rule instances are enumerated through subtree
//! designations, and the top-level structural rules never appear as search
//! steps. Contraction is bounded per branch, so an `Exhausted` verdict is
//! always scoped: no proof exists using at most the stated number of
//! contractions per branch. Failed states are memoized together with the
//! budget they failed under; proofs replay through the checker before being
//! returned.

use crate::classical::{check_proof, reassoc_candidates, Mode, Proof, Rule};
use crate::equivalence::{canonicalize, designate_remainder, subtree_rotations};
use crate::formula::{negate, Formula};
use crate::intuitionistic::{check_proof_i, enumerate_i, IProof, ISequent, SystemConfig};
use crate::signature::{all_quest_with, upset_restrict, Axiom, Restriction, Signature};
use crate::structure::{leaf, locate_after_insert, pair, Dir, Path, Structure};
use std::collections::HashMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// rule applications per branch
    pub max_depth: u32,
    /// contraction steps per branch
    pub max_contractions: u32,
    /// global cap on expanded states
    pub max_visited: u64,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_depth: 14,
            max_contractions: 2,
            max_visited: 200_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<P> {
    Proved(P),
    /// The state space saturated: no proof exists within the contraction
    /// bound, at any depth.
    Exhausted { contraction_bound: u32 },
    BudgetExceeded,
}

impl<P> SearchOutcome<P> {
    pub fn is_proved(&self) -> bool {
        matches!(self, SearchOutcome::Proved(_))
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self, SearchOutcome::Exhausted { .. })
    }

    pub fn verdict(&self) -> &'static str {
        match self {
            SearchOutcome::Proved(_) => "proved",
            SearchOutcome::Exhausted { .. } => "exhausted",
            SearchOutcome::BudgetExceeded => "budget-exceeded",
        }
    }
}

enum Res<P> {
    Proved(P),
    Fail { clean: bool },
}

struct App {
    rule: Rule,
    at: Vec<Path>,
    premises: Vec<Structure>,
}

fn axiom_app(state: &Structure) -> Option<Proof> {
    // init: exactly two dual literal leaves
    if let Structure::Pair(l, r) = state {
        if let (Structure::Leaf(x), Structure::Leaf(y)) = (&**l, &**r) {
            if x.is_literal() && negate(x).ok().as_ref() == Some(y) {
                return Some(Proof::axiom(Rule::Init, state.clone()));
            }
        }
    }
    if state == &leaf(Formula::One) {
        return Some(Proof::axiom(Rule::One, state.clone()));
    }
    for (p, f) in state.leaves() {
        if f == &Formula::Top {
            return Some(Proof {
                rule: Rule::Top,
                sequent: state.clone(),
                at: vec![p],
                label: None,
                premises: vec![],
            });
        }
    }
    None
}

/// Backward rule instances at a classical state, cut-free, modulo mode.
/// Invertible context rules come first, then splitting rules, then the
/// subexponential structural rules, then contraction; the order only
/// affects speed, never verdicts.
fn enumerate_c(state: &Structure, sig: &Signature, with_contraction: bool) -> Vec<App> {
    let mut out = Vec::new();
    let mut push = |rule, at: Vec<Path>, premises: Vec<Structure>| {
        out.push(App { rule, at, premises });
    };

    // context rules at formula leaves
    for (p, f) in state.leaves() {
        match f {
            Formula::Par(a, b) => {
                let prem = state
                    .replace(&p, pair(leaf((**a).clone()), leaf((**b).clone())))
                    .unwrap();
                push(Rule::Par, vec![p.clone()], vec![prem]);
            }
            Formula::With(a, b) => {
                let p1 = state.replace(&p, leaf((**a).clone())).unwrap();
                let p2 = state.replace(&p, leaf((**b).clone())).unwrap();
                push(Rule::With, vec![p.clone()], vec![p1, p2]);
            }
            Formula::Bot => {
                let prem = state.replace(&p, Structure::Empty).unwrap();
                if !prem.is_empty() {
                    push(Rule::Bot, vec![p.clone()], vec![prem]);
                }
            }
            Formula::Plus(a, b) => {
                let p1 = state.replace(&p, leaf((**a).clone())).unwrap();
                let p2 = state.replace(&p, leaf((**b).clone())).unwrap();
                push(Rule::Plus1, vec![p.clone()], vec![p1]);
                push(Rule::Plus2, vec![p.clone()], vec![p2]);
            }
            Formula::Quest(_, a) => {
                let prem = state.replace(&p, leaf((**a).clone())).unwrap();
                push(Rule::Der, vec![p.clone()], vec![prem]);
            }
            _ => {}
        }
    }

    // splitting rules at designated leaves
    for (p, f) in state.leaves() {
        match f {
            Formula::Tensor(tf, tg) => {
                let rest = designate_remainder(state, &p).unwrap();
                let mut splits: Vec<(Structure, Structure)> = Vec::new();
                if let Structure::Pair(l, r) = &rest {
                    splits.push(((**l).clone(), (**r).clone()));
                }
                splits.push((rest.clone(), Structure::Empty));
                if !rest.is_empty() {
                    splits.push((Structure::Empty, rest.clone()));
                }
                for (gamma, delta) in splits {
                    let p1 = pair(gamma, leaf((**tg).clone()));
                    let p2 = pair(delta, leaf((**tf).clone()));
                    push(Rule::Tensor, vec![], vec![p1, p2]);
                }
            }
            Formula::Bang(i, a) => {
                let rest = designate_remainder(state, &p).unwrap();
                if let Restriction::Restricted(up) = upset_restrict(sig, &rest, i) {
                    let prem = pair(up, leaf((**a).clone()));
                    push(Rule::Prom, vec![], vec![prem]);
                }
            }
            _ => {}
        }
    }

    // subexponential structural rules at designated subtrees
    for (rest, sub, _) in subtree_rotations(state) {
        if rest.is_empty() {
            continue;
        }
        for (rule, ax) in [(Rule::QA1, Axiom::A1), (Rule::QA2, Axiom::A2)] {
            if all_quest_with(sig, &sub, ax) {
                for cand in reassoc_candidates(&rest) {
                    push(rule, vec![], vec![pair(cand, sub.clone())]);
                }
            }
        }
        if all_quest_with(sig, &sub, Axiom::E) {
            if let Structure::Pair(a, b) = &rest {
                let prem = pair(pair((**b).clone(), (**a).clone()), sub.clone());
                push(Rule::QE, vec![], vec![prem]);
            }
        }
    }

    // weakening
    for p in state.node_paths() {
        let sub = state.at(&p).unwrap();
        if all_quest_with(sig, sub, Axiom::W) {
            let prem = state.replace(&p, Structure::Empty).unwrap();
            if !prem.is_empty() {
                push(Rule::QW, vec![p.clone()], vec![prem]);
            }
        }
    }

    // contraction: duplicate a C-licensed ?-structure anywhere
    if with_contraction {
        for p in state.node_paths() {
            let sub = state.at(&p).unwrap().clone();
            if !all_quest_with(sig, &sub, Axiom::C) {
                continue;
            }
            for q in state.node_paths() {
                for side in [Dir::L, Dir::R] {
                    let grown = state.insert_at(&q, side, sub.clone()).unwrap();
                    let copy_at = q.child(side);
                    let retained = locate_after_insert(&p, &q, side);
                    push(Rule::QC, vec![retained, copy_at], vec![grown]);
                }
            }
        }
    }

    out
}

struct ClassicalSearch<'a> {
    sig: &'a Signature,
    budget: Budget,
    quotient: bool,
    visited: u64,
    on_path: Vec<Structure>,
    failed: HashMap<Structure, Vec<(u32, u32, bool)>>,
    proved: HashMap<Structure, Proof>,
}

impl<'a> ClassicalSearch<'a> {
    fn key(&self, s: &Structure) -> Structure {
        if self.quotient {
            canonicalize(s).expect("search states are non-empty")
        } else {
            s.clone()
        }
    }

    fn search(&mut self, state: Structure, depth_left: u32, contr_left: u32) -> Res<Proof> {
        if let Some(p) = axiom_app(&state) {
            return Res::Proved(p);
        }
        let key = self.key(&state);
        if self.quotient {
            if let Some(p) = self.proved.get(&key) {
                if p.contractions_used() <= contr_left && p.depth() as u32 <= depth_left + 1 {
                    return Res::Proved(p.clone());
                }
            }
            if let Some(entries) = self.failed.get(&key) {
                for &(d, c, clean) in entries {
                    if clean && c >= contr_left {
                        return Res::Fail { clean: true };
                    }
                    if !clean && d >= depth_left && c >= contr_left {
                        return Res::Fail { clean: false };
                    }
                }
            }
        }
        if self.on_path.contains(&key) {
            // a repeated sequent on a branch can always be cut out
            return Res::Fail { clean: true };
        }
        if depth_left == 0 {
            return Res::Fail { clean: false };
        }
        self.visited += 1;
        if self.visited > self.budget.max_visited {
            return Res::Fail { clean: false };
        }

        self.on_path.push(key.clone());
        let apps = enumerate_c(&state, self.sig, contr_left > 0);
        let mut all_clean = true;
        let mut found: Option<Proof> = None;
        'apps: for app in apps {
            let contr_next = contr_left - u32::from(app.rule == Rule::QC);
            let mut subproofs = Vec::with_capacity(app.premises.len());
            for prem in &app.premises {
                match self.search(prem.clone(), depth_left - 1, contr_next) {
                    Res::Proved(p) => subproofs.push(p),
                    Res::Fail { clean } => {
                        if !clean {
                            all_clean = false;
                        }
                        continue 'apps;
                    }
                }
            }
            found = Some(Proof {
                rule: app.rule,
                sequent: state.clone(),
                at: app.at,
                label: None,
                premises: subproofs,
            });
            break;
        }
        self.on_path.pop();

        match found {
            Some(p) => {
                if self.quotient {
                    self.proved.entry(key).or_insert_with(|| p.clone());
                }
                Res::Proved(p)
            }
            None => {
                if self.quotient {
                    self.failed
                        .entry(key)
                        .or_default()
                        .push((depth_left, contr_left, all_clean));
                }
                Res::Fail { clean: all_clean }
            }
        }
    }
}

/// Backward cut-free search for `=> seq`, quotienting goal states by
/// canonical form.
pub fn prove_classical(seq: &Structure, sig: &Signature, budget: &Budget) -> SearchOutcome<Proof> {
    prove_classical_with_options(seq, sig, budget, true)
}

/// As `prove_classical`; `quotient` turns the canonical-form memoization off
/// (the verdict must not change, only the running time).
pub fn prove_classical_with_options(
    seq: &Structure,
    sig: &Signature,
    budget: &Budget,
    quotient: bool,
) -> SearchOutcome<Proof> {
    assert!(!seq.is_empty(), "a sequent is a non-empty structure");
    let mut engine = ClassicalSearch {
        sig,
        budget: *budget,
        quotient,
        visited: 0,
        on_path: Vec::new(),
        failed: HashMap::new(),
        proved: HashMap::new(),
    };
    match engine.search(seq.clone(), budget.max_depth, budget.max_contractions) {
        Res::Proved(p) => {
            if let Err(e) = check_proof(&p, sig, Mode::Modulo) {
                panic!("search produced a proof the checker rejects: {}", e);
            }
            SearchOutcome::Proved(p)
        }
        Res::Fail { clean: true } => SearchOutcome::Exhausted {
            contraction_bound: budget.max_contractions,
        },
        Res::Fail { clean: false } => SearchOutcome::BudgetExceeded,
    }
}

struct IntSearch<'a> {
    sig: &'a Signature,
    sys: SystemConfig,
    budget: Budget,
    visited: u64,
    on_path: Vec<ISequent>,
    failed: HashMap<ISequent, Vec<(u32, u32, bool)>>,
    proved: HashMap<ISequent, IProof>,
}

fn iaxiom_app(seq: &ISequent, sys: SystemConfig) -> Option<IProof> {
    use crate::intuitionistic::IRule;
    match (&seq.antecedent, &seq.succedent) {
        (Structure::Leaf(Formula::Atom(x)), Formula::Atom(y)) if x == y => {
            return Some(IProof::axiom(IRule::Id, seq.clone()))
        }
        (_, Formula::Top) => return Some(IProof::axiom(IRule::TopR, seq.clone())),
        (Structure::Empty, Formula::One) => {
            return Some(IProof::axiom(IRule::OneR, seq.clone()))
        }
        _ => {}
    }
    if sys.zero {
        for (p, f) in seq.antecedent.leaves() {
            if f == &Formula::Zero {
                return Some(IProof {
                    rule: IRule::ZeroL,
                    sequent: seq.clone(),
                    at: vec![p],
                    label: None,
                    premises: vec![],
                });
            }
        }
    }
    None
}

impl<'a> IntSearch<'a> {
    fn search(&mut self, state: ISequent, depth_left: u32, contr_left: u32) -> Res<IProof> {
        use crate::intuitionistic::IRule;
        if let Some(p) = iaxiom_app(&state, self.sys) {
            return Res::Proved(p);
        }
        if let Some(p) = self.proved.get(&state) {
            if p.contractions_used() <= contr_left && p.node_count() as u32 <= depth_left + 1 {
                return Res::Proved(p.clone());
            }
        }
        if let Some(entries) = self.failed.get(&state) {
            for &(d, c, clean) in entries {
                if clean && c >= contr_left {
                    return Res::Fail { clean: true };
                }
                if !clean && d >= depth_left && c >= contr_left {
                    return Res::Fail { clean: false };
                }
            }
        }
        if self.on_path.contains(&state) {
            return Res::Fail { clean: true };
        }
        if depth_left == 0 {
            return Res::Fail { clean: false };
        }
        self.visited += 1;
        if self.visited > self.budget.max_visited {
            return Res::Fail { clean: false };
        }

        self.on_path.push(state.clone());
        let apps = enumerate_i(&state, self.sig, self.sys, contr_left > 0);
        let mut all_clean = true;
        let mut found: Option<IProof> = None;
        'apps: for app in apps {
            let contr_next = contr_left - u32::from(app.rule == IRule::BangC);
            let mut subproofs = Vec::with_capacity(app.premises.len());
            for prem in &app.premises {
                match self.search(prem.clone(), depth_left - 1, contr_next) {
                    Res::Proved(p) => subproofs.push(p),
                    Res::Fail { clean } => {
                        if !clean {
                            all_clean = false;
                        }
                        continue 'apps;
                    }
                }
            }
            found = Some(IProof {
                rule: app.rule,
                sequent: state.clone(),
                at: app.at,
                label: app.label,
                premises: subproofs,
            });
            break;
        }
        self.on_path.pop();

        match found {
            Some(p) => {
                self.proved.entry(state).or_insert_with(|| p.clone());
                Res::Proved(p)
            }
            None => {
                self.failed
                    .entry(state)
                    .or_default()
                    .push((depth_left, contr_left, all_clean));
                Res::Fail { clean: all_clean }
            }
        }
    }
}

/// Backward cut-free search in the two-sided system. Shapes are strict;
/// states are memoized exactly.
pub fn prove_intuitionistic(
    seq: &ISequent,
    sig: &Signature,
    sys: SystemConfig,
    budget: &Budget,
) -> SearchOutcome<IProof> {
    let mut engine = IntSearch {
        sig,
        sys,
        budget: *budget,
        visited: 0,
        on_path: Vec::new(),
        failed: HashMap::new(),
        proved: HashMap::new(),
    };
    match engine.search(seq.clone(), budget.max_depth, budget.max_contractions) {
        Res::Proved(p) => {
            if let Err(e) = check_proof_i(&p, sig, sys) {
                panic!("search produced a proof the checker rejects: {}", e);
            }
            SearchOutcome::Proved(p)
        }
        Res::Fail { clean: true } => SearchOutcome::Exhausted {
            contraction_bound: budget.max_contractions,
        },
        Res::Fail { clean: false } => SearchOutcome::BudgetExceeded,
    }
}
