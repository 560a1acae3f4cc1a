//! The two-sided intuitionistic calculi.
//!
//! Sequents have a structure antecedent and a single succedent formula.
//! There are no free top-level structural rules here — the system is
//! non-commutative and non-associative — so checking has a single, strict
//! mode and every shape is literal.
//!
//! Two rule sets exist: the base system, whose only subexponential
//! associativity rules are `a1l` and `a2r`, and the extended system with
//! all six position variants. The associativity and exchange rules are
//! interchange rules: each one is accepted in both rewrite directions.

use crate::formula::Formula;
use crate::signature::{all_bang_with, upset_restrict_bang, Axiom, Restriction, Signature};
use crate::structure::{leaf, locate_after_insert, pair, Dir, Path, Structure};
use std::fmt;

/// Two-sided sequent `Γ |- C`; the antecedent may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ISequent {
    pub antecedent: Structure,
    pub succedent: Formula,
}

impl ISequent {
    pub fn new(antecedent: Structure, succedent: Formula) -> ISequent {
        ISequent {
            antecedent,
            succedent,
        }
    }

    pub fn check_well_formed(&self, allow_zero: bool) -> Result<(), crate::formula::IllFormed> {
        for (_, f) in self.antecedent.leaves() {
            f.check_intuitionistic(allow_zero)?;
        }
        self.succedent.check_intuitionistic(allow_zero)
    }
}

impl fmt::Display for ISequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |- {}", self.antecedent, self.succedent)
    }
}

/// Which intuitionistic system is in force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SystemConfig {
    pub extended_assoc: bool,
    pub zero: bool,
}

impl SystemConfig {
    pub fn base() -> SystemConfig {
        SystemConfig {
            extended_assoc: false,
            zero: false,
        }
    }

    pub fn extended() -> SystemConfig {
        SystemConfig {
            extended_assoc: true,
            zero: false,
        }
    }

    pub fn with_zero(self) -> SystemConfig {
        SystemConfig { zero: true, ..self }
    }

    pub fn name(&self) -> &'static str {
        match (self.extended_assoc, self.zero) {
            (false, false) => "int",
            (false, true) => "int+0",
            (true, false) => "int-plus",
            (true, true) => "int-plus+0",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IRule {
    Id,
    TensorR,
    TensorL,
    ArrowR,
    ArrowL,
    LArrowR,
    LArrowL,
    WithR,
    WithL1,
    WithL2,
    PlusR1,
    PlusR2,
    PlusL,
    OneR,
    OneL,
    TopR,
    ZeroL,
    BangL,
    BangR,
    BangW,
    BangC,
    BangE,
    A1L,
    A1M,
    A1R,
    A2L,
    A2M,
    A2R,
}

impl IRule {
    pub fn name(self) -> &'static str {
        match self {
            IRule::Id => "id",
            IRule::TensorR => "tensor_r",
            IRule::TensorL => "tensor_l",
            IRule::ArrowR => "arrow_r",
            IRule::ArrowL => "arrow_l",
            IRule::LArrowR => "larrow_r",
            IRule::LArrowL => "larrow_l",
            IRule::WithR => "with_r",
            IRule::WithL1 => "with_l1",
            IRule::WithL2 => "with_l2",
            IRule::PlusR1 => "plus_r1",
            IRule::PlusR2 => "plus_r2",
            IRule::PlusL => "plus_l",
            IRule::OneR => "one_r",
            IRule::OneL => "one_l",
            IRule::TopR => "top_r",
            IRule::ZeroL => "zero_l",
            IRule::BangL => "bang_l",
            IRule::BangR => "bang_r",
            IRule::BangW => "bang_w",
            IRule::BangC => "bang_c",
            IRule::BangE => "bang_e",
            IRule::A1L => "a1l",
            IRule::A1M => "a1m",
            IRule::A1R => "a1r",
            IRule::A2L => "a2l",
            IRule::A2M => "a2m",
            IRule::A2R => "a2r",
        }
    }

    pub fn parse(s: &str) -> Option<IRule> {
        Some(match s {
            "id" => IRule::Id,
            "tensor_r" => IRule::TensorR,
            "tensor_l" => IRule::TensorL,
            "arrow_r" => IRule::ArrowR,
            "arrow_l" => IRule::ArrowL,
            "larrow_r" => IRule::LArrowR,
            "larrow_l" => IRule::LArrowL,
            "with_r" => IRule::WithR,
            "with_l1" => IRule::WithL1,
            "with_l2" => IRule::WithL2,
            "plus_r1" => IRule::PlusR1,
            "plus_r2" => IRule::PlusR2,
            "plus_l" => IRule::PlusL,
            "one_r" => IRule::OneR,
            "one_l" => IRule::OneL,
            "top_r" => IRule::TopR,
            "zero_l" => IRule::ZeroL,
            "bang_l" => IRule::BangL,
            "bang_r" => IRule::BangR,
            "bang_w" => IRule::BangW,
            "bang_c" => IRule::BangC,
            "bang_e" => IRule::BangE,
            "a1l" => IRule::A1L,
            "a1m" => IRule::A1M,
            "a1r" => IRule::A1R,
            "a2l" => IRule::A2L,
            "a2m" => IRule::A2M,
            "a2r" => IRule::A2R,
            _ => return None,
        })
    }

    pub fn arity(self) -> usize {
        match self {
            IRule::Id | IRule::OneR | IRule::TopR | IRule::ZeroL => 0,
            IRule::TensorR | IRule::ArrowL | IRule::LArrowL | IRule::WithR | IRule::PlusL => 2,
            _ => 1,
        }
    }

    /// Position of the licensed bang structure among the three parts of a
    /// reassociation, and the axiom it must carry.
    fn assoc_spec(self) -> Option<(usize, Axiom)> {
        Some(match self {
            IRule::A1L => (0, Axiom::A1),
            IRule::A1M => (1, Axiom::A1),
            IRule::A1R => (2, Axiom::A1),
            IRule::A2L => (0, Axiom::A2),
            IRule::A2M => (1, Axiom::A2),
            IRule::A2R => (2, Axiom::A2),
            _ => return None,
        })
    }

    pub fn in_system(self, sys: SystemConfig) -> bool {
        match self {
            IRule::ZeroL => sys.zero,
            IRule::A1M | IRule::A1R | IRule::A2L | IRule::A2M => sys.extended_assoc,
            _ => true,
        }
    }
}

impl fmt::Display for IRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IProof {
    pub rule: IRule,
    pub sequent: ISequent,
    pub at: Vec<Path>,
    pub label: Option<String>,
    pub premises: Vec<IProof>,
}

impl IProof {
    pub fn axiom(rule: IRule, sequent: ISequent) -> IProof {
        IProof {
            rule,
            sequent,
            at: Vec::new(),
            label: None,
            premises: Vec::new(),
        }
    }

    pub fn unary(rule: IRule, sequent: ISequent, premise: IProof) -> IProof {
        IProof {
            rule,
            sequent,
            at: Vec::new(),
            label: None,
            premises: vec![premise],
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(IProof::node_count).sum::<usize>()
    }

    pub fn contractions_used(&self) -> u32 {
        let own = u32::from(self.rule == IRule::BangC);
        own + self
            .premises
            .iter()
            .map(IProof::contractions_used)
            .max()
            .unwrap_or(0)
    }

    pub fn rules_used(&self) -> Vec<IRule> {
        let mut out = vec![self.rule];
        for p in &self.premises {
            out.extend(p.rules_used());
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IViolation {
    Arity { rule: IRule, expected: usize, got: usize },
    PathCount { rule: IRule, expected: usize, got: usize },
    BadPath { rule: IRule, path: Path },
    Shape { rule: IRule, detail: String },
    SystemMismatch { rule: IRule, system: &'static str },
    Unlicensed { label: String, axiom: Axiom },
    PromotionUndefined { label: String },
    PromotionNotApplicable,
}

impl fmt::Display for IViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IViolation::Arity { rule, expected, got } => {
                write!(f, "{}: expected {} premises, found {}", rule, expected, got)
            }
            IViolation::PathCount { rule, expected, got } => {
                write!(f, "{}: expected {} path(s), found {}", rule, expected, got)
            }
            IViolation::BadPath { rule, path } => {
                write!(f, "{}: path {} does not address a node", rule, path)
            }
            IViolation::Shape { rule, detail } => write!(f, "{}: {}", rule, detail),
            IViolation::SystemMismatch { rule, system } => {
                write!(f, "{} is not a rule of system {}", rule, system)
            }
            IViolation::Unlicensed { label, axiom } => {
                write!(f, "index {} does not license axiom {}", label, axiom)
            }
            IViolation::PromotionUndefined { label } => write!(
                f,
                "bang_r: the restriction of the antecedent above {} is undefined",
                label
            ),
            IViolation::PromotionNotApplicable => {
                write!(f, "bang_r: antecedent has a leaf without a bang")
            }
        }
    }
}

impl std::error::Error for IViolation {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IProofError {
    pub at: Vec<usize>,
    pub violation: IViolation,
}

impl fmt::Display for IProofError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.at.is_empty() {
            write!(f, "at the root: {}", self.violation)
        } else {
            let steps: Vec<String> = self.at.iter().map(|i| i.to_string()).collect();
            write!(f, "at premise path {}: {}", steps.join("."), self.violation)
        }
    }
}

impl std::error::Error for IProofError {}

fn ishape(rule: IRule, detail: impl Into<String>) -> IViolation {
    IViolation::Shape {
        rule,
        detail: detail.into(),
    }
}

fn the_path<'a>(rule: IRule, at: &'a [Path]) -> Result<&'a Path, IViolation> {
    if at.len() != 1 {
        return Err(IViolation::PathCount {
            rule,
            expected: 1,
            got: at.len(),
        });
    }
    Ok(&at[0])
}

fn leaf_at<'a>(rule: IRule, s: &'a Structure, p: &Path) -> Result<&'a Formula, IViolation> {
    match s.at(p) {
        Ok(Structure::Leaf(f)) => Ok(f),
        Ok(_) => Err(ishape(rule, format!("path {} is not a formula leaf", p))),
        Err(_) => Err(IViolation::BadPath {
            rule,
            path: p.clone(),
        }),
    }
}

fn require_bang_structure(
    rule: IRule,
    s: &Structure,
    ax: Axiom,
    sig: &Signature,
) -> Result<(), IViolation> {
    if s.is_empty() {
        return Err(ishape(rule, "the active structure is empty"));
    }
    for (_, f) in s.leaves() {
        match f {
            Formula::Bang(j, _) => {
                if !sig.allows(j, ax) {
                    return Err(IViolation::Unlicensed {
                        label: j.clone(),
                        axiom: ax,
                    });
                }
            }
            other => return Err(ishape(rule, format!("leaf {} is not banged", other))),
        }
    }
    Ok(())
}

/// The two decompositions of a reassociation step at one node, as
/// (premise shape, the three parts in left-to-right order).
fn reassoc_with_parts(s: &Structure) -> Vec<(Structure, [Structure; 3])> {
    let mut out = Vec::new();
    if let Structure::Pair(l, r) = s {
        if let Structure::Pair(rl, rr) = &**r {
            // (x,(y,z)) -> ((x,y),z)
            out.push((
                pair(pair((**l).clone(), (**rl).clone()), (**rr).clone()),
                [(**l).clone(), (**rl).clone(), (**rr).clone()],
            ));
        }
        if let Structure::Pair(ll, lr) = &**l {
            // ((x,y),z) -> (x,(y,z))
            out.push((
                pair((**ll).clone(), pair((**lr).clone(), (**r).clone())),
                [(**ll).clone(), (**lr).clone(), (**r).clone()],
            ));
        }
    }
    out
}

/// Validate one two-sided inference, reading backward.
pub fn check_step_i(
    rule: IRule,
    conclusion: &ISequent,
    at: &[Path],
    label: Option<&str>,
    premises: &[&ISequent],
    sig: &Signature,
    sys: SystemConfig,
) -> Result<(), IViolation> {
    if !rule.in_system(sys) {
        return Err(IViolation::SystemMismatch {
            rule,
            system: sys.name(),
        });
    }
    if premises.len() != rule.arity() {
        return Err(IViolation::Arity {
            rule,
            expected: rule.arity(),
            got: premises.len(),
        });
    }
    let ant = &conclusion.antecedent;
    let succ = &conclusion.succedent;
    let same_succ = |p: &ISequent| -> bool { &p.succedent == succ };

    match rule {
        IRule::Id => match (ant, succ) {
            (Structure::Leaf(Formula::Atom(x)), Formula::Atom(y)) if x == y => Ok(()),
            _ => Err(ishape(rule, "conclusion must be `A |- A` for an atom A")),
        },
        IRule::TopR => {
            if succ == &Formula::Top {
                Ok(())
            } else {
                Err(ishape(rule, "succedent must be top"))
            }
        }
        IRule::OneR => {
            if succ == &Formula::One && ant.is_empty() {
                Ok(())
            } else {
                Err(ishape(rule, "conclusion must be `() |- 1`"))
            }
        }
        IRule::ZeroL => {
            let p = the_path(rule, at)?;
            match leaf_at(rule, ant, p)? {
                Formula::Zero => Ok(()),
                f => Err(ishape(rule, format!("leaf at {} is {}, not 0", p, f))),
            }
        }
        IRule::TensorR => {
            let (a, b) = match succ {
                Formula::Tensor(a, b) => (&**a, &**b),
                _ => return Err(ishape(rule, "succedent must be F * G")),
            };
            if &premises[0].succedent != a || &premises[1].succedent != b {
                return Err(ishape(rule, "premises must prove the two components in order"));
            }
            let rebuilt = pair(
                premises[0].antecedent.clone(),
                premises[1].antecedent.clone(),
            );
            if &rebuilt == ant {
                Ok(())
            } else {
                Err(ishape(rule, "premise antecedents do not rebuild the conclusion"))
            }
        }
        IRule::TensorL => {
            let p = the_path(rule, at)?;
            match leaf_at(rule, ant, p)? {
                Formula::Tensor(a, b) => {
                    let expected = ant
                        .replace(p, pair(leaf((**a).clone()), leaf((**b).clone())))
                        .expect("path checked");
                    if premises[0].antecedent == expected && same_succ(premises[0]) {
                        Ok(())
                    } else {
                        Err(ishape(rule, format!("premise should be `{} |- {}`", expected, succ)))
                    }
                }
                f => Err(ishape(rule, format!("leaf at {} is {}, not a tensor", p, f))),
            }
        }
        IRule::ArrowR => {
            let (a, b) = match succ {
                Formula::ImplR(a, b) => (&**a, &**b),
                _ => return Err(ishape(rule, "succedent must be A -> B")),
            };
            let expected = pair(leaf(a.clone()), ant.clone());
            if premises[0].antecedent == expected && &premises[0].succedent == b {
                Ok(())
            } else {
                Err(ishape(rule, format!("premise should be `{} |- {}`", expected, b)))
            }
        }
        IRule::LArrowR => {
            let (b, a) = match succ {
                Formula::ImplL(b, a) => (&**b, &**a),
                _ => return Err(ishape(rule, "succedent must be B <- A")),
            };
            let expected = pair(ant.clone(), leaf(a.clone()));
            if premises[0].antecedent == expected && &premises[0].succedent == b {
                Ok(())
            } else {
                Err(ishape(rule, format!("premise should be `{} |- {}`", expected, b)))
            }
        }
        IRule::ArrowL | IRule::LArrowL => check_impl_left(rule, conclusion, at, premises),
        IRule::WithR => {
            let (a, b) = match succ {
                Formula::With(a, b) => (&**a, &**b),
                _ => return Err(ishape(rule, "succedent must be F & G")),
            };
            let ok = premises[0].antecedent == *ant
                && premises[1].antecedent == *ant
                && &premises[0].succedent == a
                && &premises[1].succedent == b;
            if ok {
                Ok(())
            } else {
                Err(ishape(rule, "premises must prove both components from the same antecedent"))
            }
        }
        IRule::WithL1 | IRule::WithL2 => {
            let p = the_path(rule, at)?;
            match leaf_at(rule, ant, p)? {
                Formula::With(a, b) => {
                    let kept = if rule == IRule::WithL1 { a } else { b };
                    let expected = ant.replace(p, leaf((**kept).clone())).expect("path checked");
                    if premises[0].antecedent == expected && same_succ(premises[0]) {
                        Ok(())
                    } else {
                        Err(ishape(rule, format!("premise should be `{} |- {}`", expected, succ)))
                    }
                }
                f => Err(ishape(rule, format!("leaf at {} is {}, not a with", p, f))),
            }
        }
        IRule::PlusR1 | IRule::PlusR2 => {
            let (a, b) = match succ {
                Formula::Plus(a, b) => (&**a, &**b),
                _ => return Err(ishape(rule, "succedent must be F + G")),
            };
            let kept = if rule == IRule::PlusR1 { a } else { b };
            if premises[0].antecedent == *ant && &premises[0].succedent == kept {
                Ok(())
            } else {
                Err(ishape(rule, format!("premise should be `{} |- {}`", ant, kept)))
            }
        }
        IRule::PlusL => {
            let p = the_path(rule, at)?;
            match leaf_at(rule, ant, p)? {
                Formula::Plus(a, b) => {
                    let e1 = ant.replace(p, leaf((**a).clone())).expect("path checked");
                    let e2 = ant.replace(p, leaf((**b).clone())).expect("path checked");
                    let ok = premises[0].antecedent == e1
                        && premises[1].antecedent == e2
                        && same_succ(premises[0])
                        && same_succ(premises[1]);
                    if ok {
                        Ok(())
                    } else {
                        Err(ishape(rule, "premises must cover both components"))
                    }
                }
                f => Err(ishape(rule, format!("leaf at {} is {}, not a plus", p, f))),
            }
        }
        IRule::OneL => {
            let p = the_path(rule, at)?;
            match leaf_at(rule, ant, p)? {
                Formula::One => {
                    let expected = ant.replace(p, Structure::Empty).expect("path checked");
                    if premises[0].antecedent == expected && same_succ(premises[0]) {
                        Ok(())
                    } else {
                        Err(ishape(rule, format!("premise should be `{} |- {}`", expected, succ)))
                    }
                }
                f => Err(ishape(rule, format!("leaf at {} is {}, not 1", p, f))),
            }
        }
        IRule::BangL => {
            let p = the_path(rule, at)?;
            match leaf_at(rule, ant, p)? {
                Formula::Bang(i, a) => {
                    if let Some(l) = label {
                        if l != i {
                            return Err(ishape(rule, format!("label {} does not match ![{}]", l, i)));
                        }
                    }
                    let expected = ant.replace(p, leaf((**a).clone())).expect("path checked");
                    if premises[0].antecedent == expected && same_succ(premises[0]) {
                        Ok(())
                    } else {
                        Err(ishape(rule, format!("premise should be `{} |- {}`", expected, succ)))
                    }
                }
                f => Err(ishape(rule, format!("leaf at {} is {}, not a bang", p, f))),
            }
        }
        IRule::BangR => {
            let (i, a) = match succ {
                Formula::Bang(i, a) => (i, &**a),
                _ => return Err(ishape(rule, "succedent must be ![i]F")),
            };
            match upset_restrict_bang(sig, ant, i) {
                Restriction::Restricted(up) => {
                    if premises[0].antecedent == up && &premises[0].succedent == a {
                        Ok(())
                    } else {
                        Err(ishape(rule, format!("premise should be `{} |- {}`", up, a)))
                    }
                }
                Restriction::Undefined => Err(IViolation::PromotionUndefined {
                    label: i.to_string(),
                }),
                Restriction::NotApplicable => Err(IViolation::PromotionNotApplicable),
            }
        }
        IRule::BangW => {
            let p = the_path(rule, at)?;
            let sub = ant.at(p).map_err(|_| IViolation::BadPath {
                rule,
                path: p.clone(),
            })?;
            require_bang_structure(rule, sub, Axiom::W, sig)?;
            let expected = ant.replace(p, Structure::Empty).expect("path checked");
            if premises[0].antecedent == expected && same_succ(premises[0]) {
                Ok(())
            } else {
                Err(ishape(rule, format!("premise should be `{} |- {}`", expected, succ)))
            }
        }
        IRule::BangC => {
            if at.len() < 2 {
                return Err(IViolation::PathCount {
                    rule,
                    expected: 2,
                    got: at.len(),
                });
            }
            for (i, p) in at.iter().enumerate() {
                for q in &at[i + 1..] {
                    if p.is_prefix_of(q) || q.is_prefix_of(p) {
                        return Err(ishape(rule, format!("copy positions {} and {} overlap", p, q)));
                    }
                }
            }
            let pant = &premises[0].antecedent;
            let first = pant.at(&at[0]).map_err(|_| IViolation::BadPath {
                rule,
                path: at[0].clone(),
            })?;
            require_bang_structure(rule, first, Axiom::C, sig)?;
            for p in &at[1..] {
                let sub = pant.at(p).map_err(|_| IViolation::BadPath {
                    rule,
                    path: p.clone(),
                })?;
                if sub != first {
                    return Err(ishape(rule, format!("copy at {} differs from the retained copy", p)));
                }
            }
            let erased = pant.erase_all(&at[1..]).expect("paths checked disjoint");
            if &erased == ant && same_succ(premises[0]) {
                Ok(())
            } else {
                Err(ishape(rule, format!("conclusion should be `{} |- {}`", erased, succ)))
            }
        }
        IRule::BangE => {
            let p = the_path(rule, at)?;
            let sub = ant.at(p).map_err(|_| IViolation::BadPath {
                rule,
                path: p.clone(),
            })?;
            let (d1, d2) = match sub {
                Structure::Pair(a, b) => ((**a).clone(), (**b).clone()),
                _ => return Err(ishape(rule, format!("path {} must address a pair", p))),
            };
            if !all_bang_with(sig, &d1, Axiom::E) && !all_bang_with(sig, &d2, Axiom::E) {
                return match exchange_offender(sig, &d1, &d2) {
                    Some((label, axiom)) => Err(IViolation::Unlicensed { label, axiom }),
                    None => Err(ishape(rule, "neither side of the pair is an E-licensed bang structure")),
                };
            }
            let expected = ant.replace(p, pair(d2, d1)).expect("path checked");
            if premises[0].antecedent == expected && same_succ(premises[0]) {
                Ok(())
            } else {
                Err(ishape(rule, format!("premise should be `{} |- {}`", expected, succ)))
            }
        }
        IRule::A1L | IRule::A1M | IRule::A1R | IRule::A2L | IRule::A2M | IRule::A2R => {
            let (pos, ax) = rule.assoc_spec().expect("assoc rule");
            let p = the_path(rule, at)?;
            let here = ant.at(p).map_err(|_| IViolation::BadPath {
                rule,
                path: p.clone(),
            })?;
            let mut last = ishape(rule, "no reassociation step matches the premise");
            for (cand, parts) in reassoc_with_parts(here) {
                let expected = ant.replace(p, cand).expect("path checked");
                if premises[0].antecedent != expected || !same_succ(premises[0]) {
                    continue;
                }
                if all_bang_with(sig, &parts[pos], ax) {
                    return Ok(());
                }
                last = match parts[pos].leaves().first() {
                    Some((_, Formula::Bang(j, _))) => IViolation::Unlicensed {
                        label: j.clone(),
                        axiom: ax,
                    },
                    _ => ishape(
                        rule,
                        format!("part {} of the reassociation is not a !-structure", pos + 1),
                    ),
                };
            }
            Err(last)
        }
    }
}

fn exchange_offender(sig: &Signature, d1: &Structure, d2: &Structure) -> Option<(String, Axiom)> {
    for side in [d1, d2] {
        for (_, f) in side.leaves() {
            if let Formula::Bang(j, _) = f {
                if !sig.allows(j, Axiom::E) {
                    return Some((j.clone(), Axiom::E));
                }
            }
        }
    }
    None
}

fn check_impl_left(
    rule: IRule,
    conclusion: &ISequent,
    at: &[Path],
    premises: &[&ISequent],
) -> Result<(), IViolation> {
    let p = the_path(rule, at)?;
    let ant = &conclusion.antecedent;
    let here = ant.at(p).map_err(|_| IViolation::BadPath {
        rule,
        path: p.clone(),
    })?;
    // `at` addresses either the pair (Δ, A->B) / (B<-A, Δ), or, when the
    // argument structure is empty, the implication leaf itself.
    let (impl_formula, delta) = match (rule, here) {
        (IRule::ArrowL, Structure::Pair(d, l)) => match &**l {
            Structure::Leaf(f @ Formula::ImplR(..)) => (f.clone(), (**d).clone()),
            _ => return Err(ishape(rule, "pair must end in an A -> B leaf")),
        },
        (IRule::LArrowL, Structure::Pair(l, d)) => match &**l {
            Structure::Leaf(f @ Formula::ImplL(..)) => (f.clone(), (**d).clone()),
            _ => return Err(ishape(rule, "pair must start with a B <- A leaf")),
        },
        (_, Structure::Leaf(f @ (Formula::ImplR(..) | Formula::ImplL(..)))) => {
            (f.clone(), Structure::Empty)
        }
        _ => return Err(ishape(rule, "position must hold the implication and its argument")),
    };
    let (arg, result) = match (&impl_formula, rule) {
        (Formula::ImplR(a, b), IRule::ArrowL) => ((**a).clone(), (**b).clone()),
        (Formula::ImplL(b, a), IRule::LArrowL) => ((**a).clone(), (**b).clone()),
        _ => return Err(ishape(rule, "implication does not match the rule")),
    };
    if premises[0].antecedent != delta || premises[0].succedent != arg {
        return Err(ishape(
            rule,
            format!("first premise should be `{} |- {}`", delta, arg),
        ));
    }
    let expected = ant.replace(p, leaf(result)).expect("path checked");
    if premises[1].antecedent == expected && premises[1].succedent == conclusion.succedent {
        Ok(())
    } else {
        Err(ishape(
            rule,
            format!("second premise should be `{} |- {}`", expected, conclusion.succedent),
        ))
    }
}

pub fn check_proof_i(
    p: &IProof,
    sig: &Signature,
    sys: SystemConfig,
) -> Result<(), IProofError> {
    fn go(
        p: &IProof,
        sig: &Signature,
        sys: SystemConfig,
        trail: &mut Vec<usize>,
    ) -> Result<(), IProofError> {
        let premise_seqs: Vec<&ISequent> = p.premises.iter().map(|q| &q.sequent).collect();
        check_step_i(
            p.rule,
            &p.sequent,
            &p.at,
            p.label.as_deref(),
            &premise_seqs,
            sig,
            sys,
        )
        .map_err(|violation| IProofError {
            at: trail.clone(),
            violation,
        })?;
        for (i, q) in p.premises.iter().enumerate() {
            trail.push(i);
            go(q, sig, sys, trail)?;
            trail.pop();
        }
        Ok(())
    }
    go(p, sig, sys, &mut Vec::new())
}

/// All backward rule applications at a sequent. Used by the search engine
/// and by proof lowering; enumeration order is deterministic.
pub(crate) struct IApp {
    pub rule: IRule,
    pub at: Vec<Path>,
    pub label: Option<String>,
    pub premises: Vec<ISequent>,
}

pub(crate) fn enumerate_i(
    seq: &ISequent,
    sig: &Signature,
    sys: SystemConfig,
    with_contraction: bool,
) -> Vec<IApp> {
    let mut out = Vec::new();
    let ant = &seq.antecedent;
    let succ = &seq.succedent;
    let push = |out: &mut Vec<IApp>, rule, at: Vec<Path>, premises: Vec<ISequent>| {
        out.push(IApp {
            rule,
            at,
            label: None,
            premises,
        });
    };

    // succedent rules
    match succ {
        Formula::Tensor(a, b) => {
            let mut splits: Vec<(Structure, Structure)> = Vec::new();
            if let Structure::Pair(l, r) = ant {
                splits.push(((**l).clone(), (**r).clone()));
            }
            splits.push((ant.clone(), Structure::Empty));
            splits.push((Structure::Empty, ant.clone()));
            for (g1, g2) in splits {
                push(
                    &mut out,
                    IRule::TensorR,
                    vec![],
                    vec![
                        ISequent::new(g1, (**a).clone()),
                        ISequent::new(g2, (**b).clone()),
                    ],
                );
            }
        }
        Formula::ImplR(a, b) => push(
            &mut out,
            IRule::ArrowR,
            vec![],
            vec![ISequent::new(
                pair(leaf((**a).clone()), ant.clone()),
                (**b).clone(),
            )],
        ),
        Formula::ImplL(b, a) => push(
            &mut out,
            IRule::LArrowR,
            vec![],
            vec![ISequent::new(
                pair(ant.clone(), leaf((**a).clone())),
                (**b).clone(),
            )],
        ),
        Formula::With(a, b) => push(
            &mut out,
            IRule::WithR,
            vec![],
            vec![
                ISequent::new(ant.clone(), (**a).clone()),
                ISequent::new(ant.clone(), (**b).clone()),
            ],
        ),
        Formula::Plus(a, b) => {
            push(
                &mut out,
                IRule::PlusR1,
                vec![],
                vec![ISequent::new(ant.clone(), (**a).clone())],
            );
            push(
                &mut out,
                IRule::PlusR2,
                vec![],
                vec![ISequent::new(ant.clone(), (**b).clone())],
            );
        }
        Formula::Bang(i, a) => {
            if let Restriction::Restricted(up) = upset_restrict_bang(sig, ant, i) {
                push(
                    &mut out,
                    IRule::BangR,
                    vec![],
                    vec![ISequent::new(up, (**a).clone())],
                );
            }
        }
        _ => {}
    }

    // antecedent leaf rules
    for (p, f) in ant.leaves() {
        match f {
            Formula::Tensor(a, b) => {
                let ant2 = ant
                    .replace(&p, pair(leaf((**a).clone()), leaf((**b).clone())))
                    .unwrap();
                push(
                    &mut out,
                    IRule::TensorL,
                    vec![p.clone()],
                    vec![ISequent::new(ant2, succ.clone())],
                );
            }
            Formula::With(a, b) => {
                for (rule, kept) in [(IRule::WithL1, a), (IRule::WithL2, b)] {
                    let ant2 = ant.replace(&p, leaf((**kept).clone())).unwrap();
                    push(
                        &mut out,
                        rule,
                        vec![p.clone()],
                        vec![ISequent::new(ant2, succ.clone())],
                    );
                }
            }
            Formula::Plus(a, b) => {
                let a1 = ant.replace(&p, leaf((**a).clone())).unwrap();
                let a2 = ant.replace(&p, leaf((**b).clone())).unwrap();
                push(
                    &mut out,
                    IRule::PlusL,
                    vec![p.clone()],
                    vec![
                        ISequent::new(a1, succ.clone()),
                        ISequent::new(a2, succ.clone()),
                    ],
                );
            }
            Formula::One => {
                let ant2 = ant.replace(&p, Structure::Empty).unwrap();
                push(
                    &mut out,
                    IRule::OneL,
                    vec![p.clone()],
                    vec![ISequent::new(ant2, succ.clone())],
                );
            }
            Formula::Bang(_, a) => {
                let ant2 = ant.replace(&p, leaf((**a).clone())).unwrap();
                push(
                    &mut out,
                    IRule::BangL,
                    vec![p.clone()],
                    vec![ISequent::new(ant2, succ.clone())],
                );
            }
            Formula::ImplR(a, b) => {
                // argument on the left: the enclosing pair (Δ, A->B)
                if let Some((parent, Dir::R)) = p.parent() {
                    if let Ok(Structure::Pair(d, _)) = ant.at(&parent) {
                        let delta = (**d).clone();
                        let ant2 = ant.replace(&parent, leaf((**b).clone())).unwrap();
                        push(
                            &mut out,
                            IRule::ArrowL,
                            vec![parent],
                            vec![
                                ISequent::new(delta, (**a).clone()),
                                ISequent::new(ant2, succ.clone()),
                            ],
                        );
                    }
                }
                // empty argument structure
                let ant2 = ant.replace(&p, leaf((**b).clone())).unwrap();
                push(
                    &mut out,
                    IRule::ArrowL,
                    vec![p.clone()],
                    vec![
                        ISequent::new(Structure::Empty, (**a).clone()),
                        ISequent::new(ant2, succ.clone()),
                    ],
                );
            }
            Formula::ImplL(b, a) => {
                if let Some((parent, Dir::L)) = p.parent() {
                    if let Ok(Structure::Pair(_, d)) = ant.at(&parent) {
                        let delta = (**d).clone();
                        let ant2 = ant.replace(&parent, leaf((**b).clone())).unwrap();
                        push(
                            &mut out,
                            IRule::LArrowL,
                            vec![parent],
                            vec![
                                ISequent::new(delta, (**a).clone()),
                                ISequent::new(ant2, succ.clone()),
                            ],
                        );
                    }
                }
                let ant2 = ant.replace(&p, leaf((**b).clone())).unwrap();
                push(
                    &mut out,
                    IRule::LArrowL,
                    vec![p.clone()],
                    vec![
                        ISequent::new(Structure::Empty, (**a).clone()),
                        ISequent::new(ant2, succ.clone()),
                    ],
                );
            }
            _ => {}
        }
    }

    // structural rules on subtrees
    for p in ant.node_paths() {
        let sub = ant.at(&p).unwrap().clone();
        // weakening
        if all_bang_with(sig, &sub, Axiom::W) {
            let ant2 = ant.replace(&p, Structure::Empty).unwrap();
            push(
                &mut out,
                IRule::BangW,
                vec![p.clone()],
                vec![ISequent::new(ant2, succ.clone())],
            );
        }
        // exchange and reassociation at pair nodes
        if let Structure::Pair(d1, d2) = &sub {
            if all_bang_with(sig, d1, Axiom::E) || all_bang_with(sig, d2, Axiom::E) {
                let ant2 = ant
                    .replace(&p, pair((**d2).clone(), (**d1).clone()))
                    .unwrap();
                push(
                    &mut out,
                    IRule::BangE,
                    vec![p.clone()],
                    vec![ISequent::new(ant2, succ.clone())],
                );
            }
            for (cand, parts) in reassoc_with_parts(&sub) {
                let ant2 = ant.replace(&p, cand).unwrap();
                for rule in [
                    IRule::A1L,
                    IRule::A1M,
                    IRule::A1R,
                    IRule::A2L,
                    IRule::A2M,
                    IRule::A2R,
                ] {
                    if !rule.in_system(sys) {
                        continue;
                    }
                    let (pos, ax) = rule.assoc_spec().unwrap();
                    if all_bang_with(sig, &parts[pos], ax) {
                        push(
                            &mut out,
                            rule,
                            vec![p.clone()],
                            vec![ISequent::new(ant2.clone(), succ.clone())],
                        );
                    }
                }
            }
        }
    }

    // contraction: duplicate a C-licensed bang structure anywhere
    if with_contraction {
        for p in ant.node_paths() {
            let sub = ant.at(&p).unwrap().clone();
            if !all_bang_with(sig, &sub, Axiom::C) {
                continue;
            }
            for q in ant.node_paths() {
                for side in [Dir::L, Dir::R] {
                    let grown = ant.insert_at(&q, side, sub.clone()).unwrap();
                    // the retained copy keeps its position; the new copy is at q
                    let copy_at = match side {
                        Dir::L => q.child(Dir::L),
                        Dir::R => q.child(Dir::R),
                    };
                    let retained = locate_after_insert(&p, &q, side);
                    push(
                        &mut out,
                        IRule::BangC,
                        vec![retained, copy_at],
                        vec![ISequent::new(grown, succ.clone())],
                    );
                }
            }
        }
    }

    out
}
