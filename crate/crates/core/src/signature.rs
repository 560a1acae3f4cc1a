//! Subexponential signatures: a finite preorder of indices and, per index,
//! the set of structural axioms that index licenses.
//!
//! The preorder is stored as its reflexive-transitive closure, computed at
//! load time; upward closure of the axiom assignment (`i <= j` implies
//! `f(i) ⊆ f(j)`) is validated at load time. Indices that never appear in a
//! signature file are treated as present with the empty axiom set, so the
//! empty signature is usable with any formula.

use crate::structure::Structure;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    C,
    W,
    E,
    A1,
    A2,
}

impl Axiom {
    pub fn parse(s: &str) -> Option<Axiom> {
        match s {
            "C" => Some(Axiom::C),
            "W" => Some(Axiom::W),
            "E" => Some(Axiom::E),
            "A1" => Some(Axiom::A1),
            "A2" => Some(Axiom::A2),
            _ => None,
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::C => "C",
            Axiom::W => "W",
            Axiom::E => "E",
            Axiom::A1 => "A1",
            Axiom::A2 => "A2",
        };
        write!(f, "{}", s)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    indices: BTreeSet<String>,
    /// reflexive-transitive closure of the declared order pairs
    leq_pairs: BTreeSet<(String, String)>,
    axioms: BTreeMap<String, BTreeSet<Axiom>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SignatureError {
    Syntax { line: usize, message: String },
    UnknownAxiom { line: usize, name: String },
    UndeclaredIndex { line: usize, index: String },
    /// `lo <= hi` but `f(lo)` is not contained in `f(hi)`.
    NotUpwardClosed {
        lo: String,
        hi: String,
        missing: Axiom,
    },
}

impl fmt::Display for SignatureError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignatureError::Syntax { line, message } => {
                write!(f, "signature line {}: {}", line, message)
            }
            SignatureError::UnknownAxiom { line, name } => {
                write!(f, "signature line {}: unknown axiom {:?}", line, name)
            }
            SignatureError::UndeclaredIndex { line, index } => {
                write!(f, "signature line {}: undeclared index {:?}", line, index)
            }
            SignatureError::NotUpwardClosed { lo, hi, missing } => write!(
                f,
                "not upwardly closed: {} <= {} but {} lacks axiom {}",
                lo, hi, hi, missing
            ),
        }
    }
}

impl std::error::Error for SignatureError {}

impl Signature {
    pub fn empty() -> Signature {
        Signature::default()
    }

    pub fn leq(&self, i: &str, j: &str) -> bool {
        i == j || self.leq_pairs.contains(&(i.to_string(), j.to_string()))
    }

    pub fn axioms_of(&self, i: &str) -> BTreeSet<Axiom> {
        self.axioms.get(i).cloned().unwrap_or_default()
    }

    pub fn allows(&self, i: &str, ax: Axiom) -> bool {
        self.axioms.get(i).map(|s| s.contains(&ax)).unwrap_or(false)
    }

    pub fn indices(&self) -> impl Iterator<Item = &String> {
        self.indices.iter()
    }

    /// Line-oriented format: `label <id> : <axiom>[, <axiom>]*` (the list may
    /// be empty), `order <id> <= <id>`, `#` comments.
    pub fn load(text: &str) -> Result<Signature, SignatureError> {
        let mut sig = Signature::default();
        let mut declared_order: Vec<(String, String)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            let n = lineno + 1;
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("label ") {
                let (name, axlist) = match rest.split_once(':') {
                    Some((name, axlist)) => (name.trim(), axlist.trim()),
                    None => (rest.trim(), ""),
                };
                if name.is_empty() || !is_index_name(name) {
                    return Err(SignatureError::Syntax {
                        line: n,
                        message: format!("bad index name {:?}", name),
                    });
                }
                let mut set = BTreeSet::new();
                if !axlist.is_empty() {
                    for part in axlist.split(',') {
                        let part = part.trim();
                        match Axiom::parse(part) {
                            Some(ax) => {
                                set.insert(ax);
                            }
                            None => {
                                return Err(SignatureError::UnknownAxiom {
                                    line: n,
                                    name: part.to_string(),
                                })
                            }
                        }
                    }
                }
                sig.indices.insert(name.to_string());
                sig.axioms.entry(name.to_string()).or_default().extend(set);
            } else if let Some(rest) = line.strip_prefix("order ") {
                let parts: Vec<&str> = rest.split("<=").map(|s| s.trim()).collect();
                if parts.len() != 2 {
                    return Err(SignatureError::Syntax {
                        line: n,
                        message: "expected `order <id> <= <id>`".to_string(),
                    });
                }
                for p in &parts {
                    if !sig.indices.contains(*p) {
                        return Err(SignatureError::UndeclaredIndex {
                            line: n,
                            index: p.to_string(),
                        });
                    }
                }
                declared_order.push((parts[0].to_string(), parts[1].to_string()));
            } else {
                return Err(SignatureError::Syntax {
                    line: n,
                    message: format!("unrecognized directive {:?}", line),
                });
            }
        }
        sig.close_order(&declared_order);
        sig.check_upward_closure()?;
        Ok(sig)
    }

    fn close_order(&mut self, declared: &[(String, String)]) {
        for (a, b) in declared {
            self.leq_pairs.insert((a.clone(), b.clone()));
        }
        // transitive closure; the index set is tiny
        loop {
            let mut grew = false;
            let pairs: Vec<_> = self.leq_pairs.iter().cloned().collect();
            for (a, b) in &pairs {
                for (c, d) in &pairs {
                    if b == c && !self.leq_pairs.contains(&(a.clone(), d.clone())) {
                        self.leq_pairs.insert((a.clone(), d.clone()));
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
    }

    fn check_upward_closure(&self) -> Result<(), SignatureError> {
        for (lo, hi) in &self.leq_pairs {
            let lo_ax = self.axioms_of(lo);
            let hi_ax = self.axioms_of(hi);
            if let Some(missing) = lo_ax.difference(&hi_ax).next() {
                return Err(SignatureError::NotUpwardClosed {
                    lo: lo.clone(),
                    hi: hi.clone(),
                    missing: *missing,
                });
            }
        }
        Ok(())
    }
}

fn is_index_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

/// Result of the `Γ↑i` side condition of promotion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Restriction {
    /// All leaves lie above `i`, or are erasable by W; erased and normalized.
    Restricted(Structure),
    /// Some leaf is neither above `i` nor W-licensed: promotion cannot fire.
    Undefined,
    /// Some leaf is not of the expected marked form at all.
    NotApplicable,
}

fn restrict_by<F>(sig: &Signature, g: &Structure, i: &str, label_of: F) -> Restriction
where
    F: Fn(&crate::formula::Formula) -> Option<String>,
{
    let mut erase = Vec::new();
    for (path, f) in g.leaves() {
        match label_of(f) {
            None => return Restriction::NotApplicable,
            Some(j) => {
                if sig.leq(i, &j) {
                    // kept
                } else if sig.allows(&j, Axiom::W) {
                    erase.push(path);
                } else {
                    return Restriction::Undefined;
                }
            }
        }
    }
    match g.erase_all(&erase) {
        Ok(s) => Restriction::Restricted(s),
        Err(_) => Restriction::NotApplicable,
    }
}

/// `Γ↑i` over question-marked leaves (classical promotion).
pub fn upset_restrict(sig: &Signature, g: &Structure, i: &str) -> Restriction {
    restrict_by(sig, g, i, |f| match f {
        crate::formula::Formula::Quest(j, _) => Some(j.clone()),
        _ => None,
    })
}

/// `Γ↑i` over bang-marked leaves (intuitionistic promotion).
pub fn upset_restrict_bang(sig: &Signature, g: &Structure, i: &str) -> Restriction {
    restrict_by(sig, g, i, |f| match f {
        crate::formula::Formula::Bang(j, _) => Some(j.clone()),
        _ => None,
    })
}

/// Every leaf of `s` is `?[j]F` with `ax` in `f(j)`; `s` must be non-empty.
pub fn all_quest_with(sig: &Signature, s: &Structure, ax: Axiom) -> bool {
    let leaves = s.leaves();
    !leaves.is_empty()
        && leaves.iter().all(|(_, f)| match f {
            crate::formula::Formula::Quest(j, _) => sig.allows(j, ax),
            _ => false,
        })
}

/// Every leaf of `s` is `![j]F` with `ax` in `f(j)`; `s` must be non-empty.
pub fn all_bang_with(sig: &Signature, s: &Structure, ax: Axiom) -> bool {
    let leaves = s.leaves();
    !leaves.is_empty()
        && leaves.iter().all(|(_, f)| match f {
            crate::formula::Formula::Bang(j, _) => sig.allows(j, ax),
            _ => false,
        })
}
