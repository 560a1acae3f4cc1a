//! Structural equivalence and designated normal forms.
//!
//! `~` is the closure of the top-level rewrites `(Γ, Δ) ~ (Δ, Γ)` and
//! `(Γ, (Δ, Π)) ~ ((Γ, Δ), Π)`: a non-associative analogue of cyclic
//! rotation. Equivalent structures describe the same unrooted plane tree;
//! designating a subtree re-roots that tree so the subtree sits at the
//! top-right position, and the result is unique per designated occurrence.
//! Canonical forms take the least designation over all formula occurrences,
//! which is therefore an invariant of the `~`-class.

use crate::structure::{pair, Dir, InvalidPath, Path, Structure};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmptyStructure;

impl fmt::Display for EmptyStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "the empty structure has no canonical form")
    }
}

impl std::error::Error for EmptyStructure {}

enum Marked {
    Mark,
    Plain(Structure),
    Pair(Box<Marked>, Box<Marked>),
}

impl Marked {
    fn has_mark(&self) -> bool {
        match self {
            Marked::Mark => true,
            Marked::Plain(_) => false,
            Marked::Pair(a, b) => a.has_mark() || b.has_mark(),
        }
    }

    fn unmark(self) -> Structure {
        match self {
            Marked::Mark => unreachable!("marker survived designation"),
            Marked::Plain(s) => s,
            Marked::Pair(a, b) => pair(a.unmark(), b.unmark()),
        }
    }
}

fn mark_at(s: &Structure, p: &[Dir]) -> Result<Marked, InvalidPath> {
    match p.split_first() {
        None => Ok(Marked::Mark),
        Some((d, rest)) => match s {
            Structure::Pair(a, b) => Ok(match d {
                Dir::L => Marked::Pair(
                    Box::new(mark_at(a, rest)?),
                    Box::new(Marked::Plain((**b).clone())),
                ),
                Dir::R => Marked::Pair(
                    Box::new(Marked::Plain((**a).clone())),
                    Box::new(mark_at(b, rest)?),
                ),
            }),
            _ => Err(InvalidPath(Path(p.to_vec()))),
        },
    }
}

/// The structure left over after rotating the subtree at `p` to the
/// top-right position and dropping it. Pairing the result back with the
/// subtree gives the designated form; the remainder is empty exactly when
/// `p` addresses the whole structure.
pub fn designate_remainder(s: &Structure, p: &Path) -> Result<Structure, InvalidPath> {
    s.at(p)?;
    let mut cur = mark_at(s, &p.0)?;
    loop {
        cur = match cur {
            Marked::Mark => return Ok(Structure::Empty),
            Marked::Plain(_) => unreachable!("marker lost"),
            Marked::Pair(l, r) => {
                if l.has_mark() {
                    // (Γ{*}, Δ) => (Δ, Γ{*})
                    Marked::Pair(r, l)
                } else {
                    match *r {
                        Marked::Mark => return Ok(l.unmark()),
                        Marked::Pair(rl, rr) => {
                            if rr.has_mark() {
                                // (Γ, (Δ, Π{*})) => ((Γ, Δ), Π{*})
                                Marked::Pair(Box::new(Marked::Pair(l, rl)), rr)
                            } else {
                                // (Γ, (Δ{*}, Π)) => ((Π, Γ), Δ{*})
                                Marked::Pair(Box::new(Marked::Pair(rr, l)), rl)
                            }
                        }
                        Marked::Plain(_) => unreachable!("marker lost"),
                    }
                }
            }
        };
    }
}

/// Designated form of `s` with the subtree at `p` at the top-right.
pub fn designate(s: &Structure, p: &Path) -> Result<Structure, InvalidPath> {
    let sub = s.at(p)?.clone();
    let rest = designate_remainder(s, p)?;
    Ok(pair(rest, sub))
}

/// One designated form per formula occurrence, each of shape `(Δ, F)`
/// (or a bare leaf when the structure is a single formula).
pub fn rotations(s: &Structure) -> Vec<(Structure, Path)> {
    s.leaves()
        .into_iter()
        .map(|(p, _)| (designate(s, &p).expect("leaf path is valid"), p))
        .collect()
}

/// One designated form per subtree occurrence. Designating the root yields
/// `(∅, s) = s` itself; remainder and subtree are returned separately.
pub fn subtree_rotations(s: &Structure) -> Vec<(Structure, Structure, Path)> {
    s.node_paths()
        .into_iter()
        .map(|p| {
            let rest = designate_remainder(s, &p).expect("node path is valid");
            let sub = s.at(&p).expect("node path is valid").clone();
            (rest, sub, p)
        })
        .collect()
}

/// Least designated form over all formula occurrences, ordered by printed
/// form. Equivalent structures get identical canonical forms.
pub fn canonicalize(s: &Structure) -> Result<Structure, EmptyStructure> {
    if s.is_empty() {
        return Err(EmptyStructure);
    }
    rotations(s)
        .into_iter()
        .map(|(rot, _)| rot)
        .min_by(|a, b| a.to_string().cmp(&b.to_string()))
        .ok_or(EmptyStructure)
}

/// Structural equivalence, decided through canonical forms.
pub fn equivalent(s: &Structure, t: &Structure) -> bool {
    match (s.is_empty(), t.is_empty()) {
        (true, true) => true,
        (true, false) | (false, true) => false,
        (false, false) => canonicalize(s).unwrap() == canonicalize(t).unwrap(),
    }
}
