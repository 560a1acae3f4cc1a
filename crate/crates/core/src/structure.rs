//! Sequent structures: plane binary trees of formulas with empty-structure
//! normalization.
//!
//! `(∅, Γ)` and `(Γ, ∅)` collapse to `Γ`, so a normalized non-empty
//! structure is a rooted plane binary tree with formula leaves. Every
//! constructor here maintains that invariant; `Empty` can only appear as a
//! whole structure, never under a `Pair`.

use crate::formula::Formula;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Structure {
    Empty,
    Leaf(Formula),
    Pair(Box<Structure>, Box<Structure>),
}

/// Pairing with eager empty wipe-out.
pub fn pair(a: Structure, b: Structure) -> Structure {
    match (a, b) {
        (Structure::Empty, b) => b,
        (a, Structure::Empty) => a,
        (a, b) => Structure::Pair(Box::new(a), Box::new(b)),
    }
}

pub fn leaf(f: Formula) -> Structure {
    Structure::Leaf(f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    L,
    R,
}

/// Address of a node in a normalized structure: L/R steps from the root.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Path(pub Vec<Dir>);

impl Path {
    pub fn root() -> Path {
        Path(Vec::new())
    }

    pub fn child(&self, d: Dir) -> Path {
        let mut v = self.0.clone();
        v.push(d);
        Path(v)
    }

    pub fn parent(&self) -> Option<(Path, Dir)> {
        let mut v = self.0.clone();
        v.pop().map(|d| (Path(v), d))
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        other.0.len() >= self.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    pub fn parse(s: &str) -> Result<Path, String> {
        let mut v = Vec::new();
        for c in s.chars() {
            match c {
                'L' => v.push(Dir::L),
                'R' => v.push(Dir::R),
                _ => return Err(format!("invalid path step {:?}", c)),
            }
        }
        Ok(Path(v))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            match d {
                Dir::L => write!(f, "L")?,
                Dir::R => write!(f, "R")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidPath(pub Path);

impl fmt::Display for InvalidPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "path {} does not address a node", self.0)
    }
}

impl std::error::Error for InvalidPath {}

impl Structure {
    /// Re-establish the no-empty-under-pair invariant everywhere.
    pub fn normalize(&self) -> Structure {
        match self {
            Structure::Empty => Structure::Empty,
            Structure::Leaf(f) => Structure::Leaf(f.clone()),
            Structure::Pair(a, b) => pair(a.normalize(), b.normalize()),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Structure::Empty)
    }

    pub fn at(&self, p: &Path) -> Result<&Structure, InvalidPath> {
        let mut cur = self;
        for (i, d) in p.0.iter().enumerate() {
            match cur {
                Structure::Pair(a, b) => {
                    cur = match d {
                        Dir::L => a,
                        Dir::R => b,
                    }
                }
                _ => return Err(InvalidPath(Path(p.0[..=i].to_vec()))),
            }
        }
        Ok(cur)
    }

    /// Substitute `t` at `p`, normalizing on the way back up. Substituting
    /// `Empty` removes the addressed node entirely.
    pub fn replace(&self, p: &Path, t: Structure) -> Result<Structure, InvalidPath> {
        fn go(s: &Structure, steps: &[Dir], t: Structure, full: &Path) -> Result<Structure, InvalidPath> {
            match steps.split_first() {
                None => Ok(t),
                Some((d, rest)) => match s {
                    Structure::Pair(a, b) => Ok(match d {
                        Dir::L => pair(go(a, rest, t, full)?, (**b).clone()),
                        Dir::R => pair((**a).clone(), go(b, rest, t, full)?),
                    }),
                    _ => Err(InvalidPath(full.clone())),
                },
            }
        }
        go(self, &p.0, t, p)
    }

    /// Substitute `Empty` at several pairwise disjoint paths.
    pub fn erase_all(&self, paths: &[Path]) -> Result<Structure, InvalidPath> {
        for (i, p) in paths.iter().enumerate() {
            for q in &paths[i + 1..] {
                if p.is_prefix_of(q) || q.is_prefix_of(p) {
                    return Err(InvalidPath(q.clone()));
                }
            }
        }
        fn go(s: &Structure, here: &mut Path, paths: &[Path]) -> Structure {
            if paths.iter().any(|p| p == here) {
                return Structure::Empty;
            }
            match s {
                Structure::Pair(a, b) => {
                    here.0.push(Dir::L);
                    let na = go(a, here, paths);
                    here.0.pop();
                    here.0.push(Dir::R);
                    let nb = go(b, here, paths);
                    here.0.pop();
                    pair(na, nb)
                }
                other => other.clone(),
            }
        }
        let mut here = Path::root();
        let out = go(self, &mut here, paths);
        Ok(out)
    }

    /// Insert `sub` next to the node at `p`, on the given side.
    pub fn insert_at(&self, p: &Path, side: Dir, sub: Structure) -> Result<Structure, InvalidPath> {
        let existing = self.at(p)?.clone();
        let grown = match side {
            Dir::L => pair(sub, existing),
            Dir::R => pair(existing, sub),
        };
        self.replace(p, grown)
    }

    /// Formula leaves with their paths, in left-to-right order.
    pub fn leaves(&self) -> Vec<(Path, &Formula)> {
        let mut out = Vec::new();
        fn go<'a>(s: &'a Structure, here: &mut Path, out: &mut Vec<(Path, &'a Formula)>) {
            match s {
                Structure::Empty => {}
                Structure::Leaf(f) => out.push((here.clone(), f)),
                Structure::Pair(a, b) => {
                    here.0.push(Dir::L);
                    go(a, here, out);
                    here.0.pop();
                    here.0.push(Dir::R);
                    go(b, here, out);
                    here.0.pop();
                }
            }
        }
        let mut here = Path::root();
        go(self, &mut here, &mut out);
        out
    }

    /// All node paths (internal nodes and leaves), preorder.
    pub fn node_paths(&self) -> Vec<Path> {
        let mut out = Vec::new();
        fn go(s: &Structure, here: &mut Path, out: &mut Vec<Path>) {
            match s {
                Structure::Empty => {}
                Structure::Leaf(_) => out.push(here.clone()),
                Structure::Pair(a, b) => {
                    out.push(here.clone());
                    here.0.push(Dir::L);
                    go(a, here, out);
                    here.0.pop();
                    here.0.push(Dir::R);
                    go(b, here, out);
                    here.0.pop();
                }
            }
        }
        let mut here = Path::root();
        go(self, &mut here, &mut out);
        out
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Structure::Empty => 0,
            Structure::Leaf(_) => 1,
            Structure::Pair(a, b) => a.leaf_count() + b.leaf_count(),
        }
    }

    pub fn connective_count(&self) -> usize {
        self.leaves()
            .iter()
            .map(|(_, f)| f.connective_count())
            .sum()
    }
}

/// Where the subtree that was at `orig` sits after a sibling has been
/// inserted with `insert_at(ins, side, ..)`.
pub(crate) fn locate_after_insert(orig: &Path, ins: &Path, side: Dir) -> Path {
    if ins.is_prefix_of(orig) {
        let mut v = ins.0.clone();
        v.push(match side {
            Dir::L => Dir::R,
            Dir::R => Dir::L,
        });
        v.extend_from_slice(&orig.0[ins.0.len()..]);
        Path(v)
    } else {
        orig.clone()
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Structure::Empty => write!(f, "()"),
            Structure::Leaf(x) => write!(f, "{}", x),
            Structure::Pair(a, b) => write!(f, "({}, {})", a, b),
        }
    }
}
