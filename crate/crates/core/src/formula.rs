//! Formulas of the one-sided classical language and the two-sided
//! intuitionistic language.
//!
//! Negation is not a connective: it exists only on atoms, and `negate`
//! pushes a negation through a classical formula until it reaches atoms.

use std::fmt;

/// Subexponential index drawn from a signature's index set.
pub type Label = String;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String),
    NegAtom(String),
    Tensor(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
    Plus(Box<Formula>, Box<Formula>),
    With(Box<Formula>, Box<Formula>),
    One,
    Bot,
    Zero,
    Top,
    Bang(Label, Box<Formula>),
    Quest(Label, Box<Formula>),
    /// `(a -> b)`: a function consuming an `a` on its left.
    ImplR(Box<Formula>, Box<Formula>),
    /// `(b <- a)`: a function consuming an `a` on its right.
    /// The first field is the result `b`.
    ImplL(Box<Formula>, Box<Formula>),
}

pub fn atom(name: &str) -> Formula {
    Formula::Atom(name.to_string())
}

pub fn negatom(name: &str) -> Formula {
    Formula::NegAtom(name.to_string())
}

pub fn tensor(a: Formula, b: Formula) -> Formula {
    Formula::Tensor(Box::new(a), Box::new(b))
}

pub fn par(a: Formula, b: Formula) -> Formula {
    Formula::Par(Box::new(a), Box::new(b))
}

pub fn plus(a: Formula, b: Formula) -> Formula {
    Formula::Plus(Box::new(a), Box::new(b))
}

pub fn with(a: Formula, b: Formula) -> Formula {
    Formula::With(Box::new(a), Box::new(b))
}

pub fn bang(label: &str, a: Formula) -> Formula {
    Formula::Bang(label.to_string(), Box::new(a))
}

pub fn quest(label: &str, a: Formula) -> Formula {
    Formula::Quest(label.to_string(), Box::new(a))
}

pub fn impl_r(arg: Formula, result: Formula) -> Formula {
    Formula::ImplR(Box::new(arg), Box::new(result))
}

pub fn impl_l(result: Formula, arg: Formula) -> Formula {
    Formula::ImplL(Box::new(result), Box::new(arg))
}

/// A formula outside the language of the operation that received it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IllFormed {
    pub formula: Formula,
    pub expected: &'static str,
}

impl fmt::Display for IllFormed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} is not a {} formula", self.formula, self.expected)
    }
}

impl std::error::Error for IllFormed {}

/// De Morgan dual, with negation pushed to atomic scope.
///
/// The multiplicative duals swap argument order; the sequent structure is a
/// plane tree, so `(F * G)^` must read back right-to-left to stay provable
/// against `F * G` without commuting anything. Additive duals keep their
/// order. `negate` is an involution.
pub fn negate(f: &Formula) -> Result<Formula, IllFormed> {
    use Formula::*;
    Ok(match f {
        Atom(a) => NegAtom(a.clone()),
        NegAtom(a) => Atom(a.clone()),
        Tensor(a, b) => par(negate(b)?, negate(a)?),
        Par(a, b) => tensor(negate(b)?, negate(a)?),
        Plus(a, b) => with(negate(a)?, negate(b)?),
        With(a, b) => plus(negate(a)?, negate(b)?),
        One => Bot,
        Bot => One,
        Zero => Top,
        Top => Zero,
        Bang(i, a) => quest(i, negate(a)?),
        Quest(i, a) => bang(i, negate(a)?),
        ImplR(..) | ImplL(..) => {
            return Err(IllFormed {
                formula: f.clone(),
                expected: "classical",
            })
        }
    })
}

impl Formula {
    /// The classical language: everything except the two implications.
    pub fn is_classical(&self) -> bool {
        use Formula::*;
        match self {
            Atom(_) | NegAtom(_) | One | Bot | Zero | Top => true,
            Tensor(a, b) | Par(a, b) | Plus(a, b) | With(a, b) => {
                a.is_classical() && b.is_classical()
            }
            Bang(_, a) | Quest(_, a) => a.is_classical(),
            ImplR(..) | ImplL(..) => false,
        }
    }

    /// The intuitionistic language: `&, +, *, ->, <-, top, !, 1`,
    /// extended with `0` only when `allow_zero` is set.
    pub fn check_intuitionistic(&self, allow_zero: bool) -> Result<(), IllFormed> {
        use Formula::*;
        let bad = || {
            Err(IllFormed {
                formula: self.clone(),
                expected: "intuitionistic",
            })
        };
        match self {
            Atom(_) | One | Top => Ok(()),
            Zero => {
                if allow_zero {
                    Ok(())
                } else {
                    bad()
                }
            }
            NegAtom(_) | Bot | Par(..) | Quest(..) => bad(),
            Tensor(a, b) | Plus(a, b) | With(a, b) | ImplR(a, b) | ImplL(a, b) => {
                a.check_intuitionistic(allow_zero)?;
                b.check_intuitionistic(allow_zero)
            }
            Bang(_, a) => a.check_intuitionistic(allow_zero),
        }
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Formula::Atom(_) | Formula::NegAtom(_))
    }

    pub fn connective_count(&self) -> usize {
        use Formula::*;
        match self {
            Atom(_) | NegAtom(_) | One | Bot | Zero | Top => 0,
            Tensor(a, b) | Par(a, b) | Plus(a, b) | With(a, b) | ImplR(a, b) | ImplL(a, b) => {
                1 + a.connective_count() + b.connective_count()
            }
            Bang(_, a) | Quest(_, a) => 1 + a.connective_count(),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Formula::*;
        match self {
            Atom(a) => write!(f, "{}", a),
            NegAtom(a) => write!(f, "{}^", a),
            Tensor(a, b) => write!(f, "({} * {})", a, b),
            Par(a, b) => write!(f, "({} # {})", a, b),
            Plus(a, b) => write!(f, "({} + {})", a, b),
            With(a, b) => write!(f, "({} & {})", a, b),
            One => write!(f, "1"),
            Bot => write!(f, "bot"),
            Zero => write!(f, "0"),
            Top => write!(f, "top"),
            Bang(i, a) => write!(f, "![{}]{}", i, a),
            Quest(i, a) => write!(f, "?[{}]{}", i, a),
            ImplR(a, b) => write!(f, "({} -> {})", a, b),
            ImplL(b, a) => write!(f, "({} <- {})", b, a),
        }
    }
}
