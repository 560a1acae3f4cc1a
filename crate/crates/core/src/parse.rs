//! Concrete ASCII syntax.
//!
//! The logic is non-associative, so every binary connective requires its own
//! parentheses; there is no precedence. Grammar:
//!
//! ```text
//! formula   := atom | atom '^' | '1' | 'bot' | '0' | 'top'
//!            | '(' formula OP formula ')'        OP in  * # + & -> <-
//!            | '![' ident ']' formula | '?[' ident ']' formula
//! structure := '()' | formula | '(' structure ',' structure ')'
//! sequent   := '|-' structure              (classical, structure non-empty)
//!            | structure '|-' formula      (intuitionistic)
//! atom, ident := [a-z][a-z0-9_]*           ('top' and 'bot' are reserved)
//! ```

use crate::formula::{self, Formula};
use crate::intuitionistic::ISequent;
use crate::structure::{leaf, pair, Structure};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Caret,
    Star,
    Hash,
    Plus,
    Amp,
    Arrow,
    LArrow,
    Bang,
    Quest,
    Turnstile,
    One,
    Zero,
    TopKw,
    BotKw,
    Ident(String),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '[' => {
                toks.push((i, Tok::LBrack));
                i += 1;
            }
            ']' => {
                toks.push((i, Tok::RBrack));
                i += 1;
            }
            ',' => {
                toks.push((i, Tok::Comma));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '#' => {
                toks.push((i, Tok::Hash));
                i += 1;
            }
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '&' => {
                toks.push((i, Tok::Amp));
                i += 1;
            }
            '!' => {
                toks.push((i, Tok::Bang));
                i += 1;
            }
            '?' => {
                toks.push((i, Tok::Quest));
                i += 1;
            }
            '1' => {
                toks.push((i, Tok::One));
                i += 1;
            }
            '0' => {
                toks.push((i, Tok::Zero));
                i += 1;
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((i, Tok::Arrow));
                    i += 2;
                } else {
                    return Err(ParseError {
                        position: i,
                        message: "expected '->'".to_string(),
                    });
                }
            }
            '<' => {
                if bytes.get(i + 1) == Some(&b'-') {
                    toks.push((i, Tok::LArrow));
                    i += 2;
                } else {
                    return Err(ParseError {
                        position: i,
                        message: "expected '<-'".to_string(),
                    });
                }
            }
            '|' => {
                if bytes.get(i + 1) == Some(&b'-') {
                    toks.push((i, Tok::Turnstile));
                    i += 2;
                } else {
                    return Err(ParseError {
                        position: i,
                        message: "expected '|-'".to_string(),
                    });
                }
            }
            'a'..='z' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_lowercase()
                        || bytes[i].is_ascii_digit()
                        || bytes[i] == b'_')
                {
                    i += 1;
                }
                let word = &src[start..i];
                toks.push((
                    start,
                    match word {
                        "top" => Tok::TopKw,
                        "bot" => Tok::BotKw,
                        _ => Tok::Ident(word.to_string()),
                    },
                ));
            }
            _ => {
                return Err(ParseError {
                    position: i,
                    message: format!("unexpected character {:?}", c),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.here(),
            message: message.into(),
        })
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        match self.next() {
            Some(t) if t == want => Ok(()),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                self.err(format!("expected {}", what))
            }
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ParseError> {
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                self.err(format!("expected {}", what))
            }
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        match self.next() {
            Some(Tok::Ident(name)) => {
                if self.peek() == Some(&Tok::Caret) {
                    self.next();
                    Ok(Formula::NegAtom(name))
                } else {
                    Ok(Formula::Atom(name))
                }
            }
            Some(Tok::One) => Ok(Formula::One),
            Some(Tok::Zero) => Ok(Formula::Zero),
            Some(Tok::TopKw) => Ok(Formula::Top),
            Some(Tok::BotKw) => Ok(Formula::Bot),
            Some(Tok::Bang) => {
                self.expect(Tok::LBrack, "'[' after '!'")?;
                let label = self.ident("subexponential index")?;
                self.expect(Tok::RBrack, "']'")?;
                let body = self.formula()?;
                Ok(formula::bang(&label, body))
            }
            Some(Tok::Quest) => {
                self.expect(Tok::LBrack, "'[' after '?'")?;
                let label = self.ident("subexponential index")?;
                self.expect(Tok::RBrack, "']'")?;
                let body = self.formula()?;
                Ok(formula::quest(&label, body))
            }
            Some(Tok::LParen) => {
                let a = self.formula()?;
                let op = self.next();
                let b = self.formula()?;
                self.expect(Tok::RParen, "')'")?;
                match op {
                    Some(Tok::Star) => Ok(formula::tensor(a, b)),
                    Some(Tok::Hash) => Ok(formula::par(a, b)),
                    Some(Tok::Plus) => Ok(formula::plus(a, b)),
                    Some(Tok::Amp) => Ok(formula::with(a, b)),
                    Some(Tok::Arrow) => Ok(formula::impl_r(a, b)),
                    Some(Tok::LArrow) => Ok(formula::impl_l(a, b)),
                    _ => self.err("expected a binary connective (* # + & -> <-)"),
                }
            }
            _ => {
                self.pos = self.pos.saturating_sub(1);
                self.err("expected a formula")
            }
        }
    }

    fn structure(&mut self) -> Result<Structure, ParseError> {
        if self.peek() == Some(&Tok::LParen) {
            let save = self.pos;
            self.next();
            if self.peek() == Some(&Tok::RParen) {
                self.next();
                return Ok(Structure::Empty);
            }
            // try a structure pair; on failure re-read as a bracketed formula
            let attempt = (|| -> Result<Structure, ParseError> {
                let a = self.structure()?;
                self.expect(Tok::Comma, "','")?;
                let b = self.structure()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(pair(a, b))
            })();
            match attempt {
                Ok(s) => Ok(s),
                Err(_) => {
                    self.pos = save;
                    Ok(leaf(self.formula()?))
                }
            }
        } else {
            Ok(leaf(self.formula()?))
        }
    }

    fn done(&mut self) -> Result<(), ParseError> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            self.err("trailing input")
        }
    }
}

fn parser(src: &str) -> Result<Parser, ParseError> {
    Ok(Parser {
        toks: lex(src)?,
        pos: 0,
        end: src.len(),
    })
}

pub fn parse_formula(src: &str) -> Result<Formula, ParseError> {
    let mut p = parser(src)?;
    let f = p.formula()?;
    p.done()?;
    Ok(f)
}

pub fn parse_structure(src: &str) -> Result<Structure, ParseError> {
    let mut p = parser(src)?;
    let s = p.structure()?;
    p.done()?;
    Ok(s)
}

/// Either `|- Γ` (classical, one-sided) or `Γ |- C` (intuitionistic).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sequent {
    Classical(Structure),
    Intuitionistic(ISequent),
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sequent::Classical(s) => write!(f, "|- {}", s),
            Sequent::Intuitionistic(s) => write!(f, "{}", s),
        }
    }
}

pub fn parse_sequent(src: &str) -> Result<Sequent, ParseError> {
    let mut p = parser(src)?;
    if p.peek() == Some(&Tok::Turnstile) {
        p.next();
        let s = p.structure()?;
        p.done()?;
        if s.is_empty() {
            return Err(ParseError {
                position: src.len(),
                message: "a classical sequent needs a non-empty structure".to_string(),
            });
        }
        Ok(Sequent::Classical(s))
    } else {
        let ant = p.structure()?;
        p.expect(Tok::Turnstile, "'|-'")?;
        let succ = p.formula()?;
        p.done()?;
        Ok(Sequent::Intuitionistic(ISequent {
            antecedent: ant,
            succedent: succ,
        }))
    }
}

pub fn parse_classical_sequent(src: &str) -> Result<Structure, ParseError> {
    match parse_sequent(src)? {
        Sequent::Classical(s) => Ok(s),
        Sequent::Intuitionistic(_) => Err(ParseError {
            position: 0,
            message: "expected a classical sequent `|- S`".to_string(),
        }),
    }
}

pub fn parse_intuitionistic_sequent(src: &str) -> Result<ISequent, ParseError> {
    match parse_sequent(src)? {
        Sequent::Intuitionistic(s) => Ok(s),
        Sequent::Classical(_) => Err(ParseError {
            position: 0,
            message: "expected an intuitionistic sequent `S |- C`".to_string(),
        }),
    }
}
