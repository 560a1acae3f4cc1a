//! Proof files.
//!
//! A derivation is one S-expression per node:
//!
//! ```text
//! (RULE :seq "SEQUENT" [:at ("PATH" ...)] [:label ID]
//!       [:premises (PROOF ...)])
//! ```
//!
//! `PATH` is a string over `L`/`R` ("" addresses the root). For the
//! contraction rules `:at` lists the copy positions in the premise, the
//! retained copy first. Classical and two-sided proofs share the format;
//! the rule name and the sequent decide which calculus a file belongs to.

use crate::classical::{Proof, Rule};
use crate::intuitionistic::{IProof, IRule};
use crate::parse::{parse_sequent, Sequent};
use crate::structure::Path;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SexprError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for SexprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "proof file error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for SexprError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Sx {
    Sym(String),
    Str(String),
    List(Vec<Sx>),
}

fn lex_sexpr(src: &str) -> Result<Vec<(usize, String)>, SexprError> {
    let mut toks = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            c if c.is_whitespace() => i += 1,
            ';' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            '(' | ')' => {
                toks.push((i, c.to_string()));
                i += 1;
            }
            '"' => {
                let start = i;
                i += 1;
                let mut s = String::from("\"");
                while i < bytes.len() && bytes[i] != b'"' {
                    s.push(bytes[i] as char);
                    i += 1;
                }
                if i >= bytes.len() {
                    return Err(SexprError {
                        position: start,
                        message: "unterminated string".to_string(),
                    });
                }
                s.push('"');
                i += 1;
                toks.push((start, s));
            }
            _ => {
                let start = i;
                while i < bytes.len()
                    && !bytes[i].is_ascii_whitespace()
                    && bytes[i] != b'('
                    && bytes[i] != b')'
                    && bytes[i] != b'"'
                {
                    i += 1;
                }
                toks.push((start, src[start..i].to_string()));
            }
        }
    }
    Ok(toks)
}

fn parse_sx(toks: &[(usize, String)], pos: &mut usize) -> Result<Sx, SexprError> {
    let (at, tok) = toks.get(*pos).ok_or(SexprError {
        position: usize::MAX,
        message: "unexpected end of input".to_string(),
    })?;
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match toks.get(*pos) {
                    Some((_, t)) if t == ")" => {
                        *pos += 1;
                        return Ok(Sx::List(items));
                    }
                    Some(_) => items.push(parse_sx(toks, pos)?),
                    None => {
                        return Err(SexprError {
                            position: *at,
                            message: "unclosed list".to_string(),
                        })
                    }
                }
            }
        }
        ")" => Err(SexprError {
            position: *at,
            message: "unexpected ')'".to_string(),
        }),
        s if s.starts_with('"') => Ok(Sx::Str(s[1..s.len() - 1].to_string())),
        s => Ok(Sx::Sym(s.to_string())),
    }
}

struct NodeFields {
    rule: String,
    seq: String,
    at: Vec<Path>,
    label: Option<String>,
    premises: Vec<Sx>,
}

fn read_node(sx: &Sx) -> Result<NodeFields, SexprError> {
    let err = |m: &str| SexprError {
        position: 0,
        message: m.to_string(),
    };
    let items = match sx {
        Sx::List(items) => items,
        _ => return Err(err("a proof node must be a list")),
    };
    let rule = match items.first() {
        Some(Sx::Sym(s)) => s.clone(),
        _ => return Err(err("a proof node must start with a rule name")),
    };
    let mut seq = None;
    let mut at = Vec::new();
    let mut label = None;
    let mut premises = Vec::new();
    let mut i = 1;
    while i < items.len() {
        let key = match &items[i] {
            Sx::Sym(s) if s.starts_with(':') => s.clone(),
            _ => return Err(err("expected a :keyword")),
        };
        let val = items
            .get(i + 1)
            .ok_or_else(|| err(&format!("{} needs a value", key)))?;
        match (key.as_str(), val) {
            (":seq", Sx::Str(s)) => seq = Some(s.clone()),
            (":at", Sx::List(paths)) => {
                for p in paths {
                    match p {
                        Sx::Str(s) => at.push(
                            Path::parse(s).map_err(|m| err(&m))?,
                        ),
                        _ => return Err(err(":at entries must be strings")),
                    }
                }
            }
            (":label", Sx::Sym(s)) => label = Some(s.clone()),
            (":premises", Sx::List(ps)) => premises = ps.clone(),
            (k, _) => return Err(err(&format!("unknown or ill-typed keyword {}", k))),
        }
        i += 2;
    }
    Ok(NodeFields {
        rule,
        seq: seq.ok_or_else(|| err("missing :seq"))?,
        at,
        label,
        premises,
    })
}

fn build_classical(sx: &Sx) -> Result<Proof, SexprError> {
    let fields = read_node(sx)?;
    let err = |m: String| SexprError {
        position: 0,
        message: m,
    };
    let rule = Rule::parse(&fields.rule)
        .ok_or_else(|| err(format!("unknown classical rule {:?}", fields.rule)))?;
    let sequent = match parse_sequent(&fields.seq).map_err(|e| err(e.to_string()))? {
        Sequent::Classical(s) => s,
        Sequent::Intuitionistic(_) => {
            return Err(err(format!(
                "rule {} needs a classical sequent, found a two-sided one",
                fields.rule
            )))
        }
    };
    let premises = fields
        .premises
        .iter()
        .map(build_classical)
        .collect::<Result<_, _>>()?;
    Ok(Proof {
        rule,
        sequent,
        at: fields.at,
        label: fields.label,
        premises,
    })
}

fn build_intuitionistic(sx: &Sx) -> Result<IProof, SexprError> {
    let fields = read_node(sx)?;
    let err = |m: String| SexprError {
        position: 0,
        message: m,
    };
    let rule = IRule::parse(&fields.rule)
        .ok_or_else(|| err(format!("unknown two-sided rule {:?}", fields.rule)))?;
    let sequent = match parse_sequent(&fields.seq).map_err(|e| err(e.to_string()))? {
        Sequent::Intuitionistic(s) => s,
        Sequent::Classical(_) => {
            return Err(err(format!(
                "rule {} needs a two-sided sequent, found a classical one",
                fields.rule
            )))
        }
    };
    let premises = fields
        .premises
        .iter()
        .map(build_intuitionistic)
        .collect::<Result<_, _>>()?;
    Ok(IProof {
        rule,
        sequent,
        at: fields.at,
        label: fields.label,
        premises,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyProof {
    Classical(Proof),
    Intuitionistic(IProof),
}

pub fn parse_proof(src: &str) -> Result<AnyProof, SexprError> {
    let toks = lex_sexpr(src)?;
    let mut pos = 0;
    let sx = parse_sx(&toks, &mut pos)?;
    if pos != toks.len() {
        return Err(SexprError {
            position: toks[pos].0,
            message: "trailing input after the proof".to_string(),
        });
    }
    let fields = read_node(&sx)?;
    if Rule::parse(&fields.rule).is_some() {
        Ok(AnyProof::Classical(build_classical(&sx)?))
    } else if IRule::parse(&fields.rule).is_some() {
        Ok(AnyProof::Intuitionistic(build_intuitionistic(&sx)?))
    } else {
        Err(SexprError {
            position: 0,
            message: format!("unknown rule {:?}", fields.rule),
        })
    }
}

fn write_indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str("  ");
    }
}

fn write_classical(p: &Proof, out: &mut String, depth: usize) {
    write_indent(out, depth);
    out.push('(');
    out.push_str(p.rule.name());
    out.push_str(&format!(" :seq \"|- {}\"", p.sequent));
    if !p.at.is_empty() {
        let paths: Vec<String> = p.at.iter().map(|q| format!("\"{}\"", q)).collect();
        out.push_str(&format!(" :at ({})", paths.join(" ")));
    }
    if let Some(l) = &p.label {
        out.push_str(&format!(" :label {}", l));
    }
    if !p.premises.is_empty() {
        out.push_str(" :premises (\n");
        for (i, q) in p.premises.iter().enumerate() {
            write_classical(q, out, depth + 1);
            if i + 1 < p.premises.len() {
                out.push('\n');
            }
        }
        out.push(')');
    }
    out.push(')');
}

fn write_intuitionistic(p: &IProof, out: &mut String, depth: usize) {
    write_indent(out, depth);
    out.push('(');
    out.push_str(p.rule.name());
    out.push_str(&format!(" :seq \"{}\"", p.sequent));
    if !p.at.is_empty() {
        let paths: Vec<String> = p.at.iter().map(|q| format!("\"{}\"", q)).collect();
        out.push_str(&format!(" :at ({})", paths.join(" ")));
    }
    if let Some(l) = &p.label {
        out.push_str(&format!(" :label {}", l));
    }
    if !p.premises.is_empty() {
        out.push_str(" :premises (\n");
        for (i, q) in p.premises.iter().enumerate() {
            write_intuitionistic(q, out, depth + 1);
            if i + 1 < p.premises.len() {
                out.push('\n');
            }
        }
        out.push(')');
    }
    out.push(')');
}

pub fn print_proof(p: &AnyProof) -> String {
    let mut out = String::new();
    match p {
        AnyProof::Classical(p) => write_classical(p, &mut out, 0),
        AnyProof::Intuitionistic(p) => write_intuitionistic(p, &mut out, 0),
    }
    out.push('\n');
    out
}
