//! Proof rendering: an indented text tree (with Unicode connectives) and a
//! LaTeX derivation for the bussproofs package. Rendering never alters a
//! proof; input and file formats stay ASCII.

use crate::classical::Proof;
use crate::formula::Formula;
use crate::intuitionistic::IProof;
use crate::sexpr::AnyProof;
use crate::structure::Structure;

/// Unicode form of a formula, for display only.
pub fn unicode_formula(f: &Formula) -> String {
    use Formula::*;
    match f {
        Atom(a) => a.clone(),
        NegAtom(a) => format!("{}⊥", a),
        Tensor(a, b) => format!("({} ⊗ {})", unicode_formula(a), unicode_formula(b)),
        Par(a, b) => format!("({} ⅋ {})", unicode_formula(a), unicode_formula(b)),
        Plus(a, b) => format!("({} ⊕ {})", unicode_formula(a), unicode_formula(b)),
        With(a, b) => format!("({} & {})", unicode_formula(a), unicode_formula(b)),
        One => "1".to_string(),
        Bot => "⊥".to_string(),
        Zero => "0".to_string(),
        Top => "⊤".to_string(),
        Bang(i, a) => format!("!{}{}", superscript(i), unicode_formula(a)),
        Quest(i, a) => format!("?{}{}", superscript(i), unicode_formula(a)),
        ImplR(a, b) => format!("({} → {})", unicode_formula(a), unicode_formula(b)),
        ImplL(b, a) => format!("({} ← {})", unicode_formula(b), unicode_formula(a)),
    }
}

fn superscript(label: &str) -> String {
    format!("^{{{}}}", label)
}

pub fn unicode_structure(s: &Structure) -> String {
    match s {
        Structure::Empty => "∅".to_string(),
        Structure::Leaf(f) => unicode_formula(f),
        Structure::Pair(a, b) => format!("({}, {})", unicode_structure(a), unicode_structure(b)),
    }
}

fn text_classical(p: &Proof, depth: usize, out: &mut String) {
    for _ in 0..depth {
        out.push_str("  ");
    }
    out.push_str(&format!("{:<6} ⇒ {}\n", p.rule.name(), unicode_structure(&p.sequent)));
    for q in &p.premises {
        text_classical(q, depth + 1, out);
    }
}

fn text_intuitionistic(p: &IProof, depth: usize, out: &mut String) {
    for _ in 0..depth {
        out.push_str("  ");
    }
    out.push_str(&format!(
        "{:<8} {} ⇒ {}\n",
        p.rule.name(),
        unicode_structure(&p.sequent.antecedent),
        unicode_formula(&p.sequent.succedent)
    ));
    for q in &p.premises {
        text_intuitionistic(q, depth + 1, out);
    }
}

pub fn render_text(p: &AnyProof) -> String {
    let mut out = String::new();
    match p {
        AnyProof::Classical(p) => text_classical(p, 0, &mut out),
        AnyProof::Intuitionistic(p) => text_intuitionistic(p, 0, &mut out),
    }
    out
}

fn latex_formula(f: &Formula) -> String {
    use Formula::*;
    match f {
        Atom(a) => latex_name(a),
        NegAtom(a) => format!("{}^{{\\perp}}", latex_name(a)),
        Tensor(a, b) => format!("({} \\otimes {})", latex_formula(a), latex_formula(b)),
        Par(a, b) => format!("({} \\wp {})", latex_formula(a), latex_formula(b)),
        Plus(a, b) => format!("({} \\oplus {})", latex_formula(a), latex_formula(b)),
        With(a, b) => format!("({} \\mathbin{{\\&}} {})", latex_formula(a), latex_formula(b)),
        One => "1".to_string(),
        Bot => "\\perp".to_string(),
        Zero => "0".to_string(),
        Top => "\\top".to_string(),
        Bang(i, a) => format!("{{!}}^{{{}}}{}", latex_name(i), latex_formula(a)),
        Quest(i, a) => format!("{{?}}^{{{}}}{}", latex_name(i), latex_formula(a)),
        ImplR(a, b) => format!("({} \\to {})", latex_formula(a), latex_formula(b)),
        ImplL(b, a) => format!("({} \\leftarrow {})", latex_formula(b), latex_formula(a)),
    }
}

fn latex_name(name: &str) -> String {
    name.replace('_', "\\_")
}

fn latex_structure(s: &Structure) -> String {
    match s {
        Structure::Empty => "\\emptyset".to_string(),
        Structure::Leaf(f) => latex_formula(f),
        Structure::Pair(a, b) => format!("({}, {})", latex_structure(a), latex_structure(b)),
    }
}

fn latex_rule_name(name: &str) -> String {
    format!("\\mathsf{{{}}}", latex_name(name))
}

fn latex_node(
    sequent: String,
    rule: &str,
    arity: usize,
    premises: impl FnOnce(&mut String),
    out: &mut String,
) {
    premises(out);
    if arity == 0 {
        out.push_str("\\AxiomC{}\n");
    }
    out.push_str(&format!("\\RightLabel{{$ {} $}}\n", latex_rule_name(rule)));
    match arity {
        0 | 1 => out.push_str(&format!("\\UnaryInfC{{${}$}}\n", sequent)),
        2 => out.push_str(&format!("\\BinaryInfC{{${}$}}\n", sequent)),
        n => panic!("no bussproofs inference for arity {}", n),
    }
}

fn latex_classical(p: &Proof, out: &mut String) {
    let seq = format!("\\Rightarrow {}", latex_structure(&p.sequent));
    let arity = p.premises.len();
    latex_node(
        seq,
        p.rule.name(),
        arity,
        |out| {
            for q in &p.premises {
                latex_classical(q, out);
            }
        },
        out,
    );
}

fn latex_intuitionistic(p: &IProof, out: &mut String) {
    let seq = format!(
        "{} \\Rightarrow {}",
        latex_structure(&p.sequent.antecedent),
        latex_formula(&p.sequent.succedent)
    );
    let arity = p.premises.len();
    latex_node(
        seq,
        p.rule.name(),
        arity,
        |out| {
            for q in &p.premises {
                latex_intuitionistic(q, out);
            }
        },
        out,
    );
}

pub fn render_latex(p: &AnyProof) -> String {
    let mut out = String::from("\\begin{prooftree}\n");
    match p {
        AnyProof::Classical(p) => latex_classical(p, &mut out),
        AnyProof::Intuitionistic(p) => latex_intuitionistic(p, &mut out),
    }
    out.push_str("\\end{prooftree}\n");
    out
}
