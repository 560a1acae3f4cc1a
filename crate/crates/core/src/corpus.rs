//! The reproduction corpus: line-oriented case files driving the checker
//! and the search engine, so the whole suite is reviewable in a diff.
//!
//! A `.case` file holds `key: value` lines and `#` comments:
//!
//! ```text
//! # comments are whole lines ('#' also spells the par connective)
//! name: exchange-identity
//! note: right implication identity needs a top-level exchange
//! system: classical
//! zero: false
//! sig: assoc.sig
//! sequent: |- ((b^ * a), (a^ # b))
//! expect: proved
//! proof: exchange.sexp
//! mode: strict
//! depth: 14
//! contractions: 2
//! ```

use crate::classical::{check_proof, Mode};
use crate::intuitionistic::{check_proof_i, SystemConfig};
use crate::parse::{parse_sequent, Sequent};
use crate::search::{prove_classical, prove_intuitionistic, Budget};
use crate::sexpr::{parse_proof, AnyProof};
use crate::signature::Signature;
use std::fmt;
use std::path::{Path as FsPath, PathBuf};
use std::time::Instant;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CalculusKind {
    Classical,
    Intuitionistic(SystemConfig),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    Proved,
    Exhausted,
    CheckOk,
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Expectation::Proved => "proved",
            Expectation::Exhausted => "exhausted",
            Expectation::CheckOk => "check-ok",
        };
        write!(f, "{}", s)
    }
}

#[derive(Debug, Clone)]
pub struct CorpusCase {
    pub name: String,
    pub note: String,
    pub kind: CalculusKind,
    pub signature: Signature,
    pub sequent: Option<Sequent>,
    pub expect: Expectation,
    pub proof: Option<AnyProof>,
    pub mode: Mode,
    pub budget: Budget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseError {
    pub file: PathBuf,
    pub message: String,
}

impl fmt::Display for CaseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.file.display(), self.message)
    }
}

impl std::error::Error for CaseError {}

pub fn load_case(path: &FsPath) -> Result<CorpusCase, CaseError> {
    let err = |m: String| CaseError {
        file: path.to_path_buf(),
        message: m,
    };
    let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    let mut name = None;
    let mut note = String::new();
    let mut system = "classical".to_string();
    let mut zero = false;
    let mut sig_file: Option<String> = None;
    let mut sequent_src: Option<String> = None;
    let mut expect = None;
    let mut proof_file: Option<String> = None;
    let mut mode = Mode::Strict;
    let mut budget = Budget::default();

    for (lineno, raw) in text.lines().enumerate() {
        // whole-line comments only: '#' also spells the par connective
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| err(format!("line {}: expected `key: value`", lineno + 1)))?;
        let value = value.trim();
        match key.trim() {
            "name" => name = Some(value.to_string()),
            "note" => note = value.to_string(),
            "system" => system = value.to_string(),
            "zero" => {
                zero = value
                    .parse()
                    .map_err(|_| err(format!("line {}: zero wants true/false", lineno + 1)))?
            }
            "sig" => sig_file = Some(value.to_string()),
            "sequent" => sequent_src = Some(value.to_string()),
            "expect" => {
                expect = Some(match value {
                    "proved" => Expectation::Proved,
                    "exhausted" => Expectation::Exhausted,
                    "check-ok" => Expectation::CheckOk,
                    other => return Err(err(format!("unknown expectation {:?}", other))),
                })
            }
            "proof" => proof_file = Some(value.to_string()),
            "mode" => {
                mode = match value {
                    "strict" => Mode::Strict,
                    "modulo" => Mode::Modulo,
                    other => return Err(err(format!("unknown mode {:?}", other))),
                }
            }
            "depth" => {
                budget.max_depth = value
                    .parse()
                    .map_err(|_| err(format!("line {}: bad depth", lineno + 1)))?
            }
            "contractions" => {
                budget.max_contractions = value
                    .parse()
                    .map_err(|_| err(format!("line {}: bad contractions", lineno + 1)))?
            }
            "visited" => {
                budget.max_visited = value
                    .parse()
                    .map_err(|_| err(format!("line {}: bad visited", lineno + 1)))?
            }
            other => return Err(err(format!("unknown key {:?}", other))),
        }
    }

    let kind = match system.as_str() {
        "classical" => CalculusKind::Classical,
        "int" => CalculusKind::Intuitionistic(if zero {
            SystemConfig::base().with_zero()
        } else {
            SystemConfig::base()
        }),
        "int-plus" => CalculusKind::Intuitionistic(if zero {
            SystemConfig::extended().with_zero()
        } else {
            SystemConfig::extended()
        }),
        other => return Err(err(format!("unknown system {:?}", other))),
    };

    let dir = path.parent().unwrap_or(FsPath::new("."));
    let signature = match sig_file {
        None => Signature::empty(),
        Some(f) => {
            let text = std::fs::read_to_string(dir.join(&f)).map_err(|e| err(format!("{}: {}", f, e)))?;
            Signature::load(&text).map_err(|e| err(e.to_string()))?
        }
    };
    let sequent = match sequent_src {
        None => None,
        Some(src) => Some(parse_sequent(&src).map_err(|e| err(e.to_string()))?),
    };
    let proof = match proof_file {
        None => None,
        Some(f) => {
            let text = std::fs::read_to_string(dir.join(&f)).map_err(|e| err(format!("{}: {}", f, e)))?;
            Some(parse_proof(&text).map_err(|e| err(e.to_string()))?)
        }
    };
    if let Some(seq) = &sequent {
        match (&kind, seq) {
            (CalculusKind::Classical, Sequent::Classical(s)) => {
                for (_, f) in s.leaves() {
                    if !f.is_classical() {
                        return Err(err(format!("{} is not a classical formula", f)));
                    }
                }
            }
            (CalculusKind::Intuitionistic(sys), Sequent::Intuitionistic(s)) => {
                s.check_well_formed(sys.zero).map_err(|e| err(e.to_string()))?;
            }
            _ => {
                return Err(err(
                    "the sequent form does not match the selected system".to_string(),
                ))
            }
        }
    }
    let expect = expect.ok_or_else(|| err("missing `expect:`".to_string()))?;
    if expect == Expectation::CheckOk && proof.is_none() {
        return Err(err("check-ok cases need a `proof:` file".to_string()));
    }
    if expect != Expectation::CheckOk && sequent.is_none() {
        return Err(err("search cases need a `sequent:`".to_string()));
    }
    Ok(CorpusCase {
        name: name.ok_or_else(|| err("missing `name:`".to_string()))?,
        note,
        kind,
        signature,
        sequent,
        expect,
        proof,
        mode,
        budget,
    })
}

#[derive(Debug, Clone)]
pub struct CaseResult {
    pub name: String,
    pub expected: Expectation,
    pub got: String,
    pub pass: bool,
    pub millis: u128,
}

pub fn run_case(case: &CorpusCase) -> CaseResult {
    let start = Instant::now();
    let got: String = match case.expect {
        Expectation::CheckOk => match case.proof.as_ref().unwrap() {
            AnyProof::Classical(p) => match check_proof(p, &case.signature, case.mode) {
                Ok(()) => "check-ok".to_string(),
                Err(e) => format!("check failed: {}", e),
            },
            AnyProof::Intuitionistic(p) => {
                let sys = match case.kind {
                    CalculusKind::Intuitionistic(sys) => sys,
                    CalculusKind::Classical => SystemConfig::base(),
                };
                match check_proof_i(p, &case.signature, sys) {
                    Ok(()) => "check-ok".to_string(),
                    Err(e) => format!("check failed: {}", e),
                }
            }
        },
        Expectation::Proved | Expectation::Exhausted => {
            match (&case.kind, case.sequent.as_ref().unwrap()) {
                (CalculusKind::Classical, Sequent::Classical(s)) => {
                    prove_classical(s, &case.signature, &case.budget)
                        .verdict()
                        .to_string()
                }
                (CalculusKind::Intuitionistic(sys), Sequent::Intuitionistic(s)) => {
                    prove_intuitionistic(s, &case.signature, *sys, &case.budget)
                        .verdict()
                        .to_string()
                }
                _ => "sequent does not match the selected system".to_string(),
            }
        }
    };
    let pass = match case.expect {
        Expectation::CheckOk => got == "check-ok",
        Expectation::Proved => got == "proved",
        Expectation::Exhausted => got == "exhausted",
    };
    CaseResult {
        name: case.name.clone(),
        expected: case.expect,
        got,
        pass,
        millis: start.elapsed().as_millis(),
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub results: Vec<CaseResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            out.push_str(&format!(
                "{} {:<28} expected {:<10} got {:<16} {:>5} ms\n",
                if r.pass { "PASS" } else { "FAIL" },
                r.name,
                r.expected.to_string(),
                r.got,
                r.millis
            ));
        }
        let passed = self.results.iter().filter(|r| r.pass).count();
        out.push_str(&format!("{}/{} cases passed\n", passed, self.results.len()));
        out
    }
}

/// Run every `.case` file under `dir`; cases run in parallel, results come
/// back sorted by name so the report is stable.
pub fn run_corpus(dir: &FsPath) -> Result<Report, CaseError> {
    let err = |m: String| CaseError {
        file: dir.to_path_buf(),
        message: m,
    };
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| err(e.to_string()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "case"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(err("no .case files found".to_string()));
    }
    let cases: Vec<CorpusCase> = files
        .iter()
        .map(|f| load_case(f))
        .collect::<Result<_, _>>()?;

    let mut results: Vec<CaseResult> = std::thread::scope(|scope| {
        let handles: Vec<_> = cases
            .iter()
            .map(|case| scope.spawn(move || run_case(case)))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    results.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(Report { results })
}
