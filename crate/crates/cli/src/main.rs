//! `snacl`: prove, check, translate, lift, lower, canonicalize, render, and
//! run the reproduction corpus.

use snacl_core::classical::{check_proof, expand_to_strict, Mode};
use snacl_core::corpus::run_corpus;
use snacl_core::embedding::{lift_proof, lower_proof, translate_sequent};
use snacl_core::equivalence::canonicalize;
use snacl_core::intuitionistic::{check_proof_i, SystemConfig};
use snacl_core::parse::{parse_sequent, parse_structure, Sequent};
use snacl_core::render::{render_latex, render_text};
use snacl_core::search::{prove_classical, prove_intuitionistic, Budget, SearchOutcome};
use snacl_core::sexpr::{parse_proof, print_proof, AnyProof};
use snacl_core::signature::Signature;
use std::path::Path;
use std::process::ExitCode;

const USAGE: &str = "\
usage: snacl <command> [options] [argument]

commands:
  prove SEQUENT        backward proof search; exit 0 proved, 1 exhausted,
                       2 budget exceeded
  check FILE           check a proof file against the rules
  translate SEQUENT    print the classical translation of a two-sided sequent
  lift FILE            transport a two-sided proof into the classical system
  lower FILE           recover a two-sided proof from a classical one
  canon STRUCTURE      print the canonical form of a structure
  corpus DIR           run every .case file in DIR
  render FILE          pretty-print a proof file

options:
  --sys classical|int|int-plus   calculus (default classical)
  --zero                         enable the 0 constant (two-sided systems)
  --sig FILE                     signature file (default: empty signature)
  --mode strict|modulo           checking mode for `check` (default strict)
  --depth N                      search depth per branch (default 14)
  --contractions K               contraction steps per branch (default 2)
  --visited N                    global state cap (default 200000)
  --emit FILE                    write the resulting proof to FILE
  --render text|latex            render the resulting proof
  --strictify                    with --emit on `prove`: expand the proof
                                 with explicit structural steps
";

struct Options {
    sys: String,
    zero: bool,
    sig: Signature,
    mode: Mode,
    budget: Budget,
    emit: Option<String>,
    render: Option<String>,
    strictify: bool,
    arg: Option<String>,
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("snacl: {}", msg);
    ExitCode::from(64)
}

fn parse_options(args: &[String]) -> Result<Options, String> {
    let mut opts = Options {
        sys: "classical".to_string(),
        zero: false,
        sig: Signature::empty(),
        mode: Mode::Strict,
        budget: Budget::default(),
        emit: None,
        render: None,
        strictify: false,
        arg: None,
    };
    let mut i = 0;
    while i < args.len() {
        let a = &args[i];
        let mut value = |name: &str| -> Result<String, String> {
            i += 1;
            args.get(i)
                .cloned()
                .ok_or_else(|| format!("{} needs a value", name))
        };
        match a.as_str() {
            "--sys" => opts.sys = value("--sys")?,
            "--zero" => opts.zero = true,
            "--sig" => {
                let f = value("--sig")?;
                let text =
                    std::fs::read_to_string(&f).map_err(|e| format!("{}: {}", f, e))?;
                opts.sig = Signature::load(&text).map_err(|e| e.to_string())?;
            }
            "--mode" => {
                opts.mode = match value("--mode")?.as_str() {
                    "strict" => Mode::Strict,
                    "modulo" => Mode::Modulo,
                    other => return Err(format!("unknown mode {:?}", other)),
                }
            }
            "--depth" => {
                opts.budget.max_depth = value("--depth")?
                    .parse()
                    .map_err(|_| "bad --depth".to_string())?
            }
            "--contractions" => {
                opts.budget.max_contractions = value("--contractions")?
                    .parse()
                    .map_err(|_| "bad --contractions".to_string())?
            }
            "--visited" => {
                opts.budget.max_visited = value("--visited")?
                    .parse()
                    .map_err(|_| "bad --visited".to_string())?
            }
            "--emit" => opts.emit = Some(value("--emit")?),
            "--render" => opts.render = Some(value("--render")?),
            "--strictify" => opts.strictify = true,
            other if other.starts_with("--") => {
                return Err(format!("unknown option {}", other))
            }
            _ => {
                if opts.arg.is_some() {
                    return Err(format!("unexpected extra argument {:?}", a));
                }
                opts.arg = Some(a.clone());
            }
        }
        i += 1;
    }
    Ok(opts)
}

fn system_config(opts: &Options) -> Result<SystemConfig, String> {
    let base = match opts.sys.as_str() {
        "int" => SystemConfig::base(),
        "int-plus" => SystemConfig::extended(),
        other => return Err(format!("{:?} is not a two-sided system", other)),
    };
    Ok(if opts.zero { base.with_zero() } else { base })
}

fn emit_or_print(opts: &Options, proof: &AnyProof) -> Result<(), String> {
    if let Some(f) = &opts.emit {
        std::fs::write(f, print_proof(proof)).map_err(|e| format!("{}: {}", f, e))?;
    }
    match opts.render.as_deref() {
        Some("text") => print!("{}", render_text(proof)),
        Some("latex") => print!("{}", render_latex(proof)),
        Some(other) => return Err(format!("unknown render format {:?}", other)),
        None => {}
    }
    Ok(())
}

fn cmd_prove(opts: &Options) -> Result<ExitCode, String> {
    let src = opts.arg.as_ref().ok_or("prove needs a sequent")?;
    let sequent = parse_sequent(src).map_err(|e| e.to_string())?;
    match (&sequent, opts.sys.as_str()) {
        (Sequent::Classical(s), "classical") => {
            for (_, f) in s.leaves() {
                if !f.is_classical() {
                    return Err(format!("{} is not a classical formula", f));
                }
            }
            match prove_classical(s, &opts.sig, &opts.budget) {
                SearchOutcome::Proved(p) => {
                    println!("proved");
                    let p = if opts.strictify {
                        expand_to_strict(&p, &opts.sig).map_err(|e| e.to_string())?
                    } else {
                        p
                    };
                    emit_or_print(opts, &AnyProof::Classical(p))?;
                    Ok(ExitCode::SUCCESS)
                }
                SearchOutcome::Exhausted { contraction_bound } => {
                    println!(
                        "exhausted: no proof with at most {} contraction(s) per branch",
                        contraction_bound
                    );
                    Ok(ExitCode::from(1))
                }
                SearchOutcome::BudgetExceeded => {
                    println!("budget exceeded");
                    Ok(ExitCode::from(2))
                }
            }
        }
        (Sequent::Intuitionistic(s), "int" | "int-plus") => {
            let sys = system_config(opts)?;
            s.check_well_formed(sys.zero).map_err(|e| e.to_string())?;
            match prove_intuitionistic(s, &opts.sig, sys, &opts.budget) {
                SearchOutcome::Proved(p) => {
                    println!("proved");
                    emit_or_print(opts, &AnyProof::Intuitionistic(p))?;
                    Ok(ExitCode::SUCCESS)
                }
                SearchOutcome::Exhausted { contraction_bound } => {
                    println!(
                        "exhausted: no proof with at most {} contraction(s) per branch",
                        contraction_bound
                    );
                    Ok(ExitCode::from(1))
                }
                SearchOutcome::BudgetExceeded => {
                    println!("budget exceeded");
                    Ok(ExitCode::from(2))
                }
            }
        }
        (Sequent::Classical(_), other) => Err(format!(
            "a `|- S` sequent needs --sys classical, not {}",
            other
        )),
        (Sequent::Intuitionistic(_), other) => Err(format!(
            "a two-sided sequent needs --sys int or int-plus, not {}",
            other
        )),
    }
}

fn read_proof_arg(opts: &Options) -> Result<AnyProof, String> {
    let f = opts.arg.as_ref().ok_or("expected a proof file")?;
    let text = std::fs::read_to_string(f).map_err(|e| format!("{}: {}", f, e))?;
    parse_proof(&text).map_err(|e| e.to_string())
}

fn cmd_check(opts: &Options) -> Result<ExitCode, String> {
    match read_proof_arg(opts)? {
        AnyProof::Classical(p) => match check_proof(&p, &opts.sig, opts.mode) {
            Ok(()) => {
                println!("ok: {} node(s), conclusion |- {}", p.node_count(), p.sequent);
                Ok(ExitCode::SUCCESS)
            }
            Err(e) => {
                println!("violation {}", e);
                Ok(ExitCode::from(3))
            }
        },
        AnyProof::Intuitionistic(p) => {
            let sys = if opts.sys == "classical" {
                // a two-sided file with no --sys: default to the base system
                let base = SystemConfig::base();
                if opts.zero {
                    base.with_zero()
                } else {
                    base
                }
            } else {
                system_config(opts)?
            };
            match check_proof_i(&p, &opts.sig, sys) {
                Ok(()) => {
                    println!("ok: {} node(s), conclusion {}", p.node_count(), p.sequent);
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    println!("violation {}", e);
                    Ok(ExitCode::from(3))
                }
            }
        }
    }
}

fn cmd_translate(opts: &Options) -> Result<ExitCode, String> {
    let src = opts.arg.as_ref().ok_or("translate needs a two-sided sequent")?;
    match parse_sequent(src).map_err(|e| e.to_string())? {
        Sequent::Intuitionistic(s) => {
            s.check_well_formed(true).map_err(|e| e.to_string())?;
            let t = translate_sequent(&s).map_err(|e| e.to_string())?;
            println!("|- {}", t);
            Ok(ExitCode::SUCCESS)
        }
        Sequent::Classical(_) => Err("translate takes a two-sided sequent".to_string()),
    }
}

fn cmd_lift(opts: &Options) -> Result<ExitCode, String> {
    match read_proof_arg(opts)? {
        AnyProof::Intuitionistic(p) => {
            let sys = if opts.sys == "classical" {
                let base = SystemConfig::base();
                if opts.zero { base.with_zero() } else { base }
            } else {
                system_config(opts)?
            };
            check_proof_i(&p, &opts.sig, sys)
                .map_err(|e| format!("input proof does not check: {}", e))?;
            let lifted = lift_proof(&p).map_err(|e| e.to_string())?;
            check_proof(&lifted, &opts.sig, Mode::Modulo).map_err(|e| e.to_string())?;
            println!("lifted: conclusion |- {}", lifted.sequent);
            emit_or_print(opts, &AnyProof::Classical(lifted))?;
            Ok(ExitCode::SUCCESS)
        }
        AnyProof::Classical(_) => Err("lift takes a two-sided proof".to_string()),
    }
}

fn cmd_lower(opts: &Options) -> Result<ExitCode, String> {
    match read_proof_arg(opts)? {
        AnyProof::Classical(p) => {
            let sys = if opts.sys == "classical" {
                SystemConfig::base()
            } else {
                system_config(opts)?
            };
            if check_proof(&p, &opts.sig, Mode::Strict).is_err() {
                check_proof(&p, &opts.sig, Mode::Modulo)
                    .map_err(|e| format!("input proof does not check: {}", e))?;
            }
            let lowered = lower_proof(&p, &opts.sig, sys).map_err(|e| e.to_string())?;
            println!("lowered: conclusion {}", lowered.proof.sequent);
            if lowered.fallbacks > 0 {
                println!(
                    "note: {} step(s) reconstructed by bounded search",
                    lowered.fallbacks
                );
            }
            emit_or_print(opts, &AnyProof::Intuitionistic(lowered.proof))?;
            Ok(ExitCode::SUCCESS)
        }
        AnyProof::Intuitionistic(_) => Err("lower takes a classical proof".to_string()),
    }
}

fn cmd_canon(opts: &Options) -> Result<ExitCode, String> {
    let src = opts.arg.as_ref().ok_or("canon needs a structure")?;
    let s = parse_structure(src).map_err(|e| e.to_string())?;
    let c = canonicalize(&s).map_err(|e| e.to_string())?;
    println!("{}", c);
    Ok(ExitCode::SUCCESS)
}

fn cmd_corpus(opts: &Options) -> Result<ExitCode, String> {
    let dir = opts.arg.as_ref().ok_or("corpus needs a directory")?;
    let report = run_corpus(Path::new(dir)).map_err(|e| e.to_string())?;
    print!("{}", report.render());
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_render(opts: &Options) -> Result<ExitCode, String> {
    let p = read_proof_arg(opts)?;
    match opts.render.as_deref().unwrap_or("text") {
        "text" => print!("{}", render_text(&p)),
        "latex" => print!("{}", render_latex(&p)),
        other => return Err(format!("unknown render format {:?}", other)),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let Some((command, rest)) = args.split_first() else {
        eprint!("{}", USAGE);
        return ExitCode::from(64);
    };
    let opts = match parse_options(rest) {
        Ok(o) => o,
        Err(e) => return fail(e),
    };
    let run = match command.as_str() {
        "prove" => cmd_prove(&opts),
        "check" => cmd_check(&opts),
        "translate" => cmd_translate(&opts),
        "lift" => cmd_lift(&opts),
        "lower" => cmd_lower(&opts),
        "canon" => cmd_canon(&opts),
        "corpus" => cmd_corpus(&opts),
        "render" => cmd_render(&opts),
        "help" | "--help" | "-h" => {
            print!("{}", USAGE);
            Ok(ExitCode::SUCCESS)
        }
        other => Err(format!("unknown command {:?}\n{}", other, USAGE)),
    };
    match run {
        Ok(code) => code,
        Err(e) => fail(e),
    }
}
