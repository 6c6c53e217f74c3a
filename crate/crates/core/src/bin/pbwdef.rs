//! Batch front-end: parse a presentation file, dispatch a check, and emit
//! a deterministic report.
//!
//! Exit codes: 0 = pass, 1 = property fails, 2 = input error,
//! 3 = internal method disagreement.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pbwdef::deformation::{DeformationError, Instance, Method};
use pbwdef::io::{build_instance, parse_str, PresentationFile};
use pbwdef::theorems;
use pbwdef::word::{Generator, Word};

#[derive(Parser)]
#[command(name = "pbwdef", about = "PBW checks for deformed smash product algebras")]
struct Cli {
    /// Seed for any randomized sub-suite (reports stay deterministic).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the PBW property by the selected methods.
    CheckPbw {
        file: String,
        /// Comma-separated subset of symbolic,constants,ambiguity,dimension.
        #[arg(long, default_value = "symbolic,constants,ambiguity,dimension")]
        methods: String,
        /// Degree cap for the dimension comparison.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Print the deformed presentation (rewriting rules).
    Build { file: String },
    /// Report the coefficient algebra dimension and the truncated
    /// dimension table of the deformed algebra.
    Dims {
        file: String,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Reduce a word (tokens like "x1 a2") to normal form.
    NormalForm {
        file: String,
        #[arg(long)]
        input: String,
    },
    /// Dimension of the degree-bounded centralizer of all generators.
    Center {
        file: String,
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
    /// Graded dimensions of the degree-bounded commutator quotient.
    Abelianization {
        file: String,
        #[arg(long, default_value_t = 3)]
        degree: usize,
    },
    /// Run a named structure-theory checker:
    /// tgeneric | nilcox | hopf | yd.
    Theorem {
        file: String,
        #[arg(long)]
        name: String,
    },
}

fn fail(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn load(path: &str) -> Result<(PresentationFile, Instance), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    let file = parse_str(&text).map_err(|e| e.to_string())?;
    let inst = build_instance(&file).map_err(|e| e.to_string())?;
    Ok((file, inst))
}

fn parse_methods(spec: &str) -> Result<Vec<Method>, String> {
    let mut out = Vec::new();
    for tok in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        out.push(match tok {
            "symbolic" => Method::Symbolic,
            "constants" => Method::Constants,
            "ambiguity" => Method::Ambiguity,
            "dimension" => Method::Dimension,
            other => return Err(format!("unknown method {other:?}")),
        });
    }
    if out.is_empty() {
        return Err("no methods selected".into());
    }
    Ok(out)
}

fn parse_word(spec: &str, inst: &Instance) -> Result<Word, String> {
    let mut gens = Vec::new();
    for tok in spec.split_whitespace() {
        let (kind, idx) = tok.split_at(1);
        let n: usize = idx.parse().map_err(|_| format!("bad token {tok:?}"))?;
        match kind {
            "x" => {
                if n == 0 || n > inst.act.dim_v {
                    return Err(format!("module index out of range in {tok:?}"));
                }
                gens.push(Generator::Module(n as u16 - 1));
            }
            "a" => {
                if n == 0 || n >= inst.alg.dim {
                    return Err(format!("algebra index out of range in {tok:?}"));
                }
                gens.push(Generator::Algebra(n as u16));
            }
            _ => return Err(format!("bad token {tok:?} (use x<i> or a<j>)")),
        }
    }
    Ok(Word(gens))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => fail(&msg),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::CheckPbw { file, methods, cap } => {
            let (pf, inst) = load(&file)?;
            let methods = parse_methods(&methods)?;
            let cap = cap.unwrap_or(pf.caps.degree);
            match inst.pbw_check(&methods, cap, pf.caps.steps) {
                Ok(rep) => {
                    if let Some(r) = &rep.symbolic {
                        println!(
                            "symbolic: action={} compat_a={} compat_v={} jacobi_a={} jacobi_v={}",
                            r.action, r.compat_a, r.compat_v, r.jacobi_a, r.jacobi_v
                        );
                    }
                    if let Some(r) = &rep.constants {
                        println!(
                            "constants: action={} compat_a={} compat_v={} jacobi_a={} jacobi_v={}",
                            r.action, r.compat_a, r.compat_v, r.jacobi_a, r.jacobi_v
                        );
                    }
                    if let Some(r) = &rep.ambiguities {
                        println!(
                            "ambiguities: aaa={}/{} aax={}/{} axx={}/{} xxx={}/{}",
                            r.aaa.1, r.aaa.0, r.aax.1, r.aax.0, r.axx.1, r.axx.0, r.xxx.1,
                            r.xxx.0
                        );
                        for w in &r.unresolved {
                            println!("unresolved overlap: {w}");
                        }
                    }
                    if let Some(r) = &rep.dimensions {
                        let dims: Vec<String> =
                            r.dims.iter().map(|d| d.to_string()).collect();
                        let exp: Vec<String> =
                            r.expected.iter().map(|d| d.to_string()).collect();
                        println!("dims:     [{}]", dims.join(", "));
                        println!("expected: [{}]", exp.join(", "));
                        if let Some(n) = r.first_mismatch {
                            println!("first mismatch at degree {n}");
                        }
                    }
                    println!("pbw: {}", if rep.pbw { "pass" } else { "fail" });
                    Ok(ExitCode::from(if rep.pbw { 0 } else { 1 }))
                }
                Err(DeformationError::MethodDisagreement(msg)) => {
                    eprintln!("method disagreement: {msg}");
                    Ok(ExitCode::from(3))
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Build { file } => {
            let (_, inst) = load(&file)?;
            let sys = inst.build_presentation().map_err(|e| e.to_string())?;
            println!(
                "algebra dim {}, module dim {}, {} rules",
                inst.alg.dim,
                inst.act.dim_v,
                sys.rules().len()
            );
            for r in sys.rules() {
                println!("{} -> {}", r.lhs, r.rhs);
            }
            Ok(ExitCode::from(0))
        }
        Command::Dims { file, cap } => {
            let (pf, inst) = load(&file)?;
            let sys = inst.build_presentation().map_err(|e| e.to_string())?;
            println!("dim = {}", inst.alg.dim);
            let cap = cap.unwrap_or(pf.caps.degree);
            let oracle = inst
                .graded_dimension_oracle(cap)
                .map_err(|e| e.to_string())?;
            let dims: Vec<String> = oracle.dims.iter().map(|d| d.to_string()).collect();
            let exp: Vec<String> = oracle.expected.iter().map(|d| d.to_string()).collect();
            println!("dims:     [{}]", dims.join(", "));
            println!("expected: [{}]", exp.join(", "));
            let enumeration = sys.enumerate_basis(&inst.alphabet(), cap);
            println!(
                "basis words to degree {cap}: {}{}",
                enumeration.total(),
                if enumeration.saturated {
                    ", saturated"
                } else {
                    ""
                }
            );
            Ok(ExitCode::from(if oracle.pass() { 0 } else { 1 }))
        }
        Command::NormalForm { file, input } => {
            let (pf, inst) = load(&file)?;
            let sys = inst.build_presentation().map_err(|e| e.to_string())?;
            let word = parse_word(&input, &inst)?;
            let p = pbwdef::poly::NCPoly::from_word(word, inst.field().one());
            let nf = sys
                .normal_form(&p, pf.caps.steps)
                .map_err(|e| e.to_string())?;
            println!("{nf}");
            Ok(ExitCode::from(0))
        }
        Command::Center { file, degree } => {
            let (pf, inst) = load(&file)?;
            let rep = theorems::center_truncated(&inst, degree, pf.caps.steps)
                .map_err(|e| e.to_string())?;
            println!(
                "center dimension at degree {}: {}",
                rep.degree, rep.dim
            );
            println!(
                "hypotheses: two-sided primitives agree = {}, lambda into ideal = {}",
                rep.prim_two_sided, rep.lambda_into_ideal
            );
            Ok(ExitCode::from(if rep.dim == 1 { 0 } else { 1 }))
        }
        Command::Abelianization { file, degree } => {
            let (pf, inst) = load(&file)?;
            let rep = theorems::abelianization_truncated(&inst, degree, pf.caps.steps)
                .map_err(|e| e.to_string())?;
            let dims: Vec<String> = rep.graded_dims.iter().map(|d| d.to_string()).collect();
            let exp: Vec<String> = rep.expected.iter().map(|d| d.to_string()).collect();
            println!("graded dims: [{}]", dims.join(", "));
            println!("expected:    [{}]", exp.join(", "));
            Ok(ExitCode::from(if rep.matches() { 0 } else { 1 }))
        }
        Command::Theorem { file, name } => {
            let (pf, inst) = load(&file)?;
            match name.as_str() {
                "tgeneric" => {
                    let rep = theorems::jacobi_grouplike_classify(&inst)
                        .map_err(|e| e.to_string())?;
                    for (m, tag) in rep.tags.iter().enumerate() {
                        println!("m = {m}: {tag:?}");
                    }
                    if !rep.agreement() {
                        eprintln!("classifier and direct evaluation disagree");
                        return Ok(ExitCode::from(3));
                    }
                    if rep.classifier_admissible {
                        println!("all m admissible; Ejac verified");
                        Ok(ExitCode::from(0))
                    } else {
                        println!("inadmissible; Ejac fails");
                        Ok(ExitCode::from(1))
                    }
                }
                "nilcox" => {
                    let cls = theorems::nilcox_pbw_classify(&inst)
                        .map_err(|e| e.to_string())?;
                    println!("{}", cls.reason);
                    let rep = inst
                        .pbw_check(&Method::ALL, pf.caps.degree, pf.caps.steps)
                        .map_err(|e| e.to_string())?;
                    println!(
                        "predicted: {}, rewriting: {}",
                        cls.pbw_predicted, rep.pbw
                    );
                    if cls.pbw_predicted != rep.pbw {
                        eprintln!("classification disagrees with rewriting");
                        return Ok(ExitCode::from(3));
                    }
                    Ok(ExitCode::from(if rep.pbw { 0 } else { 1 }))
                }
                "hopf" => {
                    let rep = theorems::hopf_inheritance_check(&inst);
                    println!(
                        "coproduct extends to lambda: {}; kappa_A primitive: {}",
                        rep.coproduct_lambda, rep.kappa_a_primitive
                    );
                    if let Some(b) = rep.counit_kills_lambda {
                        println!("counit kills im lambda: {b}");
                    }
                    if let Some(b) = rep.antipode_lambda {
                        println!("antipode identity: {b}");
                    }
                    Ok(ExitCode::from(if rep.coalgebra_extends() { 0 } else { 1 }))
                }
                "yd" => {
                    let rep = theorems::yetter_drinfeld_suite(
                        &inst,
                        pf.caps.degree,
                        pf.caps.steps,
                    )
                    .map_err(|e| e.to_string())?;
                    println!(
                        "conditions: {:?}; side hypothesis: {}; commuting: {}",
                        rep.conditions, rep.side_hypothesis, rep.commuting
                    );
                    println!("braidings mutually inverse: {}", rep.braiding_inverse);
                    if let Some(b) = rep.centralizer_is_weight_space {
                        println!("centralizer equals weight space: {b}");
                    }
                    if !rep.equivalences_hold() {
                        eprintln!("claimed equivalences fail on this instance");
                        return Ok(ExitCode::from(3));
                    }
                    Ok(ExitCode::from(if rep.conditions[0] && rep.braiding_inverse {
                        0
                    } else {
                        1
                    }))
                }
                other => Err(format!("unknown theorem name {other:?}")),
            }
        }
    }
}
