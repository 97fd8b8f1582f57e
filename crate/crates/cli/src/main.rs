//! `clogic`: command-line access to terms, formulas, proofs, proposition
//! algebras and finite models.
//!
//! Exit status: 0 when the command succeeds or its check passes, 1 when a
//! check fails or a counterexample is found, 2 on unreadable input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use clone_logic::enumerate::formulas_up_to;
use clone_logic::formula::{arithmetic_language, peano_core, peano_induction};
use clone_logic::proof::{check_proof, instantiate_axiom, Theory};
use clone_logic::prop::{check_prop_proof, falsifying_assignment, FinitePropAlgebra, FreeFragment};
use clone_logic::random::DEFAULT_SEED;
use clone_logic::semantics::{countermodel_search, qa_law_check, Env, SearchOptions, Structure};
use clone_logic::soundness::{run_soundness, SoundnessConfig};
use clone_logic::syntax::{
    builtin_structure, parse_algebra, parse_axiom, parse_env, parse_formula, parse_proof,
    parse_prop, parse_prop_proof, parse_signature, parse_structure, parse_substitution, parse_term,
    parse_theory,
};
use clone_logic::{Formula, Language, Term};

#[derive(Parser)]
#[command(
    name = "clogic",
    version,
    about = "Clone-indexed first-order logic toolkit"
)]
struct Cli {
    /// Signature file (`fn name/arity`, `rel name/arity [equality]` lines).
    /// Defaults to the arithmetic language `0, S, add, mul, e`.
    #[arg(long, global = true, value_name = "FILE")]
    sig: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Term,
    Formula,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Plus,
    Minus,
    Star,
    Forall,
    CloseOff,
}

#[derive(Args)]
struct SearchArgs {
    /// Largest domain size tried.
    #[arg(long, default_value_t = 3)]
    max_size: u32,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical and core forms of a term or formula with its rank.
    Parse { kind: Kind, text: String },
    /// Apply a substitution (or one of the derived operations) to a formula or term.
    Subst {
        kind: Kind,
        text: String,
        /// Substitution such as `[c, f(x1) ; shift 0]` or `[x2, x1]`.
        #[arg(long, conflicts_with = "op")]
        subst: Option<String>,
        #[arg(long)]
        op: Option<Op>,
    },
    /// Evaluate a formula in a finite structure and check its validity there.
    Eval {
        /// Structure file, or a built-in such as `zmod5`.
        #[arg(long)]
        structure: String,
        #[arg(long)]
        formula: String,
        /// Environment such as `[4, 0 ; 0]`.
        #[arg(long, default_value = "[; 0]")]
        env: String,
    },
    /// Decide whether a propositional term is a tautology.
    Taut { term: String },
    /// Check a proof file against theory files.
    CheckProof {
        proof: PathBuf,
        /// Theory files; the proof names the one it uses.
        #[arg(long = "theory")]
        theories: Vec<PathBuf>,
    },
    /// Instantiate an axiom such as `A6(p=r(x1), n=1)`.
    Axiom { spec: String },
    /// Report valuations, filters and completeness for a proposition algebra.
    Propalg {
        /// Algebra file; omit with `--free`.
        file: Option<PathBuf>,
        /// Build the Lindenbaum algebra of the free fragment on this many generators.
        #[arg(long, conflicts_with = "file")]
        free: Option<usize>,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Search for a finite structure refuting a formula.
    Countermodel {
        formula: String,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Check Q1-Q5 in a structure on all formulas of bounded height.
    QaLaws {
        #[arg(long)]
        structure: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        rank_bound: u32,
    },
    /// Check random axiom instances for validity in small structures.
    Soundness {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_size: u32,
        #[arg(long, default_value_t = 200)]
        per_schema: usize,
    },
    /// Emit or check the Peano axioms.
    Peano {
        /// Print S1-S7 instead of checking S1-S6.
        #[arg(long)]
        emit: bool,
        #[arg(long, default_value = "zmod5")]
        structure: String,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn language(sig: &Option<PathBuf>) -> Result<Language> {
    match sig {
        Some(path) => {
            parse_signature(&read(path)?).with_context(|| format!("in {}", path.display()))
        }
        None => Ok(arithmetic_language()),
    }
}

fn structure(lang: &Language, spec: &str) -> Result<Structure> {
    if let Some(d) = builtin_structure(spec) {
        return Ok(d);
    }
    let path = Path::new(spec);
    parse_structure(lang, &read(path)?).with_context(|| format!("in {}", path.display()))
}

fn formula(lang: &Language, text: &str) -> Result<Formula> {
    Ok(parse_formula(lang, text)?)
}

fn print_formula(p: &Formula) {
    println!("formula: {p}");
    println!("core: {p:#}");
    println!("rank: {}", p.rank());
    println!("sentence: {}", p.is_sentence());
}

fn print_term(t: &Term) {
    println!("term: {t}");
    println!("rank: {}", t.rank());
    println!("closed: {}", t.is_closed());
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Parse { kind, text } => {
            let lang = language(&cli.sig)?;
            match kind {
                Kind::Term => print_term(&parse_term(&lang, &text)?),
                Kind::Formula => print_formula(&formula(&lang, &text)?),
            }
            Ok(true)
        }
        Command::Subst {
            kind,
            text,
            subst,
            op,
        } => {
            let lang = language(&cli.sig)?;
            let s = subst.map(|s| parse_substitution(&lang, &s)).transpose()?;
            match kind {
                Kind::Formula => {
                    let p = formula(&lang, &text)?;
                    let out = match (&s, op) {
                        (Some(s), _) => p.subst(s),
                        (None, Some(Op::Plus)) => p.plus(),
                        (None, Some(Op::Minus)) => p.minus(),
                        (None, Some(Op::Star)) => p.star(),
                        (None, Some(Op::Forall)) => Formula::forall(p),
                        (None, Some(Op::CloseOff)) => p.close_off(),
                        (None, None) => bail!("give --subst or --op"),
                    };
                    print_formula(&out);
                }
                Kind::Term => {
                    let t = parse_term(&lang, &text)?;
                    let out = match (&s, op) {
                        (Some(s), _) => t.subst(s),
                        (None, Some(Op::Plus)) => t.shift_up(),
                        (None, Some(Op::Minus)) => t.subst(&clone_logic::Substitution::minus()),
                        (None, Some(Op::Star)) => t.subst(&clone_logic::Substitution::star()),
                        (None, Some(_)) => bail!("terms support only plus, minus and star"),
                        (None, None) => bail!("give --subst or --op"),
                    };
                    print_term(&out);
                }
            }
            Ok(true)
        }
        Command::Eval {
            structure: spec,
            formula: text,
            env,
        } => {
            let sig_lang = language(&cli.sig)?;
            let d = structure(&sig_lang, &spec)?;
            let p = formula(d.language(), &text)?;
            let env: Env = parse_env(&env)?;
            env.check(d.size())?;
            let value = d.eval_formula_b(&p, &env)?;
            println!("value at {env}: {value}");
            match d.find_counter_env(&p)? {
                None => {
                    println!("valid");
                    Ok(true)
                }
                Some(counter) => {
                    println!("counterexample: {counter}");
                    Ok(false)
                }
            }
        }
        Command::Taut { term } => {
            let t = parse_prop(&term)?;
            match falsifying_assignment(&t)? {
                None => {
                    println!("TAUTOLOGY");
                    Ok(true)
                }
                Some(assignment) => {
                    let shown: Vec<String> = assignment
                        .iter()
                        .map(|(v, b)| format!("{v}={}", u8::from(*b)))
                        .collect();
                    println!("NOT A TAUTOLOGY: {}", shown.join(" "));
                    Ok(false)
                }
            }
        }
        Command::CheckProof { proof, theories } => {
            let text = read(&proof)?;
            if text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty() && !l.starts_with('#'))
                == Some("prop")
            {
                let file =
                    parse_prop_proof(&text).with_context(|| format!("in {}", proof.display()))?;
                return Ok(report_check(
                    check_prop_proof(&file.proof, &file.hypotheses).map_err(|e| e.to_string()),
                    file.proof.conclusion().map(ToString::to_string),
                ));
            }
            let lang = language(&cli.sig)?;
            let file =
                parse_proof(&lang, &text).with_context(|| format!("in {}", proof.display()))?;
            let theory = if file.theory == "Empty" && theories.is_empty() {
                Theory::new("Empty", vec![])
            } else {
                find_theory(&lang, &theories, &file.theory)?
            };
            Ok(report_check(
                check_proof(&lang, &file.proof, &theory).map_err(|e| e.to_string()),
                file.proof.conclusion().map(ToString::to_string),
            ))
        }
        Command::Axiom { spec } => {
            let lang = language(&cli.sig)?;
            let spec = parse_axiom(&lang, &spec)?;
            print_formula(&instantiate_axiom(&lang, &spec)?);
            Ok(true)
        }
        Command::Propalg { file, free, depth } => {
            let a = match (file, free) {
                (Some(path), _) => parse_algebra(&read(&path)?)
                    .with_context(|| format!("in {}", path.display()))?,
                (None, Some(g)) => {
                    let names: Vec<String> = (1..=g).map(|k| format!("a{k}")).collect();
                    let vars: Vec<&str> = names.iter().map(String::as_str).collect();
                    let frag = FreeFragment::build(&vars, depth)?;
                    println!("classes: {}", frag.class_count());
                    frag.lindenbaum()?
                }
                (None, None) => bail!("give an algebra file or --free"),
            };
            propalg_report(&a)
        }
        Command::Countermodel {
            formula: text,
            search,
        } => {
            let lang = language(&cli.sig)?;
            let p = formula(&lang, &text)?;
            let opts = SearchOptions {
                max_size: search.max_size,
                threads: search.threads,
                ..SearchOptions::default()
            };
            match countermodel_search(&lang, &p, &opts)? {
                None => {
                    println!("no countermodel up to size {}", search.max_size);
                    Ok(true)
                }
                Some(d) => {
                    let env = d
                        .find_counter_env(&p)?
                        .ok_or_else(|| anyhow!("search returned a model"))?;
                    print!("{d}");
                    println!("counterexample: {env}");
                    Ok(false)
                }
            }
        }
        Command::QaLaws {
            structure: spec,
            depth,
            rank_bound,
        } => {
            let sig_lang = language(&cli.sig)?;
            let d = structure(&sig_lang, &spec)?;
            let sample = law_sample(d.language(), depth, rank_bound);
            println!("sample: {} formulas", sample.len());
            let report = qa_law_check(&d, &sample, rank_bound)?;
            print!("{report}");
            Ok(report.passed())
        }
        Command::Soundness {
            seed,
            max_size,
            per_schema,
        } => {
            let config = SoundnessConfig {
                seed,
                max_size,
                per_schema,
                ..SoundnessConfig::default()
            };
            let report = run_soundness(&config)?;
            print!("{report}");
            Ok(report.passed())
        }
        Command::Peano {
            emit,
            structure: spec,
        } => {
            if emit {
                let lang = arithmetic_language().with_rel("P", 1);
                let p = Formula::atom("P", vec![Term::Var(1)]);
                for (k, s) in peano_core().iter().enumerate() {
                    println!("S{} {s}", k + 1);
                }
                println!("S7 {}", peano_induction(&lang, &p)?);
                return Ok(true);
            }
            let d = structure(&arithmetic_language(), &spec)?;
            let mut all = true;
            for (k, s) in peano_core().iter().enumerate() {
                match d.find_counter_env(s)? {
                    None => println!("S{} valid", k + 1),
                    Some(env) => {
                        all = false;
                        println!("S{} counterexample {env}", k + 1);
                    }
                }
            }
            Ok(all)
        }
    }
}

fn find_theory(lang: &Language, files: &[PathBuf], name: &str) -> Result<Theory> {
    for path in files {
        let t =
            parse_theory(lang, &read(path)?).with_context(|| format!("in {}", path.display()))?;
        if t.name == name {
            return Ok(t);
        }
    }
    bail!("no theory named {name} among the --theory files")
}

fn report_check(result: Result<(), String>, conclusion: Option<String>) -> bool {
    match result {
        Ok(()) => {
            println!("ACCEPTED {}", conclusion.unwrap_or_default());
            true
        }
        Err(e) => {
            println!("REJECTED {e}");
            false
        }
    }
}

/// All formulas of height `<= depth` over the non-equality predicates
/// applied to variables `x1..=x(rank_bound + 1)`, keeping rank `<= rank_bound`.
fn law_sample(lang: &Language, depth: usize, rank_bound: u32) -> Vec<Formula> {
    let vars = rank_bound + 1;
    let eq = lang.equality();
    let mut atoms = Vec::new();
    for (r, arity) in lang.predicates.iter() {
        if Some(r) == eq {
            continue;
        }
        let combos = (vars as usize).pow(arity as u32);
        for mut code in 0..combos {
            let args = (0..arity)
                .map(|_| {
                    let v = (code % vars as usize) as u32 + 1;
                    code /= vars as usize;
                    Term::Var(v)
                })
                .collect();
            atoms.push(Formula::Atom(r.clone(), args));
        }
    }
    formulas_up_to(&atoms, depth)
        .into_iter()
        .flatten()
        .filter(|p| p.rank() <= rank_bound)
        .collect()
}

fn propalg_report(a: &FinitePropAlgebra) -> Result<bool> {
    let n = a.size();
    println!("size: {n}");
    println!("boolean: {}", a.is_boolean());
    let vals = a.enumerate_valuations()?;
    println!("valuations: {}", vals.len());
    for v in &vals {
        println!("  {v}");
    }
    let filters = a.enumerate_filters()?;
    println!("filters: {}", filters.len());
    let mut ok = true;
    let mut maximal = Vec::new();
    for f in &filters {
        let above: Vec<_> = vals.iter().filter(|v| f.is_subset(v)).cloned().collect();
        let closed = clone_logic::prop::intersect_all(n, &above) == *f;
        let is_max = a.is_maximal_filter(f)?;
        ok &= closed && is_max == a.is_maximal_by_negation(f);
        if is_max {
            maximal.push(*f);
        }
        println!("  {f}{}", if is_max { " maximal" } else { "" });
    }
    let mut sorted = vals.clone();
    sorted.sort_by_key(|v| v.bits());
    maximal.sort_by_key(|v| v.bits());
    ok &= sorted == maximal;
    let valid = a.val_set()?;
    println!("valid elements: {valid}");
    if let Ok(q) = a.lindenbaum(&valid) {
        println!("lindenbaum size: {}", q.algebra.size());
    }
    println!("completeness: {}", if ok { "ok" } else { "FAILED" });
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
