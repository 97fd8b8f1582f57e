//! Line-oriented file formats: signatures, theories, proofs, finite
//! proposition algebras and finite structures. `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::formula::{Formula, FormulaError, Language};
use crate::proof::{AxiomSpec, Justification, PrimeAxiom, Proof, ProofKind, Step, Theory};
use crate::prop::{FinitePropAlgebra, PropJustification, PropProof, PropStep, PropTerm};
use crate::semantics::{FiniteBooleanAlg, Structure};
use crate::terms::Substitution;

use super::lexer::{ParseError, Tok};
use super::parse::Parser;

/// Non-blank lines with comments removed, paired with 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        (!l.trim().is_empty()).then_some((i + 1, l))
    })
}

fn at(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::new(line, 1, message)
}

fn from_formula_error(line: usize) -> impl Fn(FormulaError) -> ParseError {
    move |e| at(line, e.to_string())
}

/// `fn name/arity` and `rel name/arity [equality]` lines.
pub fn parse_signature(text: &str) -> Result<Language, ParseError> {
    let mut lang = Language::default();
    for (n, l) in lines(text) {
        let mut p = Parser::new(l, n, 1, None)?;
        let kind = p.word()?;
        let (line, col) = p.here();
        let name = p.word()?;
        p.expect(Tok::Slash)?;
        let arity: usize = p.number()?;
        let equality = p.is_keyword("equality");
        if equality {
            p.keyword("equality")?;
        }
        p.finish()?;
        if lang.functions.contains(&name) || lang.predicates.arity(&name).is_some() {
            return Err(ParseError::new(
                line,
                col,
                format!("`{name}` is declared twice"),
            ));
        }
        let res = match (kind.as_str(), equality) {
            ("fn", false) => lang
                .functions
                .declare(&name, arity)
                .map(|_| ())
                .map_err(FormulaError::from),
            ("rel", false) => lang.predicates.declare(&name, arity).map(|_| ()),
            ("rel", true) if arity == 2 => lang.predicates.declare_equality(&name).map(|_| ()),
            ("rel", true) => Err(FormulaError::EqualityArity(name.as_str().into())),
            _ => return Err(at(n, format!("expected `fn` or `rel`, found `{kind}`"))),
        };
        res.map_err(|e| ParseError::new(line, col, e.to_string()))?;
    }
    Language::new(lang.functions, lang.predicates).map_err(from_formula_error(1))
}

/// The signature file for a language.
pub fn write_signature(lang: &Language) -> String {
    let mut out = String::new();
    for (name, arity) in lang.functions.iter() {
        writeln!(out, "fn {name}/{arity}").unwrap();
    }
    for (name, arity) in lang.predicates.iter() {
        if Some(name) == lang.equality() {
            writeln!(out, "rel {name}/{arity} equality").unwrap();
        } else {
            writeln!(out, "rel {name}/{arity}").unwrap();
        }
    }
    out
}

/// `theory NAME`, then one formula per line.
pub fn parse_theory(lang: &Language, text: &str) -> Result<Theory, ParseError> {
    let mut it = lines(text);
    let name = match it.next() {
        Some((n, l)) => {
            let mut p = Parser::new(l, n, 1, None)?;
            p.keyword("theory")?;
            let name = p.word()?;
            p.finish()?;
            name
        }
        None => return Err(at(1, "expected `theory NAME`")),
    };
    let mut formulas = Vec::new();
    for (n, l) in it {
        let mut p = Parser::new(l, n, 1, Some(lang))?;
        formulas.push(p.formula()?);
        p.finish()?;
    }
    Ok(Theory::new(&name, formulas))
}

pub fn write_theory(theory: &Theory) -> String {
    let mut out = format!("theory {}\n", theory.name);
    for f in &theory.formulas {
        writeln!(out, "{f}").unwrap();
    }
    out
}

/// A proof together with the name of the theory it refers to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofFile {
    pub theory: String,
    pub proof: Proof,
}

/// Reads `i.` and checks it is the expected 1-based step number.
fn step_number(p: &mut Parser, expected: usize) -> Result<(), ParseError> {
    let (line, col) = p.here();
    let k: usize = p.number()?;
    if k != expected {
        return Err(ParseError::new(
            line,
            col,
            format!("expected step {expected}, found {k}"),
        ));
    }
    p.expect(Tok::Dot)
}

/// A 1-based reference, returned 0-based.
fn reference(p: &mut Parser) -> Result<usize, ParseError> {
    let (line, col) = p.here();
    let k: usize = p.number()?;
    k.checked_sub(1)
        .ok_or_else(|| ParseError::new(line, col, "references are numbered from 1"))
}

enum Param {
    Formula(Formula),
    Subst(Substitution),
    Number(u64),
}

fn axiom_spec(p: &mut Parser) -> Result<AxiomSpec, ParseError> {
    let (line, col) = p.here();
    let id = p.word()?;
    let mut params: BTreeMap<String, Param> = BTreeMap::new();
    p.expect(Tok::LParen)?;
    if !p.eat(&Tok::RParen) {
        loop {
            let (pl, pc) = p.here();
            let name = p.word()?;
            p.expect(Tok::Eq)?;
            let value = match name.as_str() {
                "p" | "q" | "r" => Param::Formula(p.formula()?),
                "subst" => Param::Subst(p.substitution()?),
                "i" | "n" => Param::Number(p.number()?),
                _ => {
                    return Err(ParseError::new(
                        pl,
                        pc,
                        format!("unknown parameter `{name}`"),
                    ))
                }
            };
            if params.insert(name.clone(), value).is_some() {
                return Err(ParseError::new(
                    pl,
                    pc,
                    format!("parameter `{name}` given twice"),
                ));
            }
            if p.eat(&Tok::RParen) {
                break;
            }
            p.expect(Tok::Comma)?;
        }
    }
    let err = |m: String| ParseError::new(line, col, m);
    let generalize = match params.remove("n") {
        Some(Param::Number(n)) => n as usize,
        _ => 0,
    };
    let mut formula = |k: &str| match params.remove(k) {
        Some(Param::Formula(f)) => Ok(f),
        _ => Err(err(format!("{id} needs parameter {k}"))),
    };
    let prime = match id.as_str() {
        "A1" => PrimeAxiom::A1 { p: formula("p")? },
        "A2" => PrimeAxiom::A2 {
            p: formula("p")?,
            q: formula("q")?,
        },
        "A3" => PrimeAxiom::A3 {
            p: formula("p")?,
            q: formula("q")?,
            r: formula("r")?,
        },
        "A4" => PrimeAxiom::A4 {
            p: formula("p")?,
            q: formula("q")?,
        },
        "A6" => PrimeAxiom::A6 { p: formula("p")? },
        "A5" | "A8" => {
            let p = formula("p")?;
            let subst = match params.remove("subst") {
                Some(Param::Subst(s)) => s,
                _ => return Err(err(format!("{id} needs parameter subst"))),
            };
            if id == "A5" {
                PrimeAxiom::A5 { p, subst }
            } else {
                PrimeAxiom::A8 { p, subst }
            }
        }
        "A7" => match params.remove("i") {
            Some(Param::Number(i)) if i >= 1 && i <= u32::MAX as u64 => {
                PrimeAxiom::A7 { index: i as u32 }
            }
            _ => return Err(err("A7 needs parameter i >= 1".into())),
        },
        _ => return Err(err(format!("unknown axiom `{id}`"))),
    };
    if let Some(extra) = params.keys().next() {
        return Err(err(format!("{id} takes no parameter {extra}")));
    }
    Ok(AxiomSpec { prime, generalize })
}

/// An axiom specification such as `A5(p=P(x1), subst=[c ; shift 0], n=1)`.
pub fn parse_axiom(lang: &Language, text: &str) -> Result<AxiomSpec, ParseError> {
    let mut p = Parser::new(text, 1, 1, Some(lang))?;
    let spec = axiom_spec(&mut p)?;
    p.finish()?;
    Ok(spec)
}

/// Header `local` or `global`, then `theory NAME`, then numbered steps
/// `i. <formula> BY <justification>`.
pub fn parse_proof(lang: &Language, text: &str) -> Result<ProofFile, ParseError> {
    let mut it = lines(text);
    let kind = match it.next() {
        Some((n, l)) => match l.trim() {
            "local" => ProofKind::Local,
            "global" => ProofKind::Global,
            other => {
                return Err(at(
                    n,
                    format!("expected `local` or `global`, found `{other}`"),
                ))
            }
        },
        None => return Err(at(1, "empty proof file")),
    };
    let theory = match it.next() {
        Some((n, l)) => {
            let mut p = Parser::new(l, n, 1, None)?;
            p.keyword("theory")?;
            let name = p.word()?;
            p.finish()?;
            name
        }
        None => return Err(at(2, "expected `theory NAME`")),
    };
    let mut steps = Vec::new();
    for (n, l) in it {
        let mut p = Parser::new(l, n, 1, Some(lang))?;
        step_number(&mut p, steps.len() + 1)?;
        let formula = p.formula()?;
        p.keyword("BY")?;
        let (jl, jc) = p.here();
        let justification = match p.word()?.as_str() {
            "axiom" => Justification::Axiom(axiom_spec(&mut p)?),
            "hyp" => Justification::Hypothesis(reference(&mut p)?),
            "mp" => {
                let j = reference(&mut p)?;
                Justification::ModusPonens(j, reference(&mut p)?)
            }
            "subst" => {
                let j = reference(&mut p)?;
                Justification::Subst(j, p.substitution()?)
            }
            "gen" => Justification::Gen(reference(&mut p)?),
            other => {
                return Err(ParseError::new(
                    jl,
                    jc,
                    format!("unknown justification `{other}`"),
                ));
            }
        };
        p.finish()?;
        steps.push(Step::new(formula, justification));
    }
    Ok(ProofFile {
        theory,
        proof: Proof::new(kind, steps),
    })
}

pub fn write_proof(file: &ProofFile) -> String {
    let mut out = format!("{}\ntheory {}\n", file.proof.kind, file.theory);
    for (i, step) in file.proof.steps.iter().enumerate() {
        let just = match &step.justification {
            Justification::Axiom(spec) => format!("axiom {spec}"),
            Justification::Hypothesis(k) => format!("hyp {}", k + 1),
            Justification::ModusPonens(j, k) => format!("mp {} {}", j + 1, k + 1),
            Justification::Subst(j, s) => format!("subst {} {s}", j + 1),
            Justification::Gen(j) => format!("gen {}", j + 1),
        };
        writeln!(out, "{}. {} BY {just}", i + 1, step.formula).unwrap();
    }
    out
}

/// A propositional proof with its hypotheses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropProofFile {
    pub hypotheses: Vec<PropTerm>,
    pub proof: PropProof,
}

/// Header `prop`, then `hyp <term>` lines, then numbered steps
/// `i. <term> BY A1(p=...) | A2(p=..., q=...) | A3(p=..., q=..., r=...) | hyp k | mp j k`.
pub fn parse_prop_proof(text: &str) -> Result<PropProofFile, ParseError> {
    let mut it = lines(text).peekable();
    match it.next() {
        Some((_, l)) if l.trim() == "prop" => {}
        Some((n, l)) => return Err(at(n, format!("expected `prop`, found `{}`", l.trim()))),
        None => return Err(at(1, "empty proof file")),
    }
    let mut hypotheses = Vec::new();
    let mut steps = Vec::new();
    for (n, l) in it {
        let mut p = Parser::new(l, n, 1, None)?;
        if p.is_keyword("hyp") {
            if !steps.is_empty() {
                return Err(p.error("hypotheses must precede the steps"));
            }
            p.keyword("hyp")?;
            hypotheses.push(p.prop()?);
            p.finish()?;
            continue;
        }
        step_number(&mut p, steps.len() + 1)?;
        let formula = p.prop()?;
        p.keyword("BY")?;
        let (jl, jc) = p.here();
        let word = p.word()?;
        let justification = match word.as_str() {
            "hyp" => PropJustification::Hypothesis(reference(&mut p)?),
            "mp" => {
                let j = reference(&mut p)?;
                PropJustification::ModusPonens(j, reference(&mut p)?)
            }
            "A1" | "A2" | "A3" => {
                let mut params: BTreeMap<String, PropTerm> = BTreeMap::new();
                p.expect(Tok::LParen)?;
                loop {
                    let (pl, pc) = p.here();
                    let name = p.word()?;
                    if !matches!(name.as_str(), "p" | "q" | "r") {
                        return Err(ParseError::new(
                            pl,
                            pc,
                            format!("unknown parameter `{name}`"),
                        ));
                    }
                    p.expect(Tok::Eq)?;
                    if params.insert(name.clone(), p.prop()?).is_some() {
                        return Err(ParseError::new(
                            pl,
                            pc,
                            format!("parameter `{name}` given twice"),
                        ));
                    }
                    if p.eat(&Tok::RParen) {
                        break;
                    }
                    p.expect(Tok::Comma)?;
                }
                let need: &[&str] = match word.as_str() {
                    "A1" => &["p"],
                    "A2" => &["p", "q"],
                    _ => &["p", "q", "r"],
                };
                if params.len() != need.len() || need.iter().any(|k| !params.contains_key(*k)) {
                    return Err(ParseError::new(
                        jl,
                        jc,
                        format!("{word} takes parameters {}", need.join(", ")),
                    ));
                }
                let mut get = |k: &str| params.remove(k).expect("checked");
                match word.as_str() {
                    "A1" => PropJustification::AxiomA1(get("p")),
                    "A2" => PropJustification::AxiomA2(get("p"), get("q")),
                    _ => PropJustification::AxiomA3(get("p"), get("q"), get("r")),
                }
            }
            other => {
                return Err(ParseError::new(
                    jl,
                    jc,
                    format!("unknown justification `{other}`"),
                ));
            }
        };
        p.finish()?;
        steps.push(PropStep {
            formula,
            justification,
        });
    }
    Ok(PropProofFile {
        hypotheses,
        proof: PropProof { steps },
    })
}

pub fn write_prop_proof(file: &PropProofFile) -> String {
    let mut out = String::from("prop\n");
    for h in &file.hypotheses {
        writeln!(out, "hyp {h}").unwrap();
    }
    for (i, step) in file.proof.steps.iter().enumerate() {
        let just = match &step.justification {
            PropJustification::AxiomA1(p) => format!("A1(p={p})"),
            PropJustification::AxiomA2(p, q) => format!("A2(p={p}, q={q})"),
            PropJustification::AxiomA3(p, q, r) => format!("A3(p={p}, q={q}, r={r})"),
            PropJustification::Hypothesis(k) => format!("hyp {}", k + 1),
            PropJustification::ModusPonens(j, k) => format!("mp {} {}", j + 1, k + 1),
        };
        writeln!(out, "{}. {} BY {just}", i + 1, step.formula).unwrap();
    }
    out
}

fn numbers(p: &mut Parser) -> Result<Vec<u64>, ParseError> {
    let mut out = Vec::new();
    while !p.at_end() {
        out.push(p.number()?);
    }
    Ok(out)
}

/// First line `n`, then `not: v0 ... v(n-1)`, then `and i: v0 ... v(n-1)` for each `i`.
pub fn parse_algebra(text: &str) -> Result<FinitePropAlgebra, ParseError> {
    let mut it = lines(text);
    let (n_line, size) = match it.next() {
        Some((n, l)) => {
            let mut p = Parser::new(l, n, 1, None)?;
            let size: usize = p.number()?;
            p.finish()?;
            (n, size)
        }
        None => return Err(at(1, "empty algebra file")),
    };
    let mut not_table = None;
    let mut rows: Vec<Option<Vec<usize>>> = vec![None; size];
    for (n, l) in it {
        let mut p = Parser::new(l, n, 1, None)?;
        let head = p.word()?;
        let row = if head == "and" {
            let (rl, rc) = p.here();
            let i: usize = p.number()?;
            if i >= size {
                return Err(ParseError::new(rl, rc, format!("row {i} out of range")));
            }
            Some((i, rl, rc))
        } else if head == "not" {
            None
        } else {
            return Err(at(n, format!("expected `not` or `and`, found `{head}`")));
        };
        p.expect(Tok::Colon)?;
        let values: Vec<usize> = numbers(&mut p)?.into_iter().map(|v| v as usize).collect();
        if values.len() != size {
            return Err(at(
                n,
                format!("expected {size} entries, found {}", values.len()),
            ));
        }
        match row {
            Some((i, rl, rc)) => {
                if rows[i].replace(values).is_some() {
                    return Err(ParseError::new(rl, rc, format!("row {i} given twice")));
                }
            }
            None => {
                if not_table.replace(values).is_some() {
                    return Err(at(n, "`not` given twice"));
                }
            }
        }
    }
    let not_table = not_table.ok_or_else(|| at(n_line, "missing `not` line"))?;
    let mut and_table = Vec::with_capacity(size * size);
    for (i, r) in rows.into_iter().enumerate() {
        and_table.extend(r.ok_or_else(|| at(n_line, format!("missing row `and {i}`")))?);
    }
    FinitePropAlgebra::new(size, and_table, not_table).map_err(|e| at(n_line, e.to_string()))
}

/// `zmodM` for `M >= 1`.
pub fn builtin_structure(name: &str) -> Option<Structure> {
    let m: u32 = name.strip_prefix("zmod")?.parse().ok()?;
    Structure::zmod(m).ok()
}

/// `domain n`, optional `boolean k`, `fn f: ...` and `rel r: ...` rows,
/// and `equality identity` or `equality table`. Omitted tables are zero.
pub fn parse_structure(lang: &Language, text: &str) -> Result<Structure, ParseError> {
    let mut it = lines(text);
    let (dn, size) = match it.next() {
        Some((n, l)) => {
            let mut p = Parser::new(l, n, 1, None)?;
            p.keyword("domain")?;
            let size: u32 = p.number()?;
            p.finish()?;
            (n, size)
        }
        None => return Err(at(1, "expected `domain n`")),
    };
    let mut d = Structure::new(lang.clone(), size).map_err(|e| at(dn, e.to_string()))?;
    let mut fns = Vec::new();
    let mut rels = Vec::new();
    let mut boolean = None;
    let mut identity = lang.equality().is_some();
    for (n, l) in it {
        let mut p = Parser::new(l, n, 1, None)?;
        match p.word()?.as_str() {
            "boolean" => {
                let k: u32 = p.number()?;
                p.finish()?;
                boolean = Some((
                    n,
                    FiniteBooleanAlg::new(k).map_err(|e| at(n, e.to_string()))?,
                ));
            }
            "equality" => {
                identity = match p.word()?.as_str() {
                    "identity" => true,
                    "table" => false,
                    other => {
                        return Err(at(
                            n,
                            format!("expected `identity` or `table`, found `{other}`"),
                        ))
                    }
                };
                p.finish()?;
                if lang.equality().is_none() {
                    return Err(at(n, "the language has no equality symbol"));
                }
            }
            kind @ ("fn" | "rel") => {
                let name = p.word()?;
                p.expect(Tok::Colon)?;
                let values = numbers(&mut p)?;
                if kind == "fn" {
                    fns.push((n, name, values));
                } else {
                    rels.push((n, name, values));
                }
            }
            other => return Err(at(n, format!("unexpected `{other}`"))),
        }
    }
    if let Some((n, b)) = boolean {
        d.set_boolean(b).map_err(|e| at(n, e.to_string()))?;
    }
    d.set_identity_equality(identity);
    for (n, name, values) in fns {
        let values = values
            .into_iter()
            .map(|v| u32::try_from(v).map_err(|_| at(n, format!("value {v} out of range"))))
            .collect::<Result<Vec<_>, _>>()?;
        d.set_fn(&name, values).map_err(|e| at(n, e.to_string()))?;
    }
    for (n, name, values) in rels {
        d.set_rel(&name, values).map_err(|e| at(n, e.to_string()))?;
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::check_proof;

    const SIG: &str = "# demo\nfn f/1\nfn c/0\nrel P/1\nrel e/2 equality\n";

    #[test]
    fn signature_round_trip() {
        let lang = parse_signature(SIG).unwrap();
        assert_eq!(lang.functions.arity("f"), Some(1));
        assert_eq!(lang.equality().map(|s| &**s), Some("e"));
        assert_eq!(parse_signature(&write_signature(&lang)).unwrap(), lang);
        let err = parse_signature("fn f/1\nrel f/1\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(parse_signature("rel e/3 equality").is_err());
    }

    #[test]
    fn proof_round_trip() {
        let lang = parse_signature(SIG).unwrap();
        let theory = parse_theory(&lang, "theory T\nP(x1)\n").unwrap();
        let text = "global\ntheory T\n\
            1. P(x1) BY hyp 1\n\
            2. forall P(x1) BY gen 1\n\
            3. (forall P(x1) -> P(c)) BY axiom A5(p=P(x1), subst=[c ; shift 0])\n\
            4. P(c) BY mp 2 3\n";
        let file = parse_proof(&lang, text).unwrap();
        assert_eq!(file.theory, "T");
        assert!(check_proof(&lang, &file.proof, &theory).is_ok());
        assert_eq!(write_proof(&file), text);
        let bad = parse_proof(&lang, "global\ntheory T\n2. P(x1) BY hyp 1\n").unwrap_err();
        assert_eq!((bad.line, bad.col), (3, 1));
    }

    #[test]
    fn prop_proof_round_trip() {
        let text =
            "prop\nhyp a\n1. a BY hyp 1\n2. (a -> (a & a)) BY A1(p=a)\n3. (a & a) BY mp 1 2\n";
        let file = parse_prop_proof(text).unwrap();
        assert_eq!(file.hypotheses.len(), 1);
        assert!(crate::prop::check_prop_proof(&file.proof, &file.hypotheses).is_ok());
        assert_eq!(write_prop_proof(&file), text);
    }

    #[test]
    fn algebra_round_trip() {
        let two = FinitePropAlgebra::two();
        let text = two.to_string();
        assert_eq!(text, "2\nnot: 1 0\nand 0: 0 0\nand 1: 0 1\n");
        assert_eq!(parse_algebra(&text).unwrap(), two);
        assert!(parse_algebra("2\nnot: 1 0\nand 0: 0 0\n").is_err());
    }

    #[test]
    fn structure_round_trip() {
        let d = builtin_structure("zmod3").unwrap();
        let back = parse_structure(d.language(), &d.to_string()).unwrap();
        assert_eq!(back, d);
        let lang = parse_signature(SIG).unwrap();
        let text = "domain 2\nboolean 2\nfn f: 1 0\nrel P: 3 1\nrel e: 3 0 0 3\nequality table\n";
        let s = parse_structure(&lang, text).unwrap();
        assert!(!s.identity_equality());
        assert_eq!(parse_structure(&lang, &s.to_string()).unwrap(), s);
        assert!(parse_structure(&lang, "domain 2\nrel P: 4 0\n").is_err());
        assert!(builtin_structure("zmod0").is_none());
    }
}
