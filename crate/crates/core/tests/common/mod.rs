#![allow(dead_code)]

pub mod algebras;
pub mod laws;
pub mod models;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clone_logic::proof::{check_proof, Justification, PrimeAxiom, Proof, ProofKind, Theory};
use clone_logic::prop::{check_prop_proof, PropJustification, PropProof, PropTerm};
use clone_logic::syntax::{parse_proof, parse_prop_proof, parse_signature, parse_theory};
use clone_logic::{Formula, Language, Term};

pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

pub struct PredicateCase {
    pub name: String,
    pub theory: Theory,
    pub proof: Proof,
}

pub struct PropCase {
    pub name: String,
    pub hypotheses: Vec<PropTerm>,
    pub proof: PropProof,
}

pub struct Corpus {
    pub lang: Language,
    pub predicate: Vec<PredicateCase>,
    pub prop: Vec<PropCase>,
}

fn sorted_files(ext: &str) -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = fs::read_dir(corpus_dir())
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == ext))
        .collect();
    out.sort();
    out
}

fn stem(p: &Path) -> String {
    p.file_stem().unwrap().to_string_lossy().into_owned()
}

pub fn load_corpus() -> Corpus {
    let dir = corpus_dir();
    let lang = parse_signature(&fs::read_to_string(dir.join("lang.sig")).unwrap()).unwrap();
    let theories: BTreeMap<String, Theory> = sorted_files("thy")
        .iter()
        .map(|p| {
            let t = parse_theory(&lang, &fs::read_to_string(p).unwrap()).unwrap();
            (t.name.clone(), t)
        })
        .collect();
    let predicate = sorted_files("proof")
        .iter()
        .map(|p| {
            let file = parse_proof(&lang, &fs::read_to_string(p).unwrap())
                .unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            PredicateCase {
                name: stem(p),
                theory: theories[&file.theory].clone(),
                proof: file.proof,
            }
        })
        .collect();
    let prop = sorted_files("pproof")
        .iter()
        .map(|p| {
            let file = parse_prop_proof(&fs::read_to_string(p).unwrap())
                .unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            PropCase {
                name: stem(p),
                hypotheses: file.hypotheses,
                proof: file.proof,
            }
        })
        .collect();
    Corpus {
        lang,
        predicate,
        prop,
    }
}

pub struct Mutant<P> {
    pub label: String,
    pub proof: P,
}

fn negate_param(prime: &PrimeAxiom) -> PrimeAxiom {
    let mut m = prime.clone();
    match &mut m {
        PrimeAxiom::A1 { p }
        | PrimeAxiom::A2 { p, .. }
        | PrimeAxiom::A3 { p, .. }
        | PrimeAxiom::A4 { p, .. }
        | PrimeAxiom::A5 { p, .. }
        | PrimeAxiom::A6 { p }
        | PrimeAxiom::A8 { p, .. } => *p = Formula::not(p.clone()),
        PrimeAxiom::A7 { index } => *index += 1,
    }
    m
}

/// Every single-node mutation of a predicate proof: each stored formula
/// negated or quantified, each reference redirected to the step itself or a
/// different hypothesis, modus ponens premises swapped, axiom parameters
/// and generalization counts changed, substitutions extended by a constant,
/// and global proofs using Subst or Gen retagged local.
pub fn predicate_mutants(lang: &Language, case: &PredicateCase) -> Vec<Mutant<Proof>> {
    let mut out = Vec::new();
    let base = &case.proof;
    let c = lang
        .functions
        .iter()
        .find(|(_, a)| *a == 0)
        .map(|(s, _)| Term::App(s.clone(), vec![]));
    for (i, step) in base.steps.iter().enumerate() {
        let mut push = |label: String, f: &dyn Fn(&mut Proof)| {
            let mut p = base.clone();
            f(&mut p);
            out.push(Mutant {
                label: format!("{} step {}: {label}", case.name, i + 1),
                proof: p,
            });
        };
        push("negated formula".into(), &|p| {
            p.steps[i].formula = Formula::not(p.steps[i].formula.clone())
        });
        push("quantified formula".into(), &|p| {
            p.steps[i].formula = Formula::forall(p.steps[i].formula.clone())
        });
        match &step.justification {
            Justification::Axiom(spec) => {
                push("axiom parameter".into(), &|p| {
                    let mut s = spec.clone();
                    s.prime = negate_param(&spec.prime);
                    p.steps[i].justification = Justification::Axiom(s);
                });
                push("generalization count".into(), &|p| {
                    let mut s = spec.clone();
                    s.generalize += 1;
                    p.steps[i].justification = Justification::Axiom(s);
                });
            }
            Justification::Hypothesis(k) => {
                let other = if case.theory.formulas.len() > 1 {
                    (k + 1) % case.theory.formulas.len()
                } else {
                    k + 1
                };
                push("hypothesis index".into(), &|p| {
                    p.steps[i].justification = Justification::Hypothesis(other)
                });
            }
            Justification::ModusPonens(j, k) => {
                let (j, k) = (*j, *k);
                push("premises swapped".into(), &|p| {
                    p.steps[i].justification = Justification::ModusPonens(k, j)
                });
                push("forward premise".into(), &|p| {
                    p.steps[i].justification = Justification::ModusPonens(i, k)
                });
            }
            Justification::Subst(j, s) => {
                let j = *j;
                push("forward source".into(), &|p| {
                    p.steps[i].justification = Justification::Subst(i, s.clone())
                });
                if let Some(c) = &c {
                    let src = &base.steps[j].formula;
                    let changed = clone_logic::Substitution::cons(c.clone()).compose(s);
                    if src.subst(&changed) != src.subst(s) {
                        push("substitution".into(), &|p| {
                            p.steps[i].justification = Justification::Subst(j, changed.clone())
                        });
                    }
                }
            }
            Justification::Gen(_) => {
                push("forward source".into(), &|p| {
                    p.steps[i].justification = Justification::Gen(i)
                });
            }
        }
    }
    let uses_global_rules = base.steps.iter().any(|s| {
        matches!(
            s.justification,
            Justification::Subst(..) | Justification::Gen(_)
        )
    });
    if base.kind == ProofKind::Global && uses_global_rules {
        let mut p = base.clone();
        p.kind = ProofKind::Local;
        out.push(Mutant {
            label: format!("{} retagged local", case.name),
            proof: p,
        });
    }
    out
}

fn negate_prop_param(j: &PropJustification) -> PropJustification {
    match j {
        PropJustification::AxiomA1(p) => PropJustification::AxiomA1(PropTerm::not(p.clone())),
        PropJustification::AxiomA2(p, q) => {
            PropJustification::AxiomA2(PropTerm::not(p.clone()), q.clone())
        }
        PropJustification::AxiomA3(p, q, r) => {
            PropJustification::AxiomA3(PropTerm::not(p.clone()), q.clone(), r.clone())
        }
        other => other.clone(),
    }
}

/// Single-node mutations of a propositional proof.
pub fn prop_mutants(case: &PropCase) -> Vec<Mutant<PropProof>> {
    let mut out = Vec::new();
    let base = &case.proof;
    for (i, step) in base.steps.iter().enumerate() {
        let mut push = |label: &str, f: &dyn Fn(&mut PropProof)| {
            let mut p = base.clone();
            f(&mut p);
            out.push(Mutant {
                label: format!("{} step {}: {label}", case.name, i + 1),
                proof: p,
            });
        };
        push("negated formula", &|p| {
            p.steps[i].formula = PropTerm::not(p.steps[i].formula.clone())
        });
        push("conjoined formula", &|p| {
            let t = p.steps[i].formula.clone();
            p.steps[i].formula = PropTerm::and(t.clone(), t)
        });
        match &step.justification {
            PropJustification::Hypothesis(k) => {
                let k = *k;
                push("hypothesis index", &|p| {
                    p.steps[i].justification = PropJustification::Hypothesis(k + 1)
                });
            }
            PropJustification::ModusPonens(j, k) => {
                let (j, k) = (*j, *k);
                push("premises swapped", &|p| {
                    p.steps[i].justification = PropJustification::ModusPonens(k, j)
                });
                push("forward premise", &|p| {
                    p.steps[i].justification = PropJustification::ModusPonens(j, i)
                });
            }
            axiom => {
                push("axiom parameter", &|p| {
                    p.steps[i].justification = negate_prop_param(axiom)
                });
            }
        }
    }
    out
}

pub fn check_predicate(lang: &Language, case: &PredicateCase, proof: &Proof) -> bool {
    check_proof(lang, proof, &case.theory).is_ok()
}

pub fn check_prop(case: &PropCase, proof: &PropProof) -> bool {
    check_prop_proof(proof, &case.hypotheses).is_ok()
}
