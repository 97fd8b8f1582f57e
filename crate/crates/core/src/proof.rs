//! Axioms A1–A8 and checkers for local and global proofs.
//!
//! Proofs are certificates: every axiom step carries its parameters and every
//! rule step names the steps it uses. The checker rebuilds the expected formula
//! and compares it structurally with the stored one.

use std::fmt;

use thiserror::Error;

use crate::formula::{Formula, FormulaError, Language};
use crate::terms::Substitution;

/// Prime axiom schemata with their parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeAxiom {
    /// `p -> (p & p)`
    A1 { p: Formula },
    /// `(p & q) -> p`
    A2 { p: Formula, q: Formula },
    /// `(p -> q) -> (~(q & r) -> ~(r & p))`
    A3 { p: Formula, q: Formula, r: Formula },
    /// `forall (p -> q) -> (forall p -> forall q)`
    A4 { p: Formula, q: Formula },
    /// `(forall p)[a2, a3, ...] -> p[a1, a2, ...]`
    A5 { p: Formula, subst: Substitution },
    /// `p -> forall (p+)`
    A6 { p: Formula },
    /// `e(xi, xi)`
    A7 { index: u32 },
    /// `(e[a1, a2] & p[a1, a2, ...]) -> p[a2, a2, a3, ...]`
    A8 { p: Formula, subst: Substitution },
}

impl PrimeAxiom {
    pub fn id(&self) -> &'static str {
        match self {
            PrimeAxiom::A1 { .. } => "A1",
            PrimeAxiom::A2 { .. } => "A2",
            PrimeAxiom::A3 { .. } => "A3",
            PrimeAxiom::A4 { .. } => "A4",
            PrimeAxiom::A5 { .. } => "A5",
            PrimeAxiom::A6 { .. } => "A6",
            PrimeAxiom::A7 { .. } => "A7",
            PrimeAxiom::A8 { .. } => "A8",
        }
    }

    pub fn needs_equality(&self) -> bool {
        matches!(self, PrimeAxiom::A7 { .. } | PrimeAxiom::A8 { .. })
    }
}

/// An axiom `forall^n (prime)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSpec {
    pub prime: PrimeAxiom,
    pub generalize: usize,
}

impl AxiomSpec {
    pub fn prime(prime: PrimeAxiom) -> Self {
        AxiomSpec {
            prime,
            generalize: 0,
        }
    }

    pub fn generalized(prime: PrimeAxiom, n: usize) -> Self {
        AxiomSpec {
            prime,
            generalize: n,
        }
    }
}

impl fmt::Display for AxiomSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.prime.id())?;
        let mut params: Vec<String> = match &self.prime {
            PrimeAxiom::A1 { p } | PrimeAxiom::A6 { p } => vec![format!("p={p}")],
            PrimeAxiom::A2 { p, q } | PrimeAxiom::A4 { p, q } => {
                vec![format!("p={p}"), format!("q={q}")]
            }
            PrimeAxiom::A3 { p, q, r } => {
                vec![format!("p={p}"), format!("q={q}"), format!("r={r}")]
            }
            PrimeAxiom::A5 { p, subst } | PrimeAxiom::A8 { p, subst } => {
                vec![format!("p={p}"), format!("subst={subst}")]
            }
            PrimeAxiom::A7 { index } => vec![format!("i={index}")],
        };
        if self.generalize > 0 {
            params.push(format!("n={}", self.generalize));
        }
        write!(f, "{})", params.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomError {
    #[error("{0} requires a language with equality")]
    NoEquality(&'static str),
    #[error("A7 index must be at least 1")]
    ZeroIndex,
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

/// Builds the prime instance, ignoring `generalize`.
pub fn instantiate_prime_axiom(lang: &Language, prime: &PrimeAxiom) -> Result<Formula, AxiomError> {
    let equality = || {
        lang.equality_atom()
            .map_err(|_| AxiomError::NoEquality(prime.id()))
    };
    let check = |p: &Formula| lang.check(p).map_err(AxiomError::from);
    Ok(match prime {
        PrimeAxiom::A1 { p } => {
            check(p)?;
            Formula::imp(p.clone(), Formula::and(p.clone(), p.clone()))
        }
        PrimeAxiom::A2 { p, q } => {
            check(p)?;
            check(q)?;
            Formula::imp(Formula::and(p.clone(), q.clone()), p.clone())
        }
        PrimeAxiom::A3 { p, q, r } => {
            check(p)?;
            check(q)?;
            check(r)?;
            Formula::imp(
                Formula::imp(p.clone(), q.clone()),
                Formula::imp(
                    Formula::not(Formula::and(q.clone(), r.clone())),
                    Formula::not(Formula::and(r.clone(), p.clone())),
                ),
            )
        }
        PrimeAxiom::A4 { p, q } => {
            check(p)?;
            check(q)?;
            Formula::imp(
                Formula::forall(Formula::imp(p.clone(), q.clone())),
                Formula::imp(Formula::forall(p.clone()), Formula::forall(q.clone())),
            )
        }
        PrimeAxiom::A5 { p, subst } => {
            check(p)?;
            lang.functions
                .check_subst(subst)
                .map_err(FormulaError::from)?;
            Formula::imp(
                Formula::forall(p.clone()).subst(&subst.drop_first()),
                p.subst(subst),
            )
        }
        PrimeAxiom::A6 { p } => {
            check(p)?;
            Formula::imp(p.clone(), Formula::forall(p.plus()))
        }
        PrimeAxiom::A7 { index } => {
            let e = equality()?;
            if *index == 0 {
                return Err(AxiomError::ZeroIndex);
            }
            let xi = crate::terms::Term::var(*index);
            e.subst(&Substitution::from_list(vec![xi.clone(), xi]).expect("nonempty"))
        }
        PrimeAxiom::A8 { p, subst } => {
            let e = equality()?;
            check(p)?;
            lang.functions
                .check_subst(subst)
                .map_err(FormulaError::from)?;
            Formula::imp(
                Formula::and(e.subst(subst), p.subst(subst)),
                p.subst(&subst.dup_second()),
            )
        }
    })
}

/// `forall^n` applied to the prime instance.
pub fn instantiate_axiom(lang: &Language, spec: &AxiomSpec) -> Result<Formula, AxiomError> {
    Ok(Formula::forall_n(
        instantiate_prime_axiom(lang, &spec.prime)?,
        spec.generalize,
    ))
}

/// A named, ordered list of formulas.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Theory {
    pub name: String,
    pub formulas: Vec<Formula>,
}

impl Theory {
    pub fn new(name: &str, formulas: Vec<Formula>) -> Self {
        Theory {
            name: name.to_string(),
            formulas,
        }
    }

    pub fn check(&self, lang: &Language) -> Result<(), FormulaError> {
        self.formulas.iter().try_for_each(|p| lang.check(p))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProofKind {
    Local,
    Global,
}

impl fmt::Display for ProofKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProofKind::Local => "local",
            ProofKind::Global => "global",
        })
    }
}

/// Step indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    Axiom(AxiomSpec),
    Hypothesis(usize),
    /// `ModusPonens(j, k)`: step `k` is `p_j -> p_i`.
    ModusPonens(usize, usize),
    Subst(usize, Substitution),
    Gen(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub formula: Formula,
    pub justification: Justification,
}

impl Step {
    pub fn new(formula: Formula, justification: Justification) -> Self {
        Step {
            formula,
            justification,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proof {
    pub kind: ProofKind,
    pub steps: Vec<Step>,
}

impl Proof {
    pub fn new(kind: ProofKind, steps: Vec<Step>) -> Self {
        Proof { kind, steps }
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.steps.last().map(|s| &s.formula)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {}: {reason}", step + 1)]
pub struct ProofError {
    /// 0-based; displayed 1-based.
    pub step: usize,
    pub reason: String,
}

/// Checks every step; `Ok` means the conclusion is provable from `theory`
/// in the sense of the proof's kind.
pub fn check_proof(lang: &Language, proof: &Proof, theory: &Theory) -> Result<(), ProofError> {
    if proof.steps.is_empty() {
        return Err(ProofError {
            step: 0,
            reason: "empty proof".into(),
        });
    }
    for (i, step) in proof.steps.iter().enumerate() {
        let fail = |reason: String| ProofError { step: i, reason };
        lang.check(&step.formula)
            .map_err(|e| fail(format!("ill-formed formula: {e}")))?;
        let earlier = |j: usize| -> Result<&Formula, ProofError> {
            if j < i {
                Ok(&proof.steps[j].formula)
            } else {
                Err(fail(format!("step {} is not earlier", j + 1)))
            }
        };
        let expected = match &step.justification {
            Justification::Axiom(spec) => instantiate_axiom(lang, spec)
                .map_err(|e| fail(format!("bad axiom {}: {e}", spec.prime.id())))?,
            Justification::Hypothesis(k) => theory
                .formulas
                .get(*k)
                .cloned()
                .ok_or_else(|| fail(format!("theory has no formula {}", k + 1)))?,
            Justification::ModusPonens(j, k) => {
                let pj = earlier(*j)?;
                let pk = earlier(*k)?;
                let want = Formula::imp(pj.clone(), step.formula.clone());
                if *pk != want {
                    return Err(fail(format!(
                        "modus ponens: step {} is not (step {} -> this formula)",
                        k + 1,
                        j + 1
                    )));
                }
                continue;
            }
            Justification::Subst(j, s) => {
                if proof.kind == ProofKind::Local {
                    return Err(fail("substitution is not allowed in local proofs".into()));
                }
                lang.functions
                    .check_subst(s)
                    .map_err(|e| fail(format!("bad substitution: {e}")))?;
                earlier(*j)?.subst(s)
            }
            Justification::Gen(j) => {
                if proof.kind == ProofKind::Local {
                    return Err(fail("generalization is not allowed in local proofs".into()));
                }
                Formula::forall(earlier(*j)?.clone())
            }
        };
        if expected != step.formula {
            return Err(fail(format!(
                "formula does not match justification, expected {expected}"
            )));
        }
    }
    Ok(())
}

/// The certificate checks and ends at `phi`.
pub fn derives(lang: &Language, theory: &Theory, phi: &Formula, proof: &Proof) -> bool {
    check_proof(lang, proof, theory).is_ok() && proof.conclusion() == Some(phi)
}

/// The first certificate proves some `p` and the second proves `~p`.
pub fn inconsistency_witness(lang: &Language, theory: &Theory, proofs: (&Proof, &Proof)) -> bool {
    let (a, b) = proofs;
    match (a.conclusion(), b.conclusion()) {
        (Some(p), Some(q)) => {
            *q == Formula::not(p.clone())
                && check_proof(lang, a, theory).is_ok()
                && check_proof(lang, b, theory).is_ok()
        }
        _ => false,
    }
}
