//! Quantifier-algebra laws Q1–Q5 on formula-induced elements, bounded
//! witness checks for local valuations, and the finite meet property.

use std::fmt;

use crate::formula::{Formula, Language};
use crate::terms::{Substitution, Term};

use super::{CompiledFormula, Env, SemanticsError, Structure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QaLaw {
    /// `forall (p & q) = forall p & forall q`
    Q1,
    /// `(forall p)+ = (forall p)+ & p`
    Q2,
    /// `forall (p+) = p`
    Q3,
    /// `e* = 1`
    Q4,
    /// `e & p = e & p*`
    Q5,
}

impl QaLaw {
    pub const ALL: [QaLaw; 5] = [QaLaw::Q1, QaLaw::Q2, QaLaw::Q3, QaLaw::Q4, QaLaw::Q5];
}

impl fmt::Display for QaLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawOutcome {
    pub law: QaLaw,
    /// Instances compared (each under every environment).
    pub checked: usize,
    /// The law needs equality and the language has none.
    pub skipped: bool,
    /// First failing instance: both sides and the environment.
    pub failure: Option<(Formula, Option<Formula>, Env)>,
}

impl LawOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QaReport {
    pub outcomes: Vec<LawOutcome>,
}

impl QaReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(LawOutcome::passed)
    }

    /// Merges a report for another structure; the first failure of each law is kept.
    pub fn absorb(&mut self, other: QaReport) {
        for (mine, theirs) in self.outcomes.iter_mut().zip(other.outcomes) {
            mine.checked += theirs.checked;
            if mine.failure.is_none() {
                mine.failure = theirs.failure;
            }
        }
    }
}

impl fmt::Display for QaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            if o.skipped {
                writeln!(f, "{} SKIP (no equality)", o.law)?;
                continue;
            }
            match &o.failure {
                None => writeln!(f, "{} PASS {} instances", o.law, o.checked)?,
                Some((lhs, rhs, env)) => {
                    let rhs = rhs
                        .as_ref()
                        .map(|r| r.to_string())
                        .unwrap_or_else(|| "1".into());
                    writeln!(f, "{} FAIL {lhs} vs {rhs} at {env}", o.law)?
                }
            }
        }
        Ok(())
    }
}

/// One law instance: the right side `None` stands for the top element.
struct Case {
    lhs: (Formula, CompiledFormula),
    rhs: Option<(Formula, CompiledFormula)>,
    len: u32,
}

/// The instances of Q1–Q5 for a sample, compiled once and checkable in any
/// structure over the language.
pub struct QaCases {
    laws: Vec<(QaLaw, bool, Vec<Case>)>,
}

impl QaCases {
    /// Q1 ranges over all ordered pairs of the sample. Sides are compared
    /// under every environment whose prefix covers both sides and has length
    /// at least `rank_bound + 1`.
    pub fn new(
        lang: &Language,
        sample: &[Formula],
        rank_bound: u32,
    ) -> Result<Self, SemanticsError> {
        let case = |lhs: Formula, rhs: Option<Formula>| -> Result<Case, SemanticsError> {
            let len = (rank_bound + 1)
                .max(lhs.rank())
                .max(rhs.as_ref().map_or(0, Formula::rank));
            let lc = CompiledFormula::new(lang, &lhs)?;
            let rhs = match rhs {
                Some(r) => {
                    let rc = CompiledFormula::new(lang, &r)?;
                    Some((r, rc))
                }
                None => None,
            };
            Ok(Case {
                lhs: (lhs, lc),
                rhs,
                len,
            })
        };
        let mut q1 = Vec::new();
        for p in sample {
            for q in sample {
                q1.push(case(
                    Formula::forall(Formula::and(p.clone(), q.clone())),
                    Some(Formula::and(
                        Formula::forall(p.clone()),
                        Formula::forall(q.clone()),
                    )),
                )?);
            }
        }
        let mut q2 = Vec::new();
        let mut q3 = Vec::new();
        for p in sample {
            let fp = Formula::forall(p.clone()).plus();
            q2.push(case(fp.clone(), Some(Formula::and(fp, p.clone())))?);
            q3.push(case(Formula::forall(p.plus()), Some(p.clone()))?);
        }
        let (mut q4, mut q5) = (Vec::new(), Vec::new());
        let has_eq = lang.equality().is_some();
        if let Ok(e) = lang.equality_atom() {
            q4.push(case(e.star(), None)?);
            for p in sample {
                q5.push(case(
                    Formula::and(e.clone(), p.clone()),
                    Some(Formula::and(e.clone(), p.star())),
                )?);
            }
        }
        Ok(QaCases {
            laws: vec![
                (QaLaw::Q1, true, q1),
                (QaLaw::Q2, true, q2),
                (QaLaw::Q3, true, q3),
                (QaLaw::Q4, has_eq, q4),
                (QaLaw::Q5, has_eq, q5),
            ],
        })
    }

    pub fn check(&self, d: &Structure) -> QaReport {
        let one = d.boolean().one();
        let outcomes = self
            .laws
            .iter()
            .map(|(law, applicable, cases)| {
                let mut failure = None;
                'cases: for c in cases {
                    for env in super::envs(d.size(), c.len, 0) {
                        let l = c.lhs.1.eval_env(d, &env);
                        let r = c.rhs.as_ref().map_or(one, |(_, rc)| rc.eval_env(d, &env));
                        if l != r {
                            failure = Some((
                                c.lhs.0.clone(),
                                c.rhs.as_ref().map(|(f, _)| f.clone()),
                                env,
                            ));
                            break 'cases;
                        }
                    }
                }
                LawOutcome {
                    law: *law,
                    checked: cases.len(),
                    skipped: !applicable,
                    failure,
                }
            })
            .collect();
        QaReport { outcomes }
    }
}

/// Checks Q1–Q5 in the structure's algebra of formula-induced elements.
pub fn qa_law_check(
    d: &Structure,
    sample: &[Formula],
    rank_bound: u32,
) -> Result<QaReport, SemanticsError> {
    Ok(QaCases::new(d.language(), sample, rank_bound)?.check(d))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectEntry {
    pub formula: Formula,
    /// `forall p` belongs to the local valuation.
    pub forall_holds: bool,
    /// Candidates `a` with `forall p` in V but `p[a, x1, x2, ...]` not in V.
    pub instance_failures: Vec<Term>,
    /// When `~forall p` is in V: the first candidate `a` with
    /// `(~p)[a, x1, x2, ...]` in V.
    pub witness: Option<Term>,
}

impl PerfectEntry {
    /// `~forall p` is in V but no supplied candidate witnesses it.
    pub fn inconclusive(&self) -> bool {
        !self.forall_holds && self.witness.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectReport {
    pub entries: Vec<PerfectEntry>,
}

impl PerfectReport {
    /// No instance of a universally true formula failed.
    pub fn sound(&self) -> bool {
        self.entries.iter().all(|e| e.instance_failures.is_empty())
    }
}

impl fmt::Display for PerfectReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            if e.forall_holds {
                if e.instance_failures.is_empty() {
                    writeln!(f, "forall {} holds; all instances hold", e.formula)?;
                } else {
                    let bad: Vec<String> =
                        e.instance_failures.iter().map(Term::to_string).collect();
                    writeln!(
                        f,
                        "forall {} holds; instances fail at {}",
                        e.formula,
                        bad.join(", ")
                    )?;
                }
            } else {
                match &e.witness {
                    Some(a) => writeln!(f, "~forall {} holds; witness {a}", e.formula)?,
                    None => writeln!(f, "~forall {} holds; inconclusive", e.formula)?,
                }
            }
        }
        Ok(())
    }
}

/// Over the local valuation `V = {p : p holds at env}`: checks that `forall p`
/// in V gives every instance `p[a, x1, x2, ...]` in V, and looks for a
/// witness among the candidates when `~forall p` is in V.
pub fn perfect_check_bounded(
    d: &Structure,
    env: &Env,
    candidates: &[Term],
    sample: &[Formula],
) -> Result<PerfectReport, SemanticsError> {
    env.check(d.size())?;
    if let Some(t) = candidates.iter().find(|t| !t.is_closed()) {
        return Err(SemanticsError::NotClosed(t.to_string()));
    }
    for t in candidates {
        d.language().check_term(t)?;
    }
    let mut entries = Vec::with_capacity(sample.len());
    for p in sample {
        let forall_holds = d.eval_formula(&Formula::forall(p.clone()), env)?;
        let mut instance_failures = Vec::new();
        let mut witness = None;
        for a in candidates {
            let inst = p.subst(&Substitution::cons(a.clone()));
            if forall_holds {
                if !d.eval_formula(&inst, env)? {
                    instance_failures.push(a.clone());
                }
            } else if witness.is_none() && d.eval_formula(&Formula::not(inst), env)? {
                witness = Some(a.clone());
            }
        }
        entries.push(PerfectEntry {
            formula: p.clone(),
            forall_holds,
            instance_failures,
            witness,
        });
    }
    Ok(PerfectReport { entries })
}

/// The conjunction of the sentences holds in `d`.
pub fn finite_meet_property(sentences: &[Formula], d: &Structure) -> Result<bool, SemanticsError> {
    if let Some(s) = sentences.iter().find(|s| !s.is_sentence()) {
        return Err(SemanticsError::NotSentence(s.to_string()));
    }
    let env = Env::constant(0);
    for s in sentences {
        if !d.eval_formula(s, &env)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::peano_core;
    use crate::semantics::FiniteBooleanAlg;

    fn binary() -> Language {
        Language::default().with_rel("r", 2).with_equality("e")
    }

    #[test]
    fn laws_hold_in_a_small_structure() {
        let mut d = Structure::new(binary(), 2).unwrap();
        d.set_boolean(FiniteBooleanAlg::new(2).unwrap()).unwrap();
        d.set_rel("r", vec![0b01, 0b10, 0b11, 0b00]).unwrap();
        let x = Term::var;
        let sample = vec![
            Formula::atom("r", vec![x(1), x(2)]),
            Formula::atom("r", vec![x(2), x(1)]),
            Formula::forall(Formula::atom("r", vec![x(1), x(2)])),
        ];
        let report = qa_law_check(&d, &sample, 2).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.outcomes[0].checked, 9);
    }

    #[test]
    fn broken_equality_is_caught() {
        let mut d = Structure::new(binary(), 2).unwrap();
        d.set_identity_equality(false);
        d.set_rel_bool("e", &[true, false, true, false]).unwrap();
        let report = qa_law_check(
            &d,
            &[Formula::atom("r", vec![Term::var(1), Term::var(2)])],
            1,
        )
        .unwrap();
        assert!(report.outcomes[2].passed());
        assert!(!report.outcomes[3].passed());
    }

    #[test]
    fn witnesses_in_z2() {
        let d = Structure::zmod(2).unwrap();
        let zero = Term::constant("0");
        let one = Term::app("S", vec![zero.clone()]);
        let p = Formula::atom("e", vec![Term::var(1), zero.clone()]);
        let report = perfect_check_bounded(
            &d,
            &Env::constant(0),
            &[zero.clone(), one.clone()],
            std::slice::from_ref(&p),
        )
        .unwrap();
        assert!(report.sound());
        assert_eq!(report.entries[0].witness, Some(one));
        let empty = perfect_check_bounded(&d, &Env::constant(0), &[], &[p]).unwrap();
        assert!(empty.entries[0].inconclusive());
        assert!(perfect_check_bounded(&d, &Env::constant(0), &[Term::var(1)], &[]).is_err());
    }

    #[test]
    fn meets() {
        let d = Structure::zmod(5).unwrap();
        let core = peano_core();
        let s3 = Formula::forall(core[2].clone());
        let s4 = core[3].close_off();
        assert!(finite_meet_property(&[s3.clone(), s4], &d).unwrap());
        assert!(!finite_meet_property(&[s3.clone(), Formula::not(s3)], &d).unwrap());
        assert!(finite_meet_property(&[], &d).unwrap());
        assert!(finite_meet_property(&[core[2].clone()], &d).is_err());
    }
}
