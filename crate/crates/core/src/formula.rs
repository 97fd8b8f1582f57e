//! Formulas of a first-order language as a predicate algebra over the clone
//! of terms.
//!
//! The only binder is [`Formula::Forall`], which binds coordinate 1 of its
//! body. Substitution pushes [`Substitution::lift`] under it, so no renaming or
//! capture avoidance is ever needed. Named binders (`forall x3. p`), `exists`,
//! and the connectives `|`, `->`, `<->` are constructors producing core syntax.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::terms::{check_symbol_name, FunctionType, Substitution, Symbol, Term, TermError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("undeclared predicate symbol `{0}`")]
    Undeclared(Symbol),
    #[error("predicate `{symbol}` expects {expected} arguments, got {found}")]
    Arity {
        symbol: Symbol,
        expected: usize,
        found: usize,
    },
    #[error("equality symbol `{0}` must have arity 2")]
    EqualityArity(Symbol),
    #[error("`{0}` is declared both as a function and as a predicate")]
    Clash(Symbol),
    #[error("the language has no equality symbol")]
    NoEquality,
    #[error("not the language of arithmetic: {0}")]
    NotArithmetic(String),
}

/// Predicate symbols with arities and an optional equality symbol.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PredicateType {
    symbols: BTreeMap<Symbol, usize>,
    equality: Option<Symbol>,
}

impl PredicateType {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(&mut self, name: &str, arity: usize) -> Result<Symbol, FormulaError> {
        check_symbol_name(name)?;
        let sym: Symbol = Arc::from(name);
        if self.symbols.contains_key(&sym) {
            return Err(TermError::Duplicate(sym).into());
        }
        self.symbols.insert(sym.clone(), arity);
        Ok(sym)
    }

    /// Declares `name` as the equality symbol of the type.
    pub fn declare_equality(&mut self, name: &str) -> Result<Symbol, FormulaError> {
        if self.equality.is_some() {
            return Err(TermError::Duplicate(Arc::from(name)).into());
        }
        let sym = self.declare(name, 2)?;
        self.equality = Some(sym.clone());
        Ok(sym)
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.symbols.get(name).copied()
    }

    pub fn equality(&self) -> Option<&Symbol> {
        self.equality.as_ref()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.keys().position(|s| &**s == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, usize)> {
        self.symbols.iter().map(|(s, a)| (s, *a))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// A first-order language `(F, R)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Language {
    pub functions: FunctionType,
    pub predicates: PredicateType,
}

impl Language {
    pub fn new(functions: FunctionType, predicates: PredicateType) -> Result<Self, FormulaError> {
        for (p, _) in predicates.iter() {
            if functions.contains(p) {
                return Err(FormulaError::Clash(p.clone()));
            }
        }
        if let Some(e) = predicates.equality() {
            if predicates.arity(e) != Some(2) {
                return Err(FormulaError::EqualityArity(e.clone()));
            }
        }
        Ok(Language {
            functions,
            predicates,
        })
    }

    /// Builder: adds a function symbol. Panics on an invalid declaration.
    pub fn with_fn(mut self, name: &str, arity: usize) -> Self {
        assert!(self.predicates.arity(name).is_none(), "symbol clash");
        self.functions
            .declare(name, arity)
            .expect("invalid declaration");
        self
    }

    /// Builder: adds a predicate symbol. Panics on an invalid declaration.
    pub fn with_rel(mut self, name: &str, arity: usize) -> Self {
        assert!(!self.functions.contains(name), "symbol clash");
        self.predicates
            .declare(name, arity)
            .expect("invalid declaration");
        self
    }

    /// Builder: adds the equality symbol. Panics on an invalid declaration.
    pub fn with_equality(mut self, name: &str) -> Self {
        assert!(!self.functions.contains(name), "symbol clash");
        self.predicates
            .declare_equality(name)
            .expect("invalid declaration");
        self
    }

    pub fn equality(&self) -> Option<&Symbol> {
        self.predicates.equality()
    }

    /// The atom `e(x1, x2)`, i.e. the equality element of rank 2.
    pub fn equality_atom(&self) -> Result<Formula, FormulaError> {
        let e = self.equality().ok_or(FormulaError::NoEquality)?;
        Ok(Formula::Atom(e.clone(), vec![Term::Var(1), Term::Var(2)]))
    }

    pub fn check_term(&self, t: &Term) -> Result<(), FormulaError> {
        Ok(self.functions.check(t)?)
    }

    pub fn check(&self, phi: &Formula) -> Result<(), FormulaError> {
        match phi {
            Formula::Atom(r, args) => {
                let expected = self
                    .predicates
                    .arity(r)
                    .ok_or_else(|| FormulaError::Undeclared(r.clone()))?;
                if expected != args.len() {
                    return Err(FormulaError::Arity {
                        symbol: r.clone(),
                        expected,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|t| self.check_term(t))
            }
            Formula::Not(p) | Formula::Forall(p) => self.check(p),
            Formula::And(p, q) => {
                self.check(p)?;
                self.check(q)
            }
        }
    }

    /// `φ[σ]` after checking both against the language.
    pub fn fsubst(&self, phi: &Formula, s: &Substitution) -> Result<Formula, FormulaError> {
        self.check(phi)?;
        self.functions.check_subst(s)?;
        Ok(phi.subst(s))
    }
}

/// Core formula syntax.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Symbol, Vec<Term>),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    /// Binds coordinate 1 of the body.
    Forall(Box<Formula>),
}

impl Formula {
    pub fn atom(r: &str, args: Vec<Term>) -> Formula {
        Formula::Atom(Arc::from(r), args)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(p: Formula) -> Formula {
        Formula::Not(Box::new(p))
    }

    pub fn and(p: Formula, q: Formula) -> Formula {
        Formula::And(Box::new(p), Box::new(q))
    }

    /// `p | q = ~(~p & ~q)`.
    pub fn or(p: Formula, q: Formula) -> Formula {
        Formula::not(Formula::and(Formula::not(p), Formula::not(q)))
    }

    /// `p -> q = ~p | q`.
    pub fn imp(p: Formula, q: Formula) -> Formula {
        Formula::or(Formula::not(p), q)
    }

    pub fn iff(p: Formula, q: Formula) -> Formula {
        Formula::and(Formula::imp(p.clone(), q.clone()), Formula::imp(q, p))
    }

    pub fn forall(p: Formula) -> Formula {
        Formula::Forall(Box::new(p))
    }

    /// `exists p = ~forall ~p`.
    pub fn exists(p: Formula) -> Formula {
        Formula::not(Formula::forall(Formula::not(p)))
    }

    /// `forall xi. p`, binding the variable `xi` of `p`.
    pub fn forall_xi(i: u32, p: &Formula) -> Formula {
        Formula::forall(p.subst(&Substitution::forall_rotation(i)))
    }

    pub fn exists_xi(i: u32, p: &Formula) -> Formula {
        Formula::exists(p.subst(&Substitution::forall_rotation(i)))
    }

    /// `forall^n p`.
    pub fn forall_n(p: Formula, n: usize) -> Formula {
        (0..n).fold(p, |acc, _| Formula::forall(acc))
    }

    /// Substitution action; `forall` pushes the lifted substitution inside.
    pub fn subst(&self, s: &Substitution) -> Formula {
        match self {
            Formula::Atom(r, args) => {
                Formula::Atom(r.clone(), args.iter().map(|t| t.subst(s)).collect())
            }
            Formula::Not(p) => Formula::not(p.subst(s)),
            Formula::And(p, q) => Formula::and(p.subst(s), q.subst(s)),
            Formula::Forall(p) => Formula::forall(p.subst(&s.lift())),
        }
    }

    /// `p+ = p[x2, x3, ...]`.
    pub fn plus(&self) -> Formula {
        self.subst(&Substitution::shift_up())
    }

    /// `p- = p[x1, x1, x2, ...]`.
    pub fn minus(&self) -> Formula {
        self.subst(&Substitution::minus())
    }

    /// `p* = p[x2, x2, x3, ...]`.
    pub fn star(&self) -> Formula {
        self.subst(&Substitution::star())
    }

    /// Rank: the least number of leading coordinates the formula depends on.
    pub fn rank(&self) -> u32 {
        match self {
            Formula::Atom(_, args) => args.iter().map(Term::rank).max().unwrap_or(0),
            Formula::Not(p) => p.rank(),
            Formula::And(p, q) => p.rank().max(q.rank()),
            Formula::Forall(p) => p.rank().saturating_sub(1),
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.rank() == 0
    }

    /// `forall x1. (... (forall xn. p))` with `n` the rank of `p`; always a sentence.
    pub fn close_off(&self) -> Formula {
        let n = self.rank();
        (1..=n)
            .rev()
            .fold(self.clone(), |acc, i| Formula::forall_xi(i, &acc))
    }

    /// Height of the syntax tree; atoms have height 1.
    pub fn height(&self) -> usize {
        match self {
            Formula::Atom(..) => 1,
            Formula::Not(p) | Formula::Forall(p) => 1 + p.height(),
            Formula::And(p, q) => 1 + p.height().max(q.height()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(..) => 1,
            Formula::Not(p) | Formula::Forall(p) => 1 + p.size(),
            Formula::And(p, q) => 1 + p.size() + q.size(),
        }
    }

    /// Predicate and function symbols occurring in the formula.
    pub fn symbols(&self) -> (Vec<Symbol>, Vec<Symbol>) {
        fn walk<'a>(phi: &'a Formula, rels: &mut Vec<&'a Symbol>, fns: &mut Vec<&'a Symbol>) {
            match phi {
                Formula::Atom(r, args) => {
                    rels.push(r);
                    for t in args {
                        t.symbols(fns);
                    }
                }
                Formula::Not(p) | Formula::Forall(p) => walk(p, rels, fns),
                Formula::And(p, q) => {
                    walk(p, rels, fns);
                    walk(q, rels, fns);
                }
            }
        }
        let (mut rels, mut fns) = (Vec::new(), Vec::new());
        walk(self, &mut rels, &mut fns);
        let mut rels: Vec<Symbol> = rels.into_iter().cloned().collect();
        let mut fns: Vec<Symbol> = fns.into_iter().cloned().collect();
        rels.sort();
        rels.dedup();
        fns.sort();
        fns.dedup();
        (rels, fns)
    }

    fn as_not(&self) -> Option<&Formula> {
        match self {
            Formula::Not(p) => Some(p),
            _ => None,
        }
    }

    /// Recognizes `p -> q` in core form.
    pub fn as_imp(&self) -> Option<(&Formula, &Formula)> {
        let Formula::And(a, b) = self.as_not()? else {
            return None;
        };
        Some((a.as_not()?.as_not()?, b.as_not()?))
    }

    fn as_or(&self) -> Option<(&Formula, &Formula)> {
        let Formula::And(a, b) = self.as_not()? else {
            return None;
        };
        Some((a.as_not()?, b.as_not()?))
    }

    fn as_iff(&self) -> Option<(&Formula, &Formula)> {
        let Formula::And(a, b) = self else {
            return None;
        };
        let (p, q) = a.as_imp()?;
        let (q2, p2) = b.as_imp()?;
        (p == p2 && q == q2).then_some((p, q))
    }

    fn as_exists(&self) -> Option<&Formula> {
        match self.as_not()? {
            Formula::Forall(body) => body.as_not(),
            _ => None,
        }
    }
}

/// `{}` prints with `|`, `->`, `<->` and `exists` recognized; `{:#}` prints
/// the bare core syntax. Both read back to the same formula.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !f.alternate() {
            if let Some((p, q)) = self.as_iff() {
                return write!(f, "({p} <-> {q})");
            }
            if let Some((p, q)) = self.as_imp() {
                return write!(f, "({p} -> {q})");
            }
            if let Some((p, q)) = self.as_or() {
                return write!(f, "({p} | {q})");
            }
            if let Some(p) = self.as_exists() {
                return write!(f, "exists {p}");
            }
        }
        match self {
            Formula::Atom(r, args) if args.is_empty() => write!(f, "{r}"),
            Formula::Atom(r, args) => {
                write!(f, "{r}(")?;
                for (k, t) in args.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str(")")
            }
            Formula::Not(p) if f.alternate() => write!(f, "~{p:#}"),
            Formula::Not(p) => write!(f, "~{p}"),
            Formula::And(p, q) if f.alternate() => write!(f, "({p:#} & {q:#})"),
            Formula::And(p, q) => write!(f, "({p} & {q})"),
            Formula::Forall(p) if f.alternate() => write!(f, "forall {p:#}"),
            Formula::Forall(p) => write!(f, "forall {p}"),
        }
    }
}

/// The language of arithmetic: `0/0`, `S/1`, `add/2`, `mul/2` and equality `e`.
pub fn arithmetic_language() -> Language {
    Language::default()
        .with_fn("0", 0)
        .with_fn("S", 1)
        .with_fn("add", 2)
        .with_fn("mul", 2)
        .with_equality("e")
}

fn check_arithmetic(lang: &Language) -> Result<(), FormulaError> {
    for (name, arity) in [("0", 0), ("S", 1), ("add", 2), ("mul", 2)] {
        if lang.functions.arity(name) != Some(arity) {
            return Err(FormulaError::NotArithmetic(format!(
                "missing {name}/{arity}"
            )));
        }
    }
    match lang.equality() {
        Some(e) if &**e == "e" => Ok(()),
        _ => Err(FormulaError::NotArithmetic("missing equality e".into())),
    }
}

mod arith {
    use super::*;

    pub fn zero() -> Term {
        Term::constant("0")
    }
    pub fn succ(t: Term) -> Term {
        Term::app("S", vec![t])
    }
    pub fn add(a: Term, b: Term) -> Term {
        Term::app("add", vec![a, b])
    }
    pub fn mul(a: Term, b: Term) -> Term {
        Term::app("mul", vec![a, b])
    }
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::atom("e", vec![a, b])
    }
}

/// The first six Peano axioms, in order.
pub fn peano_core() -> Vec<Formula> {
    use arith::*;
    let x1 = || Term::Var(1);
    let x2 = || Term::Var(2);
    vec![
        Formula::not(eq(zero(), succ(x1()))),
        Formula::imp(eq(succ(x1()), succ(x2())), eq(x1(), x2())),
        eq(add(x1(), zero()), x1()),
        eq(add(x1(), succ(x2())), succ(add(x1(), x2()))),
        eq(mul(x1(), zero()), zero()),
        eq(mul(x1(), succ(x2())), add(mul(x1(), x2()), x1())),
    ]
}

/// The induction instance `(p[0] & forall (p[x1] -> p[S(x1)])) -> forall p[x1]`.
pub fn peano_induction(lang: &Language, p: &Formula) -> Result<Formula, FormulaError> {
    use arith::*;
    check_arithmetic(lang)?;
    lang.check(p)?;
    let at = |t: Term| p.subst(&Substitution::from_list(vec![t]).expect("nonempty"));
    let base = at(zero());
    let step = Formula::forall(Formula::imp(at(Term::Var(1)), at(succ(Term::Var(1)))));
    Ok(Formula::imp(
        Formula::and(base, step),
        Formula::forall(at(Term::Var(1))),
    ))
}
