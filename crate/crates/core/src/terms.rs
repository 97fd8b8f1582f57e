//! Terms over a function type and their substitution monoid.
//!
//! Terms form a locally finite clone: every term `t` can be acted on by an
//! infinite sequence of terms `[s1, s2, ...]`, replacing each variable `xi` by
//! `si`. Infinite sequences are represented finitely as a prefix followed by a
//! tail rule, which is either a shift (`xj` maps to `x(j+d)`) or a constant
//! term. That family is closed under composition and under [`Substitution::lift`],
//! which is all the binder of [`crate::formula`] needs.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Interned-ish symbol name. Cheap to clone and safe to share across threads.
pub type Symbol = Arc<str>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("undeclared function symbol `{0}`")]
    Undeclared(Symbol),
    #[error("symbol `{symbol}` expects {expected} arguments, got {found}")]
    Arity {
        symbol: Symbol,
        expected: usize,
        found: usize,
    },
    #[error("symbol `{0}` declared twice")]
    Duplicate(Symbol),
    #[error("`{0}` is not a valid symbol name")]
    BadName(String),
    #[error("substitution from an empty term list")]
    EmptyList,
    #[error("shift {shift} after a prefix of length {prefix} would reach x0")]
    BadShift { prefix: usize, shift: i64 },
}

/// Returns true for names of the form `x<digits>`, which are reserved for
/// variables.
pub fn is_variable_name(name: &str) -> bool {
    name.len() > 1 && name.starts_with('x') && name[1..].bytes().all(|b| b.is_ascii_digit())
}

pub(crate) fn check_symbol_name(name: &str) -> Result<(), TermError> {
    let ok = !name.is_empty()
        && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
        && !is_variable_name(name)
        && !matches!(name, "forall" | "exists" | "shift" | "const" | "BY");
    if ok {
        Ok(())
    } else {
        Err(TermError::BadName(name.to_string()))
    }
}

/// A set of function symbols with arities.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FunctionType {
    symbols: BTreeMap<Symbol, usize>,
}

impl FunctionType {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(&mut self, name: &str, arity: usize) -> Result<Symbol, TermError> {
        check_symbol_name(name)?;
        let sym: Symbol = Arc::from(name);
        if self.symbols.contains_key(&sym) {
            return Err(TermError::Duplicate(sym));
        }
        self.symbols.insert(sym.clone(), arity);
        Ok(sym)
    }

    /// Builder form of [`FunctionType::declare`]; panics on an invalid declaration.
    pub fn with(mut self, name: &str, arity: usize) -> Self {
        self.declare(name, arity)
            .expect("invalid function declaration");
        self
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.symbols.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.symbols.contains_key(name)
    }

    /// Position of `name` in the symbol order; structures index their tables by it.
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

    /// Checks that every symbol in `t` is declared with the arity it is used at.
    pub fn check(&self, t: &Term) -> Result<(), TermError> {
        match t {
            Term::Var(_) => Ok(()),
            Term::App(f, args) => {
                let expected = self
                    .arity(f)
                    .ok_or_else(|| TermError::Undeclared(f.clone()))?;
                if expected != args.len() {
                    return Err(TermError::Arity {
                        symbol: f.clone(),
                        expected,
                        found: args.len(),
                    });
                }
                args.iter().try_for_each(|a| self.check(a))
            }
        }
    }

    pub fn check_subst(&self, s: &Substitution) -> Result<(), TermError> {
        s.prefix.iter().try_for_each(|t| self.check(t))?;
        match &s.tail {
            Tail::Shift(_) => Ok(()),
            Tail::Const(t) => self.check(t),
        }
    }

    /// `t[σ]` after checking both sides against the signature.
    pub fn apply(&self, t: &Term, s: &Substitution) -> Result<Term, TermError> {
        self.check(t)?;
        self.check_subst(s)?;
        Ok(t.subst(s))
    }
}

/// An element of the clone F(X): a variable `xi` (i >= 1) or an application.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(u32),
    App(Symbol, Vec<Term>),
}

impl Term {
    /// The variable `xi`. Panics if `i == 0`.
    pub fn var(i: u32) -> Term {
        assert!(i >= 1, "variables are indexed from 1");
        Term::Var(i)
    }

    pub fn app(f: &str, args: Vec<Term>) -> Term {
        Term::App(Arc::from(f), args)
    }

    pub fn constant(c: &str) -> Term {
        Term::App(Arc::from(c), Vec::new())
    }

    /// Applies the substitution: `xi[s1, s2, ...] = si`, applications
    /// substitute argumentwise.
    pub fn subst(&self, s: &Substitution) -> Term {
        match self {
            Term::Var(i) => s.at(*i),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.subst(s)).collect()),
        }
    }

    /// `t+ = t[x2, x3, ...]`.
    pub fn shift_up(&self) -> Term {
        self.shift_by(1)
    }

    pub(crate) fn shift_by(&self, d: u32) -> Term {
        match self {
            Term::Var(i) => Term::Var(i + d),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| a.shift_by(d)).collect())
            }
        }
    }

    /// Largest variable index occurring in the term, 0 for closed terms.
    /// Equals the least `n` with `t[x1, ..., xn] = t`.
    pub fn rank(&self) -> u32 {
        match self {
            Term::Var(i) => *i,
            Term::App(_, args) => args.iter().map(Term::rank).max().unwrap_or(0),
        }
    }

    pub fn is_closed(&self) -> bool {
        self.rank() == 0
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    pub fn symbols<'a>(&'a self, out: &mut Vec<&'a Symbol>) {
        if let Term::App(f, args) = self {
            out.push(f);
            for a in args {
                a.symbols(out);
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::App(name, args) if args.is_empty() => write!(f, "{name}"),
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Rule giving the coordinates of a substitution beyond its prefix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Tail {
    /// Coordinate `j` is `x(j+d)`.
    Shift(i64),
    /// Every coordinate is the same term.
    Const(Term),
}

/// An element `[a1, a2, ...]` of F(X)^N, stored as a finite prefix plus a
/// [`Tail`]. Values are kept normalized (no trailing prefix entry coincides with
/// what the tail would give), so `==` is extensional equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Substitution {
    prefix: Vec<Term>,
    tail: Tail,
}

impl Substitution {
    /// Builds and normalizes a substitution. A shift tail must satisfy
    /// `prefix.len() + d >= 0`.
    pub fn new(prefix: Vec<Term>, tail: Tail) -> Result<Self, TermError> {
        if let Tail::Shift(d) = tail {
            if prefix.len() as i64 + d < 0 {
                return Err(TermError::BadShift {
                    prefix: prefix.len(),
                    shift: d,
                });
            }
        }
        let mut s = Substitution { prefix, tail };
        s.normalize();
        Ok(s)
    }

    fn normalize(&mut self) {
        while let Some(last) = self.prefix.last() {
            let n = self.prefix.len() as i64;
            let redundant = match &self.tail {
                Tail::Shift(d) => n + d >= 1 && *last == Term::Var((n + d) as u32),
                Tail::Const(t) => last == t,
            };
            if !redundant {
                break;
            }
            self.prefix.pop();
        }
    }

    /// `[x1, x2, ...]`.
    pub fn identity() -> Self {
        Substitution {
            prefix: Vec::new(),
            tail: Tail::Shift(0),
        }
    }

    /// `[x2, x3, ...]`, the substitution behind `p+`.
    pub fn shift_up() -> Self {
        Substitution {
            prefix: Vec::new(),
            tail: Tail::Shift(1),
        }
    }

    /// `[x1, x1, x2, x3, ...]`, the substitution behind `p-`.
    pub fn minus() -> Self {
        Self::new(vec![Term::Var(1), Term::Var(1)], Tail::Shift(-1)).expect("well-formed")
    }

    /// `[x2, x2, x3, x4, ...]`, the substitution behind `p*`.
    pub fn star() -> Self {
        Self::new(vec![Term::Var(2), Term::Var(2)], Tail::Shift(0)).expect("well-formed")
    }

    /// The eventually constant sequence `[t1, ..., tn, tn, tn, ...]`.
    pub fn from_list(terms: Vec<Term>) -> Result<Self, TermError> {
        let mut terms = terms;
        let last = terms.pop().ok_or(TermError::EmptyList)?;
        Self::new(terms, Tail::Const(last))
    }

    /// `[x1, ..., xn, xn, ...]`; the substitution whose fixpoints have rank <= n.
    pub fn truncation(n: u32) -> Self {
        assert!(n >= 1);
        Self::from_list((1..=n).map(Term::Var).collect()).expect("nonempty")
    }

    /// The sequence used by `forall xi`: `xj -> x(j+1)` for `j != i` and
    /// `xi -> x1`.
    pub fn forall_rotation(i: u32) -> Self {
        assert!(i >= 1, "variables are indexed from 1");
        let mut prefix: Vec<Term> = (2..=i).map(Term::Var).collect();
        prefix.push(Term::Var(1));
        Self::new(prefix, Tail::Shift(1)).expect("well-formed")
    }

    /// `[a, x1, x2, ...]`: puts `a` in front and shifts the identity back.
    pub fn cons(a: Term) -> Self {
        Self::new(vec![a], Tail::Shift(-1)).expect("well-formed")
    }

    pub fn prefix(&self) -> &[Term] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    /// The j-th coordinate (1-based). Panics if `j == 0`.
    pub fn at(&self, j: u32) -> Term {
        assert!(j >= 1, "coordinates are indexed from 1");
        let j_us = j as usize;
        if j_us <= self.prefix.len() {
            return self.prefix[j_us - 1].clone();
        }
        match &self.tail {
            Tail::Shift(d) => Term::Var((j as i64 + d) as u32),
            Tail::Const(t) => t.clone(),
        }
    }

    /// Monoid product: `t[compose(σ, τ)] = (t[σ])[τ]`.
    pub fn compose(&self, other: &Substitution) -> Substitution {
        let mut prefix: Vec<Term> = self.prefix.iter().map(|t| t.subst(other)).collect();
        let tail = match &self.tail {
            Tail::Const(t) => Tail::Const(t.subst(other)),
            Tail::Shift(d1) => {
                let n1 = self.prefix.len() as i64;
                let n2 = other.prefix.len() as i64;
                let end = n1.max(n2 - d1);
                for j in (n1 + 1)..=end {
                    prefix.push(other.at((j + d1) as u32));
                }
                match &other.tail {
                    Tail::Shift(d2) => Tail::Shift(d1 + d2),
                    Tail::Const(t) => Tail::Const(t.clone()),
                }
            }
        };
        Substitution::new(prefix, tail).expect("composition preserves the shift guard")
    }

    /// `[x1, a1+, a2+, ...]`, the substitution a binder pushes under itself.
    pub fn lift(&self) -> Substitution {
        let mut prefix = Vec::with_capacity(self.prefix.len() + 1);
        prefix.push(Term::Var(1));
        prefix.extend(self.prefix.iter().map(Term::shift_up));
        let tail = match &self.tail {
            Tail::Shift(d) => Tail::Shift(*d),
            Tail::Const(t) => Tail::Const(t.shift_up()),
        };
        Substitution::new(prefix, tail).expect("lift preserves the shift guard")
    }

    /// `[a2, a3, ...]`.
    pub fn drop_first(&self) -> Substitution {
        Substitution::shift_up().compose(self)
    }

    /// `[a2, a2, a3, ...]`.
    pub fn dup_second(&self) -> Substitution {
        Substitution::star().compose(self)
    }

    /// Length of the prefix that has to be consulted before the tail takes over.
    pub fn support(&self) -> usize {
        self.prefix.len()
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, t) in self.prefix.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}")?;
        }
        if !self.prefix.is_empty() {
            f.write_str(" ")?;
        }
        match &self.tail {
            Tail::Shift(d) => write!(f, "; shift {d}]"),
            Tail::Const(t) => write!(f, "; const {t}]"),
        }
    }
}
