//! Finite structures and their (possibly Boolean-valued) semantics.

mod eval;
mod laws;
mod search;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::formula::{arithmetic_language, Formula, FormulaError, Language};
use crate::terms::{Substitution, Tail, Term};

pub use eval::{CompiledFormula, CompiledTerm};
pub use laws::{
    finite_meet_property, perfect_check_bounded, qa_law_check, LawOutcome, PerfectEntry,
    PerfectReport, QaCases, QaLaw, QaReport,
};
pub use search::{countermodel_search, SearchOptions, StructureSpace, DEFAULT_CELL_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("domain size must be positive")]
    EmptyDomain,
    #[error("no symbol {0}")]
    Undeclared(String),
    #[error("table for {symbol} has {found} entries, expected {expected}")]
    TableLength {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("table for {symbol} contains {value}, out of range")]
    OutOfRange { symbol: String, value: u64 },
    #[error("Boolean algebras with {0} atoms are not supported (1..=64)")]
    BadAtomCount(u32),
    #[error("environment element {value} is outside a domain of size {size}")]
    EnvOutOfRange { value: u32, size: u32 },
    #[error("candidate {0} is not a closed term")]
    NotClosed(String),
    #[error("{0} is not a sentence")]
    NotSentence(String),
    #[error("{cells} table cells exceed the cap of {cap}; use a smaller language or size")]
    CellCap { cells: usize, cap: usize },
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

/// The finite Boolean algebra of subsets of a `k`-element set; elements are
/// `k`-bit masks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FiniteBooleanAlg {
    atoms: u32,
}

impl FiniteBooleanAlg {
    pub fn new(atoms: u32) -> Result<Self, SemanticsError> {
        if atoms == 0 || atoms > 64 {
            return Err(SemanticsError::BadAtomCount(atoms));
        }
        Ok(FiniteBooleanAlg { atoms })
    }

    /// The two-element algebra.
    pub fn two() -> Self {
        FiniteBooleanAlg { atoms: 1 }
    }

    pub fn atoms(&self) -> u32 {
        self.atoms
    }

    /// Number of elements, saturating at `u64::MAX`.
    pub fn element_count(&self) -> u64 {
        1u64.checked_shl(self.atoms).unwrap_or(u64::MAX)
    }

    pub fn zero(&self) -> u64 {
        0
    }

    pub fn one(&self) -> u64 {
        if self.atoms == 64 {
            u64::MAX
        } else {
            (1u64 << self.atoms) - 1
        }
    }

    pub fn meet(&self, a: u64, b: u64) -> u64 {
        a & b
    }

    pub fn join(&self, a: u64, b: u64) -> u64 {
        a | b
    }

    pub fn complement(&self, a: u64) -> u64 {
        self.one() & !a
    }

    pub fn contains(&self, a: u64) -> bool {
        a & !self.one() == 0
    }
}

impl Default for FiniteBooleanAlg {
    fn default() -> Self {
        Self::two()
    }
}

/// The eventually constant sequence `(d1, ..., dk, default, default, ...)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Env {
    pub prefix: Vec<u32>,
    pub default: u32,
}

impl Env {
    pub fn new(prefix: Vec<u32>, default: u32) -> Self {
        Env { prefix, default }
    }

    pub fn constant(d: u32) -> Self {
        Env {
            prefix: Vec::new(),
            default: d,
        }
    }

    /// Coordinate `j` (1-based).
    pub fn at(&self, j: u32) -> u32 {
        assert!(j > 0, "coordinates are 1-based");
        self.prefix
            .get(j as usize - 1)
            .copied()
            .unwrap_or(self.default)
    }

    pub fn check(&self, size: u32) -> Result<(), SemanticsError> {
        match self
            .prefix
            .iter()
            .chain([&self.default])
            .find(|&&d| d >= size)
        {
            Some(&value) => Err(SemanticsError::EnvOutOfRange { value, size }),
            None => Ok(()),
        }
    }

    /// `(d, d1, d2, ...)`.
    pub fn cons(&self, d: u32) -> Env {
        let mut prefix = Vec::with_capacity(self.prefix.len() + 1);
        prefix.push(d);
        prefix.extend_from_slice(&self.prefix);
        Env {
            prefix,
            default: self.default,
        }
    }

    /// The environment `i -> eval(s(i), self)`, so that
    /// `eval(p[s], self) = eval(p, self.after(s))`.
    pub fn after(&self, d: &Structure, s: &Substitution) -> Result<Env, SemanticsError> {
        let value = |t: &Term| d.eval_term(t, self);
        let (len, default) = match s.tail() {
            Tail::Shift(k) => {
                let reach = self.prefix.len() as i64 - k;
                (s.prefix().len().max(reach.max(0) as usize), self.default)
            }
            Tail::Const(t) => (s.prefix().len(), value(t)?),
        };
        let prefix = (1..=len as u32)
            .map(|j| value(&s.at(j)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Env { prefix, default })
    }
}

impl fmt::Display for Env {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, d) in self.prefix.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}")?;
        }
        if self.prefix.is_empty() {
            write!(f, "; {}]", self.default)
        } else {
            write!(f, " ; {}]", self.default)
        }
    }
}

/// All environments with a prefix of length `len` over `{0..size-1}` and the
/// given default, in lexicographic order of the prefix.
pub fn envs(size: u32, len: u32, default: u32) -> impl Iterator<Item = Env> {
    let total = (size as u64)
        .checked_pow(len)
        .expect("environment count overflows");
    (0..total).map(move |mut code| {
        let mut prefix = vec![0u32; len as usize];
        for slot in prefix.iter_mut().rev() {
            *slot = (code % size as u64) as u32;
            code /= size as u64;
        }
        Env { prefix, default }
    })
}

/// A finite structure for a language, with relations valued in a finite
/// Boolean algebra (two-valued by default).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    pub(crate) lang: Arc<Language>,
    pub(crate) size: u32,
    /// Aligned with the function symbol order; row-major, first argument
    /// most significant.
    pub(crate) fns: Vec<Vec<u32>>,
    /// Aligned with the predicate symbol order.
    pub(crate) rels: Vec<Vec<u64>>,
    pub(crate) boolean: FiniteBooleanAlg,
    pub(crate) identity_equality: bool,
}

fn table_len(size: u32, arity: usize) -> usize {
    (size as usize).pow(arity as u32)
}

impl Structure {
    /// All tables zero; equality, if declared, is the identity.
    pub fn new(lang: impl Into<Arc<Language>>, size: u32) -> Result<Self, SemanticsError> {
        if size == 0 {
            return Err(SemanticsError::EmptyDomain);
        }
        let lang = lang.into();
        let fns = lang
            .functions
            .iter()
            .map(|(_, a)| vec![0; table_len(size, a)])
            .collect();
        let rels = lang
            .predicates
            .iter()
            .map(|(_, a)| vec![0; table_len(size, a)])
            .collect();
        let identity_equality = lang.equality().is_some();
        Ok(Structure {
            lang,
            size,
            fns,
            rels,
            boolean: FiniteBooleanAlg::two(),
            identity_equality,
        })
    }

    /// `Z/m` interpreting `0`, `S`, `add`, `mul` with identity equality.
    pub fn zmod(m: u32) -> Result<Self, SemanticsError> {
        let mut d = Structure::new(arithmetic_language(), m)?;
        let n = m as usize;
        d.set_fn("0", vec![0])?;
        d.set_fn("S", (0..m).map(|a| (a + 1) % m).collect())?;
        d.set_fn(
            "add",
            (0..n * n)
                .map(|ab| ((ab / n + ab % n) % n) as u32)
                .collect(),
        )?;
        d.set_fn(
            "mul",
            (0..n * n)
                .map(|ab| ((ab / n) * (ab % n) % n) as u32)
                .collect(),
        )?;
        Ok(d)
    }

    pub fn language(&self) -> &Language {
        &self.lang
    }

    pub fn language_arc(&self) -> &Arc<Language> {
        &self.lang
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn boolean(&self) -> FiniteBooleanAlg {
        self.boolean
    }

    /// Whether the equality symbol is interpreted as the identity relation
    /// rather than by its table.
    pub fn identity_equality(&self) -> bool {
        self.identity_equality
    }

    /// Switching this off makes equality an ordinary relation read from its
    /// table; the equality axioms then need not hold.
    pub fn set_identity_equality(&mut self, on: bool) {
        self.identity_equality = on && self.lang.equality().is_some();
    }

    /// Changes the algebra of truth values. Existing relation entries must
    /// fit the new width.
    pub fn set_boolean(&mut self, b: FiniteBooleanAlg) -> Result<(), SemanticsError> {
        for (name, _) in self.lang.predicates.iter() {
            let idx = self.lang.predicates.index_of(name).expect("declared");
            if let Some(&value) = self.rels[idx].iter().find(|&&v| !b.contains(v)) {
                return Err(SemanticsError::OutOfRange {
                    symbol: name.to_string(),
                    value,
                });
            }
        }
        self.boolean = b;
        Ok(())
    }

    pub fn set_fn(&mut self, name: &str, table: Vec<u32>) -> Result<(), SemanticsError> {
        let idx = self
            .lang
            .functions
            .index_of(name)
            .ok_or_else(|| SemanticsError::Undeclared(name.to_string()))?;
        let arity = self.lang.functions.arity(name).expect("declared");
        let expected = table_len(self.size, arity);
        if table.len() != expected {
            return Err(SemanticsError::TableLength {
                symbol: name.to_string(),
                expected,
                found: table.len(),
            });
        }
        if let Some(&v) = table.iter().find(|&&v| v >= self.size) {
            return Err(SemanticsError::OutOfRange {
                symbol: name.to_string(),
                value: v as u64,
            });
        }
        self.fns[idx] = table;
        Ok(())
    }

    /// Relation values are elements of the structure's Boolean algebra.
    pub fn set_rel(&mut self, name: &str, table: Vec<u64>) -> Result<(), SemanticsError> {
        let idx = self
            .lang
            .predicates
            .index_of(name)
            .ok_or_else(|| SemanticsError::Undeclared(name.to_string()))?;
        let arity = self.lang.predicates.arity(name).expect("declared");
        let expected = table_len(self.size, arity);
        if table.len() != expected {
            return Err(SemanticsError::TableLength {
                symbol: name.to_string(),
                expected,
                found: table.len(),
            });
        }
        if let Some(&value) = table.iter().find(|&&v| !self.boolean.contains(v)) {
            return Err(SemanticsError::OutOfRange {
                symbol: name.to_string(),
                value,
            });
        }
        self.rels[idx] = table;
        Ok(())
    }

    /// Two-valued relation given by the set of tuples (as table indices) where it holds.
    pub fn set_rel_bool(&mut self, name: &str, table: &[bool]) -> Result<(), SemanticsError> {
        let one = self.boolean.one();
        self.set_rel(
            name,
            table.iter().map(|&b| if b { one } else { 0 }).collect(),
        )
    }

    pub fn fn_table(&self, name: &str) -> Option<&[u32]> {
        self.lang.functions.index_of(name).map(|i| &self.fns[i][..])
    }

    pub fn rel_table(&self, name: &str) -> Option<&[u64]> {
        self.lang
            .predicates
            .index_of(name)
            .map(|i| &self.rels[i][..])
    }

    pub fn eval_term(&self, t: &Term, env: &Env) -> Result<u32, SemanticsError> {
        env.check(self.size)?;
        let c = CompiledTerm::new(&self.lang, t)?;
        Ok(c.eval_env(self, env))
    }

    /// Value in the structure's Boolean algebra.
    pub fn eval_formula_b(&self, phi: &Formula, env: &Env) -> Result<u64, SemanticsError> {
        env.check(self.size)?;
        let c = CompiledFormula::new(&self.lang, phi)?;
        Ok(c.eval_env(self, env))
    }

    /// Two-valued reading: whether the value is the top element.
    pub fn eval_formula(&self, phi: &Formula, env: &Env) -> Result<bool, SemanticsError> {
        Ok(self.eval_formula_b(phi, env)? == self.boolean.one())
    }

    /// First environment (prefix length = rank, default 0, lexicographic
    /// order) at which `phi` is not the top element.
    pub fn find_counter_env(&self, phi: &Formula) -> Result<Option<Env>, SemanticsError> {
        let c = CompiledFormula::new(&self.lang, phi)?;
        Ok(c.find_counter_env(self))
    }

    pub fn is_valid(&self, phi: &Formula) -> Result<bool, SemanticsError> {
        Ok(self.find_counter_env(phi)?.is_none())
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "domain {}", self.size)?;
        if self.boolean.atoms() > 1 {
            writeln!(f, "boolean {}", self.boolean.atoms())?;
        }
        for ((name, _), table) in self.lang.functions.iter().zip(&self.fns) {
            write!(f, "fn {name}:")?;
            for v in table {
                write!(f, " {v}")?;
            }
            writeln!(f)?;
        }
        let eq = self.lang.equality();
        for ((name, _), table) in self.lang.predicates.iter().zip(&self.rels) {
            if self.identity_equality && Some(name) == eq {
                continue;
            }
            write!(f, "rel {name}:")?;
            for v in table {
                write!(f, " {v}")?;
            }
            writeln!(f)?;
        }
        if self.identity_equality {
            writeln!(f, "equality identity")?;
        } else if eq.is_some() {
            writeln!(f, "equality table")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::peano_core;

    fn unary() -> Language {
        Language::default().with_rel("r", 1).with_equality("e")
    }

    #[test]
    fn zmod3_terms() {
        let d = Structure::zmod(3).unwrap();
        let s0 = Term::app("S", vec![Term::constant("0")]);
        assert_eq!(d.eval_term(&s0, &Env::constant(0)).unwrap(), 1);
        let xx = Term::app("add", vec![Term::var(1), Term::var(1)]);
        assert_eq!(d.eval_term(&xx, &Env::new(vec![2], 0)).unwrap(), 1);
        assert_eq!(
            d.eval_term(&Term::var(2), &Env::new(vec![0, 1], 0))
                .unwrap(),
            1
        );
    }

    #[test]
    fn quantifier_is_a_meet() {
        let mut d = Structure::new(unary(), 2).unwrap();
        d.set_rel_bool("r", &[true, false]).unwrap();
        let all = Formula::forall(Formula::atom("r", vec![Term::var(1)]));
        assert!(!d.eval_formula(&all, &Env::default()).unwrap());
        let refl = Formula::forall(Formula::atom("e", vec![Term::var(1), Term::var(1)]));
        assert!(d.is_valid(&refl).unwrap());
        let one = Structure::new(unary(), 1).unwrap();
        let mut one = one;
        one.set_rel_bool("r", &[true]).unwrap();
        assert!(one.is_valid(&all).unwrap());
    }

    #[test]
    fn peano_in_zmod5() {
        let d = Structure::zmod(5).unwrap();
        let axioms = peano_core();
        assert_eq!(
            d.find_counter_env(&axioms[0]).unwrap(),
            Some(Env::new(vec![4], 0))
        );
        for s in &axioms[1..] {
            assert!(d.is_valid(s).unwrap(), "{s}");
        }
    }

    #[test]
    fn boolean_valued_meets() {
        let lang = Language::default().with_rel("r", 1).with_equality("e");
        let mut d = Structure::new(lang, 2).unwrap();
        d.set_boolean(FiniteBooleanAlg::new(2).unwrap()).unwrap();
        d.set_rel("r", vec![0b01, 0b11]).unwrap();
        let all = Formula::forall(Formula::atom("r", vec![Term::var(1)]));
        assert_eq!(d.eval_formula_b(&all, &Env::default()).unwrap(), 0b01);
        let e12 = Formula::atom("e", vec![Term::var(1), Term::var(2)]);
        assert_eq!(
            d.eval_formula_b(&e12, &Env::new(vec![1, 1], 0)).unwrap(),
            0b11
        );
        assert!(d.set_rel("r", vec![0b100, 0]).is_err());
    }

    #[test]
    fn env_printing_and_after() {
        assert_eq!(Env::new(vec![4], 0).to_string(), "[4 ; 0]");
        assert_eq!(Env::constant(0).to_string(), "[; 0]");
        let d = Structure::zmod(3).unwrap();
        let env = Env::new(vec![1, 2], 0);
        let s =
            Substitution::new(vec![Term::app("S", vec![Term::var(2)])], Tail::Shift(1)).unwrap();
        assert_eq!(env.after(&d, &s).unwrap(), Env::new(vec![0], 0));
        let c = Substitution::from_list(vec![Term::constant("0"), Term::var(1)]).unwrap();
        assert_eq!(env.after(&d, &c).unwrap(), Env::new(vec![0], 1));
    }

    #[test]
    fn table_validation() {
        let mut d = Structure::zmod(3).unwrap();
        assert!(d.set_fn("S", vec![0, 1]).is_err());
        assert!(d.set_fn("S", vec![0, 1, 3]).is_err());
        assert!(d.set_fn("nope", vec![]).is_err());
        assert!(Structure::new(unary(), 0).is_err());
        assert!(Env::new(vec![3], 0).check(3).is_err());
    }

    #[test]
    fn display_lists_tables() {
        let d = Structure::zmod(2).unwrap();
        assert_eq!(
            d.to_string(),
            "domain 2\nfn 0: 0\nfn S: 1 0\nfn add: 0 1 1 0\nfn mul: 0 0 0 1\nequality identity\n"
        );
    }
}
