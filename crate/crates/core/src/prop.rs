//! Proposition algebras `(P, &, ~)`.
//!
//! Two views live here. [`PropTerm`] is the free proposition algebra over a
//! set of names, decided by truth tables. [`FinitePropAlgebra`] is an
//! arbitrary finite algebra given by its operation tables, with no laws
//! assumed; valuations, filters, deductive closure and Lindenbaum quotients are
//! computed by brute force over subsets of the carrier.

use std::collections::hash_map::Entry;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Subset enumeration is exponential in the carrier size.
pub const DEFAULT_ENUMERATION_BOUND: usize = 16;

/// [`ElementSet`] is a single machine word.
pub const MAX_CARRIER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PropError {
    #[error("carrier of size {0} is not supported (1..={MAX_CARRIER})")]
    BadSize(usize),
    #[error("table entry {value} out of range for a carrier of size {size}")]
    OutOfRange { value: usize, size: usize },
    #[error("table has {found} entries, expected {expected}")]
    TableShape { expected: usize, found: usize },
    #[error("carrier size {size} exceeds the enumeration bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("the given set is not a filter")]
    NotAFilter,
    #[error("the filter does not induce a congruence ({0})")]
    NotACongruence(String),
    #[error("too many variables ({0}) for truth-table evaluation")]
    TooManyVariables(usize),
    #[error("fragment of depth {0} is not closed under the operations")]
    NotSaturated(usize),
}

/// A term of the free proposition algebra. Only `~` and `&` are stored; the
/// other connectives are constructors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropTerm {
    Var(Arc<str>),
    Not(Box<PropTerm>),
    And(Box<PropTerm>, Box<PropTerm>),
}

/// Derived connectives accepted by [`expand_sugar`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sugar {
    Or,
    Imp,
    Iff,
}

pub fn expand_sugar(kind: Sugar, p: PropTerm, q: PropTerm) -> PropTerm {
    match kind {
        Sugar::Or => PropTerm::or(p, q),
        Sugar::Imp => PropTerm::imp(p, q),
        Sugar::Iff => PropTerm::iff(p, q),
    }
}

impl PropTerm {
    pub fn var(name: &str) -> PropTerm {
        PropTerm::Var(Arc::from(name))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(p: PropTerm) -> PropTerm {
        PropTerm::Not(Box::new(p))
    }

    pub fn and(p: PropTerm, q: PropTerm) -> PropTerm {
        PropTerm::And(Box::new(p), Box::new(q))
    }

    pub fn or(p: PropTerm, q: PropTerm) -> PropTerm {
        PropTerm::not(PropTerm::and(PropTerm::not(p), PropTerm::not(q)))
    }

    pub fn imp(p: PropTerm, q: PropTerm) -> PropTerm {
        PropTerm::or(PropTerm::not(p), q)
    }

    pub fn iff(p: PropTerm, q: PropTerm) -> PropTerm {
        PropTerm::and(PropTerm::imp(p.clone(), q.clone()), PropTerm::imp(q, p))
    }

    /// `p -> (p & p)`.
    pub fn axiom_a1(p: PropTerm) -> PropTerm {
        PropTerm::imp(p.clone(), PropTerm::and(p.clone(), p))
    }

    /// `(p & q) -> p`.
    pub fn axiom_a2(p: PropTerm, q: PropTerm) -> PropTerm {
        PropTerm::imp(PropTerm::and(p.clone(), q), p)
    }

    /// `(p -> q) -> (~(q & r) -> ~(r & p))`.
    pub fn axiom_a3(p: PropTerm, q: PropTerm, r: PropTerm) -> PropTerm {
        PropTerm::imp(
            PropTerm::imp(p.clone(), q.clone()),
            PropTerm::imp(
                PropTerm::not(PropTerm::and(q, r.clone())),
                PropTerm::not(PropTerm::and(r, p)),
            ),
        )
    }

    pub fn variables(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            PropTerm::Var(v) => {
                out.insert(v.clone());
            }
            PropTerm::Not(p) => p.collect_vars(out),
            PropTerm::And(p, q) => {
                p.collect_vars(out);
                q.collect_vars(out);
            }
        }
    }

    pub fn eval(&self, assignment: &dyn Fn(&str) -> bool) -> bool {
        match self {
            PropTerm::Var(v) => assignment(v),
            PropTerm::Not(p) => !p.eval(assignment),
            PropTerm::And(p, q) => p.eval(assignment) && q.eval(assignment),
        }
    }

    /// Truth table over `vars` as a bitmask: bit `a` is the value under the
    /// assignment whose k-th bit gives `vars[k]`.
    pub fn truth_table(&self, vars: &[Arc<str>]) -> Result<u64, PropError> {
        if vars.len() > 6 {
            return Err(PropError::TooManyVariables(vars.len()));
        }
        let mut table = 0u64;
        for a in 0..(1u64 << vars.len()) {
            let value = self.eval(&|name| {
                vars.iter()
                    .position(|v| &**v == name)
                    .map(|k| a >> k & 1 == 1)
                    .unwrap_or(false)
            });
            if value {
                table |= 1 << a;
            }
        }
        Ok(table)
    }

    fn as_not(&self) -> Option<&PropTerm> {
        match self {
            PropTerm::Not(p) => Some(p),
            _ => None,
        }
    }

    fn as_imp(&self) -> Option<(&PropTerm, &PropTerm)> {
        let PropTerm::And(a, b) = self.as_not()? else {
            return None;
        };
        Some((a.as_not()?.as_not()?, b.as_not()?))
    }

    fn as_or(&self) -> Option<(&PropTerm, &PropTerm)> {
        let PropTerm::And(a, b) = self.as_not()? else {
            return None;
        };
        Some((a.as_not()?, b.as_not()?))
    }

    fn as_iff(&self) -> Option<(&PropTerm, &PropTerm)> {
        let PropTerm::And(a, b) = self else {
            return None;
        };
        let (p, q) = a.as_imp()?;
        let (q2, p2) = b.as_imp()?;
        (p == p2 && q == q2).then_some((p, q))
    }

    pub fn depth(&self) -> usize {
        match self {
            PropTerm::Var(_) => 0,
            PropTerm::Not(p) => 1 + p.depth(),
            PropTerm::And(p, q) => 1 + p.depth().max(q.depth()),
        }
    }
}

impl fmt::Display for PropTerm {
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
        }
        match self {
            PropTerm::Var(v) => write!(f, "{v}"),
            PropTerm::Not(p) if f.alternate() => write!(f, "~{p:#}"),
            PropTerm::Not(p) => write!(f, "~{p}"),
            PropTerm::And(p, q) if f.alternate() => write!(f, "({p:#} & {q:#})"),
            PropTerm::And(p, q) => write!(f, "({p} & {q})"),
        }
    }
}

fn all_assignments<'a>(
    vars: &'a [Arc<str>],
) -> Result<impl Iterator<Item = impl Fn(&str) -> bool + 'a> + 'a, PropError> {
    if vars.len() > 24 {
        return Err(PropError::TooManyVariables(vars.len()));
    }
    Ok((0u64..(1u64 << vars.len())).map(move |a| {
        move |name: &str| {
            vars.iter()
                .position(|v| &**v == name)
                .map(|k| a >> k & 1 == 1)
                .unwrap_or(false)
        }
    }))
}

/// True iff `phi` holds under every 0/1 assignment to its variables.
pub fn tautology(phi: &PropTerm) -> Result<bool, PropError> {
    Ok(falsifying_assignment(phi)?.is_none())
}

/// Variable names paired with truth values.
pub type Assignment = Vec<(Arc<str>, bool)>;

/// The first assignment under which `phi` is false.
pub fn falsifying_assignment(phi: &PropTerm) -> Result<Option<Assignment>, PropError> {
    let vars: Vec<Arc<str>> = phi.variables().into_iter().collect();
    for (a, val) in all_assignments(&vars)?.enumerate() {
        if !phi.eval(&val) {
            let shown = vars
                .iter()
                .enumerate()
                .map(|(k, v)| (v.clone(), a >> k & 1 == 1))
                .collect();
            return Ok(Some(shown));
        }
    }
    Ok(None)
}

/// True iff every assignment satisfying all of `theory` satisfies `phi`.
pub fn semantic_consequence(theory: &[PropTerm], phi: &PropTerm) -> Result<bool, PropError> {
    let mut vars = phi.variables();
    for t in theory {
        vars.extend(t.variables());
    }
    let vars: Vec<Arc<str>> = vars.into_iter().collect();
    for val in all_assignments(&vars)? {
        if theory.iter().all(|t| t.eval(&val)) && !phi.eval(&val) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A subset of the carrier of a [`FinitePropAlgebra`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    bits: u64,
    width: usize,
}

impl ElementSet {
    pub fn empty(width: usize) -> Self {
        ElementSet { bits: 0, width }
    }

    pub fn full(width: usize) -> Self {
        ElementSet {
            bits: full_mask(width),
            width,
        }
    }

    pub fn from_bits(bits: u64, width: usize) -> Self {
        ElementSet {
            bits: bits & full_mask(width),
            width,
        }
    }

    pub fn from_elements(width: usize, elements: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(width);
        for e in elements {
            s.insert(e);
        }
        s
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn contains(&self, e: usize) -> bool {
        e < self.width && self.bits >> e & 1 == 1
    }

    pub fn insert(&mut self, e: usize) {
        assert!(
            e < self.width,
            "element {e} outside carrier of size {}",
            self.width
        );
        self.bits |= 1 << e;
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            bits: self.bits & other.bits,
            width: self.width,
        }
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            bits: self.bits | other.bits,
            width: self.width,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.width).filter(move |&e| self.contains(e))
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, e) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

fn full_mask(width: usize) -> u64 {
    if width >= 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}

/// A proposition algebra on `{0, ..., n-1}` given by its tables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinitePropAlgebra {
    size: usize,
    and_table: Vec<usize>,
    not_table: Vec<usize>,
}

impl FinitePropAlgebra {
    /// `and_table` is row-major: entry `i * n + j` is `i & j`.
    pub fn new(
        size: usize,
        and_table: Vec<usize>,
        not_table: Vec<usize>,
    ) -> Result<Self, PropError> {
        if size == 0 || size > MAX_CARRIER {
            return Err(PropError::BadSize(size));
        }
        if and_table.len() != size * size {
            return Err(PropError::TableShape {
                expected: size * size,
                found: and_table.len(),
            });
        }
        if not_table.len() != size {
            return Err(PropError::TableShape {
                expected: size,
                found: not_table.len(),
            });
        }
        if let Some(&value) = and_table.iter().chain(&not_table).find(|&&v| v >= size) {
            return Err(PropError::OutOfRange { value, size });
        }
        Ok(FinitePropAlgebra {
            size,
            and_table,
            not_table,
        })
    }

    /// The two-element Boolean algebra; 1 is true.
    pub fn two() -> Self {
        Self::boolean_power(1)
    }

    /// The Boolean algebra of subsets of a `k`-element set, elements as bitmasks.
    pub fn boolean_power(k: usize) -> Self {
        assert!(k <= 6, "2^{k} elements exceed MAX_CARRIER");
        let n = 1usize << k;
        let full = n - 1;
        let and_table = (0..n * n).map(|ij| (ij / n) & (ij % n)).collect();
        let not_table = (0..n).map(|i| full & !i).collect();
        Self::new(n, and_table, not_table).expect("well-formed")
    }

    /// The free Boolean algebra on `generators` generators: truth tables on
    /// `2^generators` assignments.
    pub fn free_boolean(generators: usize) -> Self {
        Self::boolean_power(1 << generators)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn and(&self, p: usize, q: usize) -> usize {
        self.and_table[p * self.size + q]
    }

    pub fn not(&self, p: usize) -> usize {
        self.not_table[p]
    }

    pub fn or(&self, p: usize, q: usize) -> usize {
        self.not(self.and(self.not(p), self.not(q)))
    }

    pub fn imp(&self, p: usize, q: usize) -> usize {
        self.or(self.not(p), q)
    }

    pub fn iff(&self, p: usize, q: usize) -> usize {
        self.and(self.imp(p, q), self.imp(q, p))
    }

    pub fn and_row(&self, p: usize) -> &[usize] {
        &self.and_table[p * self.size..(p + 1) * self.size]
    }

    pub fn not_table(&self) -> &[usize] {
        &self.not_table
    }

    pub fn carrier(&self) -> ElementSet {
        ElementSet::full(self.size)
    }

    fn check_bound(&self, bound: usize) -> Result<(), PropError> {
        if self.size > bound {
            Err(PropError::TooLarge {
                size: self.size,
                bound,
            })
        } else {
            Ok(())
        }
    }

    /// `p in V iff ~p not in V`, and `p & q in V iff p in V and q in V`.
    pub fn is_valuation(&self, v: &ElementSet) -> bool {
        let n = self.size;
        (0..n).all(|p| v.contains(p) != v.contains(self.not(p)))
            && (0..n).all(|p| {
                (0..n).all(|q| v.contains(self.and(p, q)) == (v.contains(p) && v.contains(q)))
            })
    }

    /// Every valuation, in ascending bitset order.
    pub fn enumerate_valuations(&self) -> Result<Vec<ElementSet>, PropError> {
        self.enumerate_valuations_bounded(DEFAULT_ENUMERATION_BOUND)
    }

    pub fn enumerate_valuations_bounded(&self, bound: usize) -> Result<Vec<ElementSet>, PropError> {
        self.check_bound(bound)?;
        Ok(self.subsets().filter(|s| self.is_valuation(s)).collect())
    }

    fn subsets(&self) -> impl Iterator<Item = ElementSet> + '_ {
        (0u64..(1u64 << self.size)).map(move |b| ElementSet::from_bits(b, self.size))
    }

    /// Intersection of all valuations; the whole carrier when there are none.
    pub fn val_set(&self) -> Result<ElementSet, PropError> {
        Ok(intersect_all(self.size, &self.enumerate_valuations()?))
    }

    /// All values of the axiom schemata A1–A3 in this algebra.
    pub fn axiom_elements(&self) -> ElementSet {
        let n = self.size;
        let mut out = ElementSet::empty(n);
        for p in 0..n {
            out.insert(self.imp(p, self.and(p, p)));
            for q in 0..n {
                out.insert(self.imp(self.and(p, q), p));
                let pq = self.imp(p, q);
                for r in 0..n {
                    let rhs = self.imp(self.not(self.and(q, r)), self.not(self.and(r, p)));
                    out.insert(self.imp(pq, rhs));
                }
            }
        }
        out
    }

    pub fn is_mp_closed(&self, f: &ElementSet) -> bool {
        let n = self.size;
        (0..n)
            .filter(|&p| f.contains(p))
            .all(|p| (0..n).all(|q| !f.contains(self.imp(p, q)) || f.contains(q)))
    }

    pub fn is_filter(&self, f: &ElementSet) -> bool {
        self.axiom_elements().is_subset(f) && self.is_mp_closed(f)
    }

    /// Least MP-closed superset of `t` containing every axiom.
    pub fn ded_closure(&self, t: &ElementSet) -> ElementSet {
        let n = self.size;
        let mut f = t.union(&self.axiom_elements());
        loop {
            let mut next = f;
            for p in f.iter() {
                for q in 0..n {
                    if f.contains(self.imp(p, q)) {
                        next.insert(q);
                    }
                }
            }
            if next == f {
                return f;
            }
            f = next;
        }
    }

    /// Whether `t` generates a proper filter.
    pub fn is_consistent(&self, t: &ElementSet) -> bool {
        let d = self.ded_closure(t);
        (0..self.size).all(|p| !(d.contains(p) && d.contains(self.not(p))))
    }

    /// All filters, in ascending bitset order.
    pub fn enumerate_filters(&self) -> Result<Vec<ElementSet>, PropError> {
        self.check_bound(DEFAULT_ENUMERATION_BOUND)?;
        let axioms = self.axiom_elements();
        Ok(self
            .subsets()
            .filter(|s| axioms.is_subset(s) && self.is_mp_closed(s))
            .collect())
    }

    /// Maximality by definition: a proper filter contained in no strictly
    /// larger proper filter.
    pub fn is_maximal_filter(&self, f: &ElementSet) -> Result<bool, PropError> {
        let carrier = self.carrier();
        if !self.is_filter(f) || *f == carrier {
            return Ok(false);
        }
        let filters = self.enumerate_filters()?;
        Ok(!filters
            .iter()
            .any(|g| *g != carrier && g != f && f.is_subset(g)))
    }

    /// Maximality by the negation criterion: `p in F iff ~p not in F`.
    pub fn is_maximal_by_negation(&self, f: &ElementSet) -> bool {
        self.is_filter(f) && (0..self.size).all(|p| f.contains(p) != f.contains(self.not(p)))
    }

    /// Laws (i)–(iv): associativity, commutativity, and the two
    /// complementation conditions relating `p & ~q` to the elements `r & ~r`.
    pub fn is_boolean(&self) -> bool {
        let n = self.size;
        for p in 0..n {
            for q in 0..n {
                if self.and(p, q) != self.and(q, p) {
                    return false;
                }
                let pnq = self.and(p, self.not(q));
                let absorbs = self.and(p, q) == p;
                for r in 0..n {
                    if self.and(p, self.and(q, r)) != self.and(self.and(p, q), r) {
                        return false;
                    }
                    let bottom = self.and(r, self.not(r));
                    if pnq == bottom && !absorbs {
                        return false;
                    }
                    if absorbs && pnq != bottom {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Filter criterion valid in Boolean algebras: closed under `&`, upward
    /// closed under `|`, and containing 1.
    pub fn is_boolean_filter(&self, f: &ElementSet) -> bool {
        let n = self.size;
        let one = self.or(0, self.not(0));
        f.contains(one)
            && f.iter().all(|p| {
                (0..n).all(|q| {
                    (!f.contains(q) || f.contains(self.and(p, q))) && f.contains(self.or(p, q))
                })
            })
    }

    /// Quotient by `p ~ q iff (p <-> q) in F`.
    pub fn lindenbaum(&self, f: &ElementSet) -> Result<Quotient, PropError> {
        if !self.is_filter(f) {
            return Err(PropError::NotAFilter);
        }
        let n = self.size;
        let related = |p: usize, q: usize| f.contains(self.iff(p, q));
        let mut reps: Vec<usize> = Vec::new();
        let mut projection = Vec::with_capacity(n);
        for p in 0..n {
            match reps.iter().position(|&r| related(p, r)) {
                Some(c) => projection.push(c),
                None => {
                    projection.push(reps.len());
                    reps.push(p);
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                if related(p, q) != (projection[p] == projection[q]) {
                    return Err(PropError::NotACongruence(format!(
                        "relation is not an equivalence at ({p}, {q})"
                    )));
                }
            }
        }
        let k = reps.len();
        let mut and_table = vec![0usize; k * k];
        let mut not_table = vec![0usize; k];
        for p in 0..n {
            let cp = projection[p];
            let neg = projection[self.not(p)];
            if p == reps[cp] {
                not_table[cp] = neg;
            } else if not_table[cp] != neg {
                return Err(PropError::NotACongruence(format!(
                    "~ not compatible at {p}"
                )));
            }
            for q in 0..n {
                let cq = projection[q];
                let v = projection[self.and(p, q)];
                if p == reps[cp] && q == reps[cq] {
                    and_table[cp * k + cq] = v;
                } else if and_table[cp * k + cq] != v {
                    return Err(PropError::NotACongruence(format!(
                        "& not compatible at ({p}, {q})"
                    )));
                }
            }
        }
        let algebra = FinitePropAlgebra::new(k, and_table, not_table)?;
        Ok(Quotient {
            algebra,
            projection,
        })
    }
}

impl fmt::Display for FinitePropAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.size)?;
        f.write_str("not:")?;
        for v in &self.not_table {
            write!(f, " {v}")?;
        }
        writeln!(f)?;
        for i in 0..self.size {
            write!(f, "and {i}:")?;
            for v in self.and_row(i) {
                write!(f, " {v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A quotient algebra together with the class of every original element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub algebra: FinitePropAlgebra,
    pub projection: Vec<usize>,
}

pub fn intersect_all(width: usize, sets: &[ElementSet]) -> ElementSet {
    sets.iter()
        .fold(ElementSet::full(width), |acc, s| acc.intersection(s))
}

/// Depth-bounded fragment of the free proposition algebra, modulo
/// truth-table equivalence. Each class keeps the first representative found.
#[derive(Debug, Clone)]
pub struct FreeFragment {
    pub vars: Vec<Arc<str>>,
    pub depth: usize,
    /// `(representative, truth table)`, in discovery order.
    pub classes: Vec<(PropTerm, u64)>,
}

impl FreeFragment {
    /// Classes of all terms of depth `<= depth` over `vars`. Because `~` and
    /// `&` respect truth-table equivalence, iterating on representatives gives
    /// exactly the classes of the full fragment.
    pub fn build(vars: &[&str], depth: usize) -> Result<Self, PropError> {
        if vars.len() > 6 {
            return Err(PropError::TooManyVariables(vars.len()));
        }
        let names: Vec<Arc<str>> = vars.iter().map(|v| Arc::from(*v)).collect();
        let mut classes: Vec<(PropTerm, u64)> = Vec::new();
        let mut seen: HashMap<u64, usize> = HashMap::new();
        for v in &names {
            let t = PropTerm::Var(v.clone());
            let tt = t.truth_table(&names)?;
            if let Entry::Vacant(e) = seen.entry(tt) {
                e.insert(classes.len());
                classes.push((t, tt));
            }
        }
        let full = full_mask(1 << names.len());
        for _ in 0..depth {
            let level = classes.clone();
            for (p, tp) in &level {
                let tn = full & !tp;
                if let Entry::Vacant(e) = seen.entry(tn) {
                    e.insert(classes.len());
                    classes.push((PropTerm::not(p.clone()), tn));
                }
            }
            for (p, tp) in &level {
                for (q, tq) in &level {
                    let ta = tp & tq;
                    if let Entry::Vacant(e) = seen.entry(ta) {
                        e.insert(classes.len());
                        classes.push((PropTerm::and(p.clone(), q.clone()), ta));
                    }
                }
            }
        }
        Ok(FreeFragment {
            vars: names,
            depth,
            classes,
        })
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// The Lindenbaum algebra of the fragment: classes with the induced
    /// operations. Fails unless the classes are closed under `~` and `&`.
    pub fn lindenbaum(&self) -> Result<FinitePropAlgebra, PropError> {
        let index: HashMap<u64, usize> = self
            .classes
            .iter()
            .enumerate()
            .map(|(i, (_, t))| (*t, i))
            .collect();
        let full = full_mask(1 << self.vars.len());
        let k = self.classes.len();
        let lookup = |t: u64| {
            index
                .get(&t)
                .copied()
                .ok_or(PropError::NotSaturated(self.depth))
        };
        let mut and_table = Vec::with_capacity(k * k);
        for (_, a) in &self.classes {
            for (_, b) in &self.classes {
                and_table.push(lookup(a & b)?);
            }
        }
        let not_table = self
            .classes
            .iter()
            .map(|(_, a)| lookup(full & !a))
            .collect::<Result<Vec<_>, _>>()?;
        FinitePropAlgebra::new(k, and_table, not_table)
    }
}

/// Justification of a step in a propositional proof.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropJustification {
    AxiomA1(PropTerm),
    AxiomA2(PropTerm, PropTerm),
    AxiomA3(PropTerm, PropTerm, PropTerm),
    /// Index into the hypothesis list.
    Hypothesis(usize),
    /// Steps `j` and `k` with `p_k = p_j -> p_i`.
    ModusPonens(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropStep {
    pub formula: PropTerm,
    pub justification: PropJustification,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PropProof {
    pub steps: Vec<PropStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {step}: {reason}")]
pub struct PropProofError {
    pub step: usize,
    pub reason: String,
}

impl PropProof {
    pub fn conclusion(&self) -> Option<&PropTerm> {
        self.steps.last().map(|s| &s.formula)
    }
}

/// Checks every step of `proof` against its justification.
pub fn check_prop_proof(proof: &PropProof, hypotheses: &[PropTerm]) -> Result<(), PropProofError> {
    if proof.steps.is_empty() {
        return Err(PropProofError {
            step: 0,
            reason: "empty proof".into(),
        });
    }
    for (i, step) in proof.steps.iter().enumerate() {
        let fail = |reason: String| PropProofError { step: i, reason };
        let expected = match &step.justification {
            PropJustification::AxiomA1(p) => PropTerm::axiom_a1(p.clone()),
            PropJustification::AxiomA2(p, q) => PropTerm::axiom_a2(p.clone(), q.clone()),
            PropJustification::AxiomA3(p, q, r) => {
                PropTerm::axiom_a3(p.clone(), q.clone(), r.clone())
            }
            PropJustification::Hypothesis(k) => hypotheses
                .get(*k)
                .cloned()
                .ok_or_else(|| fail(format!("no hypothesis {k}")))?,
            PropJustification::ModusPonens(j, k) => {
                if *j >= i || *k >= i {
                    return Err(fail(format!("mp {j} {k} refers forward")));
                }
                let want = PropTerm::imp(proof.steps[*j].formula.clone(), step.formula.clone());
                if proof.steps[*k].formula != want {
                    return Err(fail(format!("step {k} is not step {j} -> this formula")));
                }
                continue;
            }
        };
        if expected != step.formula {
            return Err(fail(format!(
                "formula does not match justification (expected {expected})"
            )));
        }
    }
    Ok(())
}
