//! Clone-indexed first-order logic: terms and substitutions, formulas as a
//! quantifier algebra, Hilbert-style proofs, and finite-model semantics.

pub mod enumerate;
pub mod formula;
pub mod proof;
pub mod prop;
pub mod random;
pub mod semantics;
pub mod soundness;
pub mod syntax;
pub mod terms;

pub use formula::{Formula, FormulaError, Language, PredicateType};
pub use terms::{FunctionType, Substitution, Symbol, Tail, Term, TermError};
