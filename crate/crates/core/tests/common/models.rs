use std::sync::Arc;

use clone_logic::enumerate::formulas_up_to;
use clone_logic::random::rng;
use clone_logic::semantics::{FiniteBooleanAlg, QaCases, QaReport, StructureSpace};
use clone_logic::syntax::parse_formula;
use clone_logic::{Formula, Language, Term};

pub fn qa_language() -> Language {
    Language::default().with_rel("r", 2).with_equality("e")
}

/// Formulas of height at most 2 over `r(xi, xj)` with `i, j <= 3`, keeping
/// those of rank at most `rank_bound`.
pub fn qa_sample(rank_bound: u32) -> Vec<Formula> {
    let atoms: Vec<Formula> = (1..=3)
        .flat_map(|i| (1..=3).map(move |j| Formula::atom("r", vec![Term::Var(i), Term::Var(j)])))
        .collect();
    formulas_up_to(&atoms, 2)
        .into_iter()
        .flatten()
        .filter(|p| p.rank() <= rank_bound)
        .collect()
}

/// How the relation tables of one domain size and algebra were covered.
pub struct QaRun {
    pub size: u32,
    pub atoms: u32,
    pub structures: u64,
    pub exhaustive: bool,
    pub report: QaReport,
}

/// Runs the compiled cases in every structure of the given size and
/// algebra, or in `samples` seeded random ones when there are more than
/// `limit`.
pub fn qa_run(
    cases: &QaCases,
    size: u32,
    atoms: u32,
    limit: u128,
    samples: usize,
    seed: u64,
) -> QaRun {
    let lang = Arc::new(qa_language());
    let b = FiniteBooleanAlg::new(atoms).unwrap();
    let space = StructureSpace::full(lang, size, b).unwrap();
    let mut report: Option<QaReport> = None;
    let mut merge = |r: QaReport| match &mut report {
        Some(acc) => acc.absorb(r),
        None => report = Some(r),
    };
    let (structures, exhaustive) = match space.count() {
        Some(n) if n <= limit => {
            for i in 0..n {
                merge(cases.check(&space.nth(i)));
            }
            (n as u64, true)
        }
        _ => {
            let mut r = rng(seed);
            for _ in 0..samples {
                merge(cases.check(&space.random(&mut r)));
            }
            (samples as u64, false)
        }
    };
    QaRun {
        size,
        atoms,
        structures,
        exhaustive,
        report: report.expect("at least one structure"),
    }
}

pub fn countermodel_language() -> Language {
    Language::default()
        .with_fn("c", 0)
        .with_fn("f", 1)
        .with_rel("P", 1)
        .with_rel("R", 2)
}

/// Ten fixed formulas for the determinism check.
pub const COUNTERMODEL_SUITE: [&str; 10] = [
    "P(x1)",
    "(P(x1) -> forall P(x1))",
    "(P(c) -> P(f(c)))",
    "R(x1, f(x1))",
    "(R(x1, x2) -> R(x2, x1))",
    "exists P(x1)",
    "(forall R(x1, x2) | ~R(c, x1))",
    "(P(f(x1)) -> P(x1))",
    "~(P(c) & ~P(f(f(c))))",
    "(P(x1) | P(f(x1)))",
];

pub fn countermodel_suite(lang: &Language) -> Vec<Formula> {
    COUNTERMODEL_SUITE
        .iter()
        .map(|s| parse_formula(lang, s).unwrap())
        .collect()
}

/// Canonical printed forms of S1–S7, with S7 taken over the schematic
/// predicate `P/1`.
pub const PEANO_CANONICAL: [&str; 7] = [
    "~e(0, S(x1))",
    "(e(S(x1), S(x2)) -> e(x1, x2))",
    "e(add(x1, 0), x1)",
    "e(add(x1, S(x2)), S(add(x1, x2)))",
    "e(mul(x1, 0), 0)",
    "e(mul(x1, S(x2)), add(mul(x1, x2), x1))",
    "((P(0) & forall (P(x1) -> P(S(x1)))) -> forall P(x1))",
];
