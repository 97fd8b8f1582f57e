use clone_logic::random::{Generator, Shape};
use clone_logic::{Formula, Language, Substitution, Tail, Term};
use rand::Rng;

pub fn law_language() -> Language {
    Language::default()
        .with_fn("c", 0)
        .with_fn("g", 1)
        .with_fn("h", 2)
        .with_rel("P", 1)
        .with_rel("R", 2)
}

/// Least `n` with `p[x1, ..., xn, xn, ...] = p`, or 0 when `p` is also fixed
/// by the constant sequences `[x1, x1, ...]` and `[x2, x2, ...]`.
pub fn rank_oracle(p: &Formula) -> u32 {
    let constant = |i| Substitution::new(vec![], Tail::Const(Term::Var(i))).unwrap();
    if p.subst(&constant(1)) == *p && p.subst(&constant(2)) == *p {
        return 0;
    }
    (1..=64)
        .find(|&n| p.subst(&Substitution::truncation(n)) == *p)
        .expect("rank below 64")
}

/// One randomized instance of the identity suite.
pub struct LawCase {
    pub p: Formula,
    pub sigma: Substitution,
    pub tau: Substitution,
    pub a: Term,
    pub i: u32,
}

impl LawCase {
    pub fn draw<R: Rng>(g: &Generator<'_>, rng: &mut R) -> LawCase {
        LawCase {
            p: g.formula(rng),
            sigma: g.substitution(rng),
            tau: g.substitution(rng),
            a: g.term(rng),
            i: rng.gen_range(1..=4),
        }
    }
}

pub fn generator(lang: &Language) -> Generator<'_> {
    Generator::new(lang, Shape::default())
}

/// Names of the identities, in the order `check_identities` reports them.
pub const IDENTITIES: [&str; 14] = [
    "(p+)- = p",
    "(p-)+ = p*",
    "forall x1.p = (forall p)+",
    "forall p = (forall x1.p)-",
    "T1 composition",
    "T2 identity",
    "lift law",
    "rank item 1",
    "rank item 2",
    "rank item 3",
    "rank item 4",
    "rank item 5",
    "rank item 6",
    "rank agrees with oracle",
];

/// Evaluates every identity on one case; `Err` names the first that fails.
pub fn check_identities(c: &LawCase) -> Result<(), String> {
    let p = &c.p;
    let fail = |k: usize| Err(format!("{} fails for p = {p}", IDENTITIES[k]));
    if p.plus().minus() != *p {
        return fail(0);
    }
    if p.minus().plus() != p.star() {
        return fail(1);
    }
    if Formula::forall_xi(1, p) != Formula::forall(p.clone()).plus() {
        return fail(2);
    }
    if Formula::forall(p.clone()) != Formula::forall_xi(1, p).minus() {
        return fail(3);
    }
    if p.subst(&c.sigma).subst(&c.tau) != p.subst(&c.sigma.compose(&c.tau)) {
        return fail(4);
    }
    if p.subst(&Substitution::identity()) != *p {
        return fail(5);
    }
    if Formula::forall(p.clone()).subst(&c.sigma) != Formula::forall(p.subst(&c.sigma.lift())) {
        return fail(6);
    }
    let n = p.rank();
    let all = Formula::forall(p.clone());
    if n == 0 && !all.is_sentence() {
        return fail(7);
    }
    if n > 0 && all.rank() != n - 1 {
        return fail(8);
    }
    if !Formula::forall_n(p.clone(), n as usize).is_sentence() {
        return fail(9);
    }
    let at_x1 = p.subst(&Substitution::from_list(vec![Term::Var(1)]).unwrap());
    if !Formula::forall(at_x1).is_sentence() {
        return fail(10);
    }
    let bound = Formula::forall_xi(c.i, p);
    let mut prefix: Vec<Term> = (1..c.i).map(Term::Var).collect();
    prefix.push(c.a.clone());
    let touch_i = Substitution::new(prefix, Tail::Shift(0)).unwrap();
    if bound.subst(&touch_i) != bound {
        return fail(11);
    }
    let nested = (1..=n)
        .rev()
        .fold(p.clone(), |q, i| Formula::forall_xi(i, &q));
    if !nested.is_sentence() || !p.close_off().is_sentence() {
        return fail(12);
    }
    if n != rank_oracle(p) {
        return fail(13);
    }
    Ok(())
}
