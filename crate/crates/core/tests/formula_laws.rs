mod common;

use clone_logic::random::{rng, Generator, Shape};
use clone_logic::syntax::{parse_formula, parse_term};
use clone_logic::{Formula, Substitution};
use common::laws::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn identities_hold(seed in any::<u64>()) {
        let lang = law_language();
        let case = LawCase::draw(&generator(&lang), &mut rng(seed));
        prop_assert_eq!(check_identities(&case), Ok(()));
    }

    #[test]
    fn substitution_commutes_with_connectives(seed in any::<u64>()) {
        let lang = law_language();
        let g = generator(&lang);
        let mut r = rng(seed);
        let (p, q, s) = (g.formula(&mut r), g.formula(&mut r), g.substitution(&mut r));
        prop_assert_eq!(Formula::not(p.clone()).subst(&s), Formula::not(p.subst(&s)));
        prop_assert_eq!(
            Formula::and(p.clone(), q.clone()).subst(&s),
            Formula::and(p.subst(&s), q.subst(&s))
        );
    }

    #[test]
    fn fsubst_respects_the_language(seed in any::<u64>()) {
        let lang = law_language();
        let g = generator(&lang);
        let mut r = rng(seed);
        let (p, s) = (g.formula(&mut r), g.substitution(&mut r));
        prop_assert_eq!(lang.fsubst(&p, &s).unwrap(), p.subst(&s));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]
    #[test]
    fn printing_round_trips(seed in any::<u64>()) {
        let lang = law_language();
        let g = Generator::new(&lang, Shape { formula_depth: 4, ..Shape::default() });
        let mut r = rng(seed);
        let p = g.formula(&mut r);
        prop_assert_eq!(parse_formula(&lang, &p.to_string()).unwrap(), p.clone());
        prop_assert_eq!(parse_formula(&lang, &format!("{p:#}")).unwrap(), p);
        let t = g.term(&mut r);
        prop_assert_eq!(parse_term(&lang, &t.to_string()).unwrap(), t);
    }
}

#[test]
fn substitution_under_a_binder_lifts() {
    let lang = Language::default().with_fn("f", 1).with_rel("r", 2);
    let p = parse_formula(&lang, "forall r(x1, x2)").unwrap();
    let s = Substitution::from_list(vec![parse_term(&lang, "f(x1)").unwrap()]).unwrap();
    assert_eq!(
        p.subst(&s),
        parse_formula(&lang, "forall r(x1, f(x2))").unwrap()
    );
}

use clone_logic::Language;
