mod common;

use clone_logic::proof::{check_proof, derives, ProofKind, Theory};
use clone_logic::semantics::{countermodel_search, SearchOptions};
use common::*;

#[test]
fn corpus_has_the_required_mix() {
    let c = load_corpus();
    let local = c
        .predicate
        .iter()
        .filter(|p| p.proof.kind == ProofKind::Local)
        .count();
    let global = c.predicate.len() - local;
    assert!(local >= 3 && global >= 4 && c.prop.len() >= 3);
}

#[test]
fn every_corpus_proof_is_accepted() {
    let c = load_corpus();
    for case in &c.predicate {
        if let Err(e) = check_proof(&c.lang, &case.proof, &case.theory) {
            panic!("{}: {e}", case.name);
        }
        let goal = case.proof.conclusion().unwrap();
        assert!(derives(&c.lang, &case.theory, goal, &case.proof));
    }
    for case in &c.prop {
        assert!(check_prop(case, &case.proof), "{}", case.name);
    }
}

#[test]
fn every_single_step_mutant_is_rejected() {
    let c = load_corpus();
    let mut total = 0;
    for case in &c.predicate {
        for m in predicate_mutants(&c.lang, case) {
            assert!(
                !check_predicate(&c.lang, case, &m.proof),
                "accepted mutant: {}",
                m.label
            );
            total += 1;
        }
    }
    for case in &c.prop {
        for m in prop_mutants(case) {
            assert!(!check_prop(case, &m.proof), "accepted mutant: {}", m.label);
            total += 1;
        }
    }
    assert!(total >= 100, "only {total} mutants");
}

#[test]
fn local_proofs_are_global_proofs() {
    let c = load_corpus();
    for case in c
        .predicate
        .iter()
        .filter(|p| p.proof.kind == ProofKind::Local)
    {
        let mut p = case.proof.clone();
        p.kind = ProofKind::Global;
        assert!(
            check_proof(&c.lang, &p, &case.theory).is_ok(),
            "{}",
            case.name
        );
    }
}

#[test]
fn global_theorems_of_the_empty_theory_are_valid_in_small_structures() {
    let c = load_corpus();
    let opts = SearchOptions {
        max_size: 3,
        ..SearchOptions::default()
    };
    let empty = Theory::new("Empty", vec![]);
    let mut checked = 0;
    for case in c.predicate.iter().filter(|p| p.theory == empty) {
        for step in &case.proof.steps {
            let found = countermodel_search(&c.lang, &step.formula, &opts).unwrap();
            assert!(found.is_none(), "{}: {} refuted", case.name, step.formula);
            checked += 1;
        }
    }
    assert!(checked > 0);
}
