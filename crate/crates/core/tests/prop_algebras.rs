mod common;

use clone_logic::prop::{ElementSet, FinitePropAlgebra, FreeFragment};
use common::algebras::*;

#[test]
fn corpus_meets_the_size_requirements() {
    let corpus = algebra_corpus();
    assert!(corpus.len() >= 20);
    assert!(corpus.iter().all(|(_, a)| a.size() <= 8));
    assert!(
        corpus
            .iter()
            .filter(|(n, _)| n.starts_with("random"))
            .count()
            >= 5
    );
    assert!(corpus.iter().any(|(_, a)| *a == FinitePropAlgebra::two()));
    assert!(corpus
        .iter()
        .any(|(_, a)| *a == FinitePropAlgebra::free_boolean(1)));
}

#[test]
fn completeness_holds_on_the_corpus() {
    for (name, a) in algebra_corpus() {
        if let Err(e) = completeness_holds(&a) {
            panic!("{name}: {e}");
        }
    }
}

#[test]
fn boolean_filters_agree_with_the_general_notion() {
    for (name, a) in algebra_corpus().into_iter().filter(|(_, a)| a.is_boolean()) {
        for bits in 0..(1u64 << a.size()) {
            let s = ElementSet::from_bits(bits, a.size());
            assert_eq!(a.is_filter(&s), a.is_boolean_filter(&s), "{name} {s}");
        }
    }
}

#[test]
fn random_tables_are_reproducible() {
    assert_eq!(random_non_boolean(3, 4), random_non_boolean(3, 4));
    assert!(random_non_boolean(3, 4).iter().all(|a| !a.is_boolean()));
}

#[test]
fn free_fragments_have_boolean_sizes() {
    assert_eq!(FreeFragment::build(&["a"], 3).unwrap().class_count(), 4);
    let two = FreeFragment::build(&["a", "b"], 4).unwrap();
    assert_eq!(two.class_count(), 16);
    let l = two.lindenbaum().unwrap();
    assert!(l.is_boolean());
    assert_eq!(l.enumerate_valuations().unwrap().len(), 4);
}
