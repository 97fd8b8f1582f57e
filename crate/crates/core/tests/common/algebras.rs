use clone_logic::prop::{intersect_all, ElementSet, FinitePropAlgebra};
use clone_logic::random::rng;
use rand::Rng;

fn table(
    size: usize,
    and: impl Fn(usize, usize) -> usize,
    not: impl Fn(usize) -> usize,
) -> FinitePropAlgebra {
    let and_table = (0..size * size).map(|i| and(i / size, i % size)).collect();
    let not_table = (0..size).map(not).collect();
    FinitePropAlgebra::new(size, and_table, not_table).expect("table in range")
}

/// Seeded random tables that fail the Boolean laws.
pub fn random_non_boolean(seed: u64, count: usize) -> Vec<FinitePropAlgebra> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let size = r.gen_range(2..=8);
        let and_table = (0..size * size).map(|_| r.gen_range(0..size)).collect();
        let not_table = (0..size).map(|_| r.gen_range(0..size)).collect();
        let a = FinitePropAlgebra::new(size, and_table, not_table).unwrap();
        if !a.is_boolean() {
            out.push(a);
        }
    }
    out
}

/// Named proposition algebras of size at most 8.
pub fn algebra_corpus() -> Vec<(String, FinitePropAlgebra)> {
    let mut out: Vec<(String, FinitePropAlgebra)> = vec![
        ("two".into(), FinitePropAlgebra::two()),
        (
            "free on 1 generator".into(),
            FinitePropAlgebra::free_boolean(1),
        ),
        ("2^3".into(), FinitePropAlgebra::boolean_power(3)),
        ("singleton".into(), table(1, |_, _| 0, |_| 0)),
        (
            "two with identity negation".into(),
            table(2, |p, q| p.min(q), |p| p),
        ),
        (
            "two with constant meet".into(),
            table(2, |_, _| 0, |p| 1 - p),
        ),
        (
            "two with join for meet".into(),
            table(2, |p, q| p.max(q), |p| 1 - p),
        ),
        ("projection meet".into(), table(2, |p, _| p, |p| 1 - p)),
    ];
    for n in 3..=6 {
        out.push((
            format!("Kleene chain {n}"),
            table(n, |p, q| p.min(q), move |p| n - 1 - p),
        ));
    }
    out.push((
        "chain 4 with fixed negation".into(),
        table(4, |p, q| p.min(q), |p| p),
    ));
    out.push((
        "cyclic 3".into(),
        table(3, |p, q| (p + q) % 3, |p| (p + 1) % 3),
    ));
    out.push(("xor meet".into(), table(4, |p, q| p ^ q, |p| 3 - p)));
    out.push((
        "two times Kleene 3".into(),
        table(
            6,
            |p, q| (p / 3).min(q / 3) * 3 + (p % 3).min(q % 3),
            |p| (1 - p / 3) * 3 + 2 - p % 3,
        ),
    ));
    out.push((
        "diamond with swapped atoms".into(),
        table(4, |p, q| p & q, |p| [3, 1, 2, 0][p]),
    ));
    for (k, a) in random_non_boolean(0xa16e_b7a5, 6).into_iter().enumerate() {
        out.push((format!("random {}", k + 1), a));
    }
    out
}

/// Checks both parts of the finite completeness statement on one algebra:
/// a subset is a filter iff it is the intersection of the valuations
/// containing it, and the maximal filters are exactly the valuations.
pub fn completeness_holds(a: &FinitePropAlgebra) -> Result<(), String> {
    let n = a.size();
    let vals = a.enumerate_valuations().map_err(|e| e.to_string())?;
    let filters = a.enumerate_filters().map_err(|e| e.to_string())?;
    for bits in 0..(1u64 << n) {
        let s = ElementSet::from_bits(bits, n);
        let above: Vec<ElementSet> = vals.iter().filter(|v| s.is_subset(v)).cloned().collect();
        let closed = intersect_all(n, &above) == s;
        if closed != a.is_filter(&s) {
            return Err(format!(
                "subset {s}: filter={} but closure test={closed}",
                a.is_filter(&s)
            ));
        }
    }
    let mut maximal = Vec::new();
    for f in &filters {
        let by_def = a.is_maximal_filter(f).map_err(|e| e.to_string())?;
        if by_def != a.is_maximal_by_negation(f) {
            return Err(format!("filter {f}: maximality criteria disagree"));
        }
        if by_def {
            maximal.push(*f);
        }
    }
    let mut vals_sorted = vals.clone();
    vals_sorted.sort_by_key(ElementSet::bits);
    maximal.sort_by_key(ElementSet::bits);
    if maximal != vals_sorted {
        return Err(format!(
            "maximal filters {:?} differ from valuations {:?}",
            maximal.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            vals_sorted
                .iter()
                .map(|f| f.to_string())
                .collect::<Vec<_>>()
        ));
    }
    Ok(())
}
