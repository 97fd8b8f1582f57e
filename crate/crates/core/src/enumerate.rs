//! Exhaustive enumeration of formulas by height over a fixed set of atoms.

use crate::formula::Formula;

/// Every formula of height `<= max_height` built from `atoms` with `~`, `&`
/// and `forall`, grouped by height (index 0 holds the atoms).
pub fn formulas_up_to(atoms: &[Formula], max_height: usize) -> Vec<Vec<Formula>> {
    let mut levels: Vec<Vec<Formula>> = Vec::new();
    if max_height == 0 {
        return levels;
    }
    levels.push(atoms.to_vec());
    for _ in 1..max_height {
        let next = next_level(&levels);
        levels.push(next);
    }
    levels
}

/// Calls `f` on every formula of height `<= max_height`, keeping only the
/// levels below the last in memory.
pub fn for_each_formula(atoms: &[Formula], max_height: usize, mut f: impl FnMut(&Formula)) {
    if max_height == 0 {
        return;
    }
    let levels = formulas_up_to(atoms, max_height - 1);
    for level in &levels {
        level.iter().for_each(&mut f);
    }
    if levels.is_empty() {
        atoms.iter().for_each(f);
    } else {
        stream_level(&levels, f);
    }
}

/// Number of formulas of height `<= max_height` over `atoms` atoms.
pub fn count_up_to(atoms: u128, max_height: usize) -> u128 {
    let mut exact = Vec::new();
    let mut total = 0u128;
    for h in 0..max_height {
        let n = if h == 0 {
            atoms
        } else {
            let below: u128 = exact.iter().sum();
            let below_prev: u128 = exact[..h - 1].iter().sum();
            2 * exact[h - 1] + below * below - below_prev * below_prev
        };
        exact.push(n);
        total += n;
    }
    total
}

fn next_level(levels: &[Vec<Formula>]) -> Vec<Formula> {
    let mut out = Vec::new();
    stream_level(levels, |p| out.push(p.clone()));
    out
}

/// Formulas of height exactly `levels.len() + 1`: a connective whose
/// children have height at most `levels.len()`, at least one of them maximal.
fn stream_level(levels: &[Vec<Formula>], mut f: impl FnMut(&Formula)) {
    let top = levels.last().expect("at least the atoms");
    for p in top {
        f(&Formula::not(p.clone()));
        f(&Formula::forall(p.clone()));
    }
    let last = levels.len() - 1;
    let all: Vec<(&Formula, bool)> = levels
        .iter()
        .enumerate()
        .flat_map(|(h, level)| level.iter().map(move |p| (p, h == last)))
        .collect();
    for (p, p_top) in &all {
        for (q, q_top) in &all {
            if *p_top || *q_top {
                f(&Formula::and((*p).clone(), (*q).clone()));
            }
        }
    }
}
