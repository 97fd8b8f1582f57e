//! Seeded generators for terms, formulas, substitutions and axiom instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::{Formula, Language};
use crate::proof::{AxiomSpec, PrimeAxiom};
use crate::terms::{Substitution, Symbol, Tail, Term};

/// Seed used by every command and test that does not set one.
pub const DEFAULT_SEED: u64 = 0x5eed_c10e;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Size limits for generated objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    /// Variables are drawn from `x1..=max_var`.
    pub max_var: u32,
    pub term_depth: usize,
    pub formula_depth: usize,
    /// Substitution prefixes have at most this many entries.
    pub prefix_len: usize,
    /// Shift tails are drawn from `0..=max_shift`.
    pub max_shift: i64,
    /// Axioms are wrapped in at most this many quantifiers.
    pub max_generalize: usize,
}

impl Default for Shape {
    fn default() -> Self {
        Shape {
            max_var: 3,
            term_depth: 2,
            formula_depth: 3,
            prefix_len: 3,
            max_shift: 2,
            max_generalize: 2,
        }
    }
}

pub struct Generator<'a> {
    lang: &'a Language,
    fns: Vec<(Symbol, usize)>,
    rels: Vec<(Symbol, usize)>,
    pub shape: Shape,
}

impl<'a> Generator<'a> {
    pub fn new(lang: &'a Language, shape: Shape) -> Self {
        Generator {
            lang,
            fns: lang.functions.iter().map(|(s, a)| (s.clone(), a)).collect(),
            rels: lang
                .predicates
                .iter()
                .map(|(s, a)| (s.clone(), a))
                .collect(),
            shape,
        }
    }

    pub fn language(&self) -> &Language {
        self.lang
    }

    pub fn term<R: Rng + ?Sized>(&self, rng: &mut R) -> Term {
        self.term_at(rng, self.shape.term_depth)
    }

    fn term_at<R: Rng + ?Sized>(&self, rng: &mut R, depth: usize) -> Term {
        let constants: Vec<&(Symbol, usize)> = self.fns.iter().filter(|(_, a)| *a == 0).collect();
        let leaf = depth == 0 || self.fns.is_empty() || rng.gen_bool(0.4);
        if leaf {
            if !constants.is_empty() && rng.gen_bool(0.2) {
                let (c, _) = constants.choose(rng).expect("nonempty");
                return Term::App(c.clone(), Vec::new());
            }
            return Term::Var(rng.gen_range(1..=self.shape.max_var));
        }
        let (f, arity) = self.fns.choose(rng).expect("nonempty");
        Term::App(
            f.clone(),
            (0..*arity).map(|_| self.term_at(rng, depth - 1)).collect(),
        )
    }

    pub fn atom<R: Rng + ?Sized>(&self, rng: &mut R) -> Formula {
        let (r, arity) = self.rels.choose(rng).expect("language has a predicate");
        Formula::Atom(r.clone(), (0..*arity).map(|_| self.term(rng)).collect())
    }

    pub fn formula<R: Rng + ?Sized>(&self, rng: &mut R) -> Formula {
        self.formula_at(rng, self.shape.formula_depth)
    }

    fn formula_at<R: Rng + ?Sized>(&self, rng: &mut R, depth: usize) -> Formula {
        if depth == 0 || rng.gen_bool(0.25) {
            return self.atom(rng);
        }
        match rng.gen_range(0..3) {
            0 => Formula::not(self.formula_at(rng, depth - 1)),
            1 => Formula::and(
                self.formula_at(rng, depth - 1),
                self.formula_at(rng, depth - 1),
            ),
            _ => Formula::forall(self.formula_at(rng, depth - 1)),
        }
    }

    pub fn substitution<R: Rng + ?Sized>(&self, rng: &mut R) -> Substitution {
        let n = rng.gen_range(0..=self.shape.prefix_len);
        let prefix: Vec<Term> = (0..n).map(|_| self.term(rng)).collect();
        let tail = if n > 0 && rng.gen_bool(0.25) {
            Tail::Const(self.term(rng))
        } else {
            Tail::Shift(rng.gen_range(0..=self.shape.max_shift))
        };
        Substitution::new(prefix, tail).expect("non-negative shift")
    }

    /// A random instance of the given schema (`1..=8`). A7 and A8 need equality.
    pub fn axiom<R: Rng + ?Sized>(&self, rng: &mut R, schema: u8) -> AxiomSpec {
        let p = self.formula(rng);
        let prime = match schema {
            1 => PrimeAxiom::A1 { p },
            2 => PrimeAxiom::A2 {
                p,
                q: self.formula(rng),
            },
            3 => PrimeAxiom::A3 {
                p,
                q: self.formula(rng),
                r: self.formula(rng),
            },
            4 => PrimeAxiom::A4 {
                p,
                q: self.formula(rng),
            },
            5 => PrimeAxiom::A5 {
                p,
                subst: self.substitution(rng),
            },
            6 => PrimeAxiom::A6 { p },
            7 => PrimeAxiom::A7 {
                index: rng.gen_range(1..=self.shape.max_var + 1),
            },
            8 => PrimeAxiom::A8 {
                p,
                subst: self.substitution(rng),
            },
            _ => panic!("no axiom schema A{schema}"),
        };
        AxiomSpec {
            prime,
            generalize: rng.gen_range(0..=self.shape.max_generalize),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::instantiate_axiom;

    fn lang() -> Language {
        Language::default()
            .with_fn("g", 1)
            .with_fn("h", 2)
            .with_fn("c", 0)
            .with_rel("P", 1)
            .with_rel("R", 2)
            .with_equality("e")
    }

    #[test]
    fn generated_objects_are_well_formed() {
        let l = lang();
        let g = Generator::new(&l, Shape::default());
        let mut r = rng(DEFAULT_SEED);
        for _ in 0..200 {
            l.check(&g.formula(&mut r)).unwrap();
            l.functions.check_subst(&g.substitution(&mut r)).unwrap();
            let t = g.term(&mut r);
            assert!(t.depth() <= 3);
            for schema in 1..=8 {
                instantiate_axiom(&l, &g.axiom(&mut r, schema)).unwrap();
            }
        }
    }

    #[test]
    fn same_seed_same_output() {
        let l = lang();
        let g = Generator::new(&l, Shape::default());
        let a: Vec<Formula> = (0..20)
            .map({
                let mut r = rng(7);
                move |_| g.formula(&mut r)
            })
            .collect();
        let g = Generator::new(&l, Shape::default());
        let mut r = rng(7);
        let b: Vec<Formula> = (0..20).map(|_| g.formula(&mut r)).collect();
        assert_eq!(a, b);
    }
}
