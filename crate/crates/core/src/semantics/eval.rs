//! Formulas and terms with symbols resolved to table indices.

use crate::formula::{Formula, Language};
use crate::terms::Term;

use super::{Env, SemanticsError, Structure};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompiledTerm {
    Var(u32),
    App(usize, Vec<CompiledTerm>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Node {
    Atom {
        rel: usize,
        equality: bool,
        args: Vec<CompiledTerm>,
    },
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Forall(Box<Node>),
}

/// A formula ready for repeated evaluation in structures over one language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledFormula {
    root: Node,
    rank: u32,
}

impl CompiledTerm {
    pub fn new(lang: &Language, t: &Term) -> Result<Self, SemanticsError> {
        lang.check_term(t)?;
        Ok(Self::resolve(lang, t))
    }

    fn resolve(lang: &Language, t: &Term) -> Self {
        match t {
            Term::Var(i) => CompiledTerm::Var(*i),
            Term::App(f, args) => CompiledTerm::App(
                lang.functions.index_of(f).expect("checked"),
                args.iter().map(|a| Self::resolve(lang, a)).collect(),
            ),
        }
    }

    /// `stack` holds coordinate 1 at its end.
    pub(crate) fn eval(&self, d: &Structure, stack: &[u32], default: u32) -> u32 {
        match self {
            CompiledTerm::Var(j) => {
                let j = *j as usize;
                if j <= stack.len() {
                    stack[stack.len() - j]
                } else {
                    default
                }
            }
            CompiledTerm::App(f, args) => {
                let n = d.size as usize;
                let idx = args.iter().fold(0usize, |acc, a| {
                    acc * n + a.eval(d, stack, default) as usize
                });
                d.fns[*f][idx]
            }
        }
    }

    pub fn eval_env(&self, d: &Structure, env: &Env) -> u32 {
        let stack: Vec<u32> = env.prefix.iter().rev().copied().collect();
        self.eval(d, &stack, env.default)
    }
}

impl CompiledFormula {
    pub fn new(lang: &Language, phi: &Formula) -> Result<Self, SemanticsError> {
        lang.check(phi)?;
        Ok(CompiledFormula {
            root: Self::resolve(lang, phi),
            rank: phi.rank(),
        })
    }

    fn resolve(lang: &Language, phi: &Formula) -> Node {
        match phi {
            Formula::Atom(r, args) => Node::Atom {
                rel: lang.predicates.index_of(r).expect("checked"),
                equality: lang.equality() == Some(r),
                args: args
                    .iter()
                    .map(|a| CompiledTerm::resolve(lang, a))
                    .collect(),
            },
            Formula::Not(p) => Node::Not(Box::new(Self::resolve(lang, p))),
            Formula::And(p, q) => Node::And(
                Box::new(Self::resolve(lang, p)),
                Box::new(Self::resolve(lang, q)),
            ),
            Formula::Forall(p) => Node::Forall(Box::new(Self::resolve(lang, p))),
        }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Value under `env`, which must lie in the domain.
    pub fn eval_env(&self, d: &Structure, env: &Env) -> u64 {
        let mut stack: Vec<u32> = env.prefix.iter().rev().copied().collect();
        eval_node(&self.root, d, &mut stack, env.default)
    }

    pub fn holds(&self, d: &Structure, env: &Env) -> bool {
        self.eval_env(d, env) == d.boolean.one()
    }

    /// Environments of prefix length `rank` with default 0 suffice: the value
    /// only reads the first `rank` coordinates.
    pub fn find_counter_env(&self, d: &Structure) -> Option<Env> {
        let one = d.boolean.one();
        let r = self.rank as usize;
        let mut prefix = vec![0u32; r];
        let mut stack = Vec::with_capacity(r + 8);
        loop {
            stack.clear();
            stack.extend(prefix.iter().rev());
            if eval_node(&self.root, d, &mut stack, 0) != one {
                return Some(Env::new(prefix, 0));
            }
            let mut k = r;
            loop {
                if k == 0 {
                    return None;
                }
                k -= 1;
                prefix[k] += 1;
                if prefix[k] < d.size {
                    break;
                }
                prefix[k] = 0;
            }
        }
    }

    pub fn is_valid(&self, d: &Structure) -> bool {
        self.find_counter_env(d).is_none()
    }
}

fn eval_node(node: &Node, d: &Structure, stack: &mut Vec<u32>, default: u32) -> u64 {
    let one = d.boolean.one();
    match node {
        Node::Atom {
            rel,
            equality,
            args,
        } => {
            if *equality && d.identity_equality {
                let a = args[0].eval(d, stack, default);
                let b = args[1].eval(d, stack, default);
                return if a == b { one } else { 0 };
            }
            let n = d.size as usize;
            let idx = args.iter().fold(0usize, |acc, a| {
                acc * n + a.eval(d, stack, default) as usize
            });
            d.rels[*rel][idx]
        }
        Node::Not(p) => one & !eval_node(p, d, stack, default),
        Node::And(p, q) => {
            let a = eval_node(p, d, stack, default);
            if a == 0 {
                0
            } else {
                a & eval_node(q, d, stack, default)
            }
        }
        Node::Forall(p) => {
            let mut acc = one;
            for m in 0..d.size {
                stack.push(m);
                acc &= eval_node(p, d, stack, default);
                stack.pop();
                if acc == 0 {
                    break;
                }
            }
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::envs;
    use crate::terms::Substitution;

    #[test]
    fn forall_reads_coordinate_one() {
        let lang = Language::default().with_rel("r", 2);
        let mut d = Structure::new(lang.clone(), 2).unwrap();
        // r(a, b) iff a <= b
        d.set_rel_bool("r", &[true, true, false, true]).unwrap();
        let phi = Formula::forall(Formula::atom("r", vec![Term::var(2), Term::var(1)]));
        let c = CompiledFormula::new(&lang, &phi).unwrap();
        assert_eq!(c.rank(), 1);
        assert!(c.holds(&d, &Env::new(vec![0], 0)));
        assert!(!c.holds(&d, &Env::new(vec![1], 0)));
        assert_eq!(c.find_counter_env(&d), Some(Env::new(vec![1], 0)));
    }

    #[test]
    fn substitution_matches_environment_composition() {
        let lang = Language::default().with_fn("f", 1).with_rel("r", 2);
        let mut d = Structure::new(lang.clone(), 3).unwrap();
        d.set_fn("f", vec![2, 0, 1]).unwrap();
        d.set_rel_bool(
            "r",
            &[true, false, true, false, false, true, true, true, false],
        )
        .unwrap();
        let phi = Formula::forall(Formula::atom(
            "r",
            vec![Term::var(1), Term::app("f", vec![Term::var(2)])],
        ));
        let s = Substitution::from_list(vec![Term::app("f", vec![Term::var(1)]), Term::var(1)])
            .unwrap();
        for env in envs(3, 2, 0) {
            let lhs = d.eval_formula(&phi.subst(&s), &env).unwrap();
            let rhs = d.eval_formula(&phi, &env.after(&d, &s).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "{env}");
        }
    }
}
