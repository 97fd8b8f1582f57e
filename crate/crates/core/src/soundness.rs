//! Randomized validity checks of the axiom schemata in small structures.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::formula::{Formula, Language};
use crate::proof::{instantiate_axiom, AxiomSpec};
use crate::random::{rng, Generator, Shape};
use crate::semantics::{CompiledFormula, Env, SemanticsError, Structure, StructureSpace};

/// Unary and binary function, unary and binary predicate, and equality.
pub fn soundness_language() -> Language {
    Language::default()
        .with_fn("g", 1)
        .with_fn("h", 2)
        .with_rel("P", 1)
        .with_rel("R", 2)
        .with_equality("e")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SoundnessConfig {
    pub seed: u64,
    /// Instances per schema.
    pub per_schema: usize,
    pub max_size: u32,
    /// Sizes whose structure count (over the symbols of the instance) is at
    /// most this are enumerated completely.
    pub exhaustive_limit: u128,
    /// Structures drawn at sizes above the limit.
    pub samples: usize,
    pub shape: Shape,
}

impl Default for SoundnessConfig {
    fn default() -> Self {
        SoundnessConfig {
            seed: crate::random::DEFAULT_SEED,
            per_schema: 200,
            max_size: 3,
            exhaustive_limit: 1 << 16,
            samples: 1024,
            shape: Shape::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoundnessFailure {
    pub spec: AxiomSpec,
    pub formula: Formula,
    pub structure: Structure,
    pub env: Env,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SchemaStats {
    pub instances: usize,
    /// Structures checked, exhaustively enumerated or sampled.
    pub exhaustive: u64,
    pub sampled: u64,
    pub failures: Vec<SoundnessFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoundnessReport {
    /// Indexed by schema number minus one.
    pub schemas: Vec<SchemaStats>,
}

impl SoundnessReport {
    pub fn failures(&self) -> usize {
        self.schemas.iter().map(|s| s.failures.len()).sum()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }
}

impl fmt::Display for SoundnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.schemas.iter().enumerate() {
            writeln!(
                f,
                "A{} instances={} exhaustive={} sampled={} failures={}",
                i + 1,
                s.instances,
                s.exhaustive,
                s.sampled,
                s.failures.len()
            )?;
            for fail in &s.failures {
                writeln!(f, "  counterexample to {} at {}:", fail.formula, fail.env)?;
                for line in fail.structure.to_string().lines() {
                    writeln!(f, "    {line}")?;
                }
            }
        }
        Ok(())
    }
}

/// Checks `per_schema` random instances of each of A1–A8 in every structure
/// of size `1..=max_size` over the symbols of the instance (sampled where
/// the count exceeds the limit), under every environment.
pub fn run_soundness(config: &SoundnessConfig) -> Result<SoundnessReport, SemanticsError> {
    let lang = Arc::new(soundness_language());
    let generator = Generator::new(&lang, config.shape);
    let mut r = rng(config.seed);
    let mut schemas = Vec::with_capacity(8);
    for schema in 1..=8u8 {
        let mut stats = SchemaStats::default();
        for _ in 0..config.per_schema {
            let spec = generator.axiom(&mut r, schema);
            let formula =
                instantiate_axiom(&lang, &spec).expect("generated instance is well formed");
            let structure_seed: u64 = r.gen();
            stats.instances += 1;
            if let Some((structure, env)) =
                check_instance(&lang, &formula, config, structure_seed, &mut stats)?
            {
                stats.failures.push(SoundnessFailure {
                    spec,
                    formula,
                    structure,
                    env,
                });
            }
        }
        schemas.push(stats);
    }
    Ok(SoundnessReport { schemas })
}

fn check_instance(
    lang: &Arc<Language>,
    formula: &Formula,
    config: &SoundnessConfig,
    seed: u64,
    stats: &mut SchemaStats,
) -> Result<Option<(Structure, Env)>, SemanticsError> {
    let compiled = CompiledFormula::new(lang, formula)?;
    let mut r = rng(seed);
    for size in 1..=config.max_size {
        let space = StructureSpace::for_formula(lang.clone(), size, formula)?;
        let check = |d: Structure| compiled.find_counter_env(&d).map(|env| (d, env));
        match space.count() {
            Some(n) if n <= config.exhaustive_limit => {
                for i in 0..n {
                    stats.exhaustive += 1;
                    if let Some(hit) = check(space.nth(i)) {
                        return Ok(Some(hit));
                    }
                }
            }
            _ => {
                for _ in 0..config.samples {
                    stats.sampled += 1;
                    if let Some(hit) = check(space.random(&mut r)) {
                        return Ok(Some(hit));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_is_clean_and_reproducible() {
        let config = SoundnessConfig {
            per_schema: 5,
            max_size: 2,
            ..SoundnessConfig::default()
        };
        let a = run_soundness(&config).unwrap();
        assert!(a.passed(), "{a}");
        assert_eq!(a, run_soundness(&config).unwrap());
        assert!(a.schemas.iter().all(|s| s.instances == 5));
    }

    #[test]
    fn an_unsound_schema_is_caught() {
        let lang = Arc::new(soundness_language());
        let p = Formula::atom("P", vec![crate::Term::Var(1)]);
        let bad = Formula::imp(p.clone(), Formula::forall(p));
        let mut stats = SchemaStats::default();
        let hit = check_instance(&lang, &bad, &SoundnessConfig::default(), 1, &mut stats).unwrap();
        let (d, env) = hit.expect("refuted");
        assert_eq!(d.size(), 2);
        assert!(!d.eval_formula(&bad, &env).unwrap());
    }
}
