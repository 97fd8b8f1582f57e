//! Enumeration of finite structures and countermodel search.

use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;

use crate::formula::{Formula, Language};
use crate::terms::Symbol;

use super::{CompiledFormula, FiniteBooleanAlg, SemanticsError, Structure};

/// Default bound on the number of free table cells per candidate structure.
pub const DEFAULT_CELL_CAP: usize = 32;

/// Candidates handed to the thread pool at a time; the first counterexample
/// inside the earliest chunk that has one is reported.
const CHUNK: u64 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cell {
    Fn { table: usize, index: usize },
    Rel { table: usize, index: usize },
}

/// All structures of one size over a language whose free cells are those of
/// the chosen symbols. Tables of the other symbols stay zero, and equality
/// stays the identity when declared.
///
/// Candidates are numbered like an odometer over the cell list (function
/// cells in symbol order, then relation cells), first cell fastest.
#[derive(Debug, Clone)]
pub struct StructureSpace {
    base: Structure,
    cells: Vec<Cell>,
}

impl StructureSpace {
    pub fn new(
        lang: Arc<Language>,
        size: u32,
        boolean: FiniteBooleanAlg,
        fns: &[Symbol],
        rels: &[Symbol],
    ) -> Result<Self, SemanticsError> {
        let mut base = Structure::new(lang.clone(), size)?;
        base.set_boolean(boolean)?;
        let mut cells = Vec::new();
        for (name, _) in lang.functions.iter() {
            if fns.contains(name) {
                let table = lang.functions.index_of(name).expect("declared");
                cells.extend((0..base.fns[table].len()).map(|index| Cell::Fn { table, index }));
            }
        }
        let eq = lang.equality();
        for (name, _) in lang.predicates.iter() {
            if rels.contains(name) && !(base.identity_equality && Some(name) == eq) {
                let table = lang.predicates.index_of(name).expect("declared");
                cells.extend((0..base.rels[table].len()).map(|index| Cell::Rel { table, index }));
            }
        }
        Ok(StructureSpace { base, cells })
    }

    /// Every symbol of the language is free.
    pub fn full(
        lang: Arc<Language>,
        size: u32,
        boolean: FiniteBooleanAlg,
    ) -> Result<Self, SemanticsError> {
        let fns: Vec<Symbol> = lang.functions.iter().map(|(s, _)| s.clone()).collect();
        let rels: Vec<Symbol> = lang.predicates.iter().map(|(s, _)| s.clone()).collect();
        Self::new(lang, size, boolean, &fns, &rels)
    }

    /// Only the symbols occurring in `phi` are free; the value of `phi`
    /// does not depend on the other tables.
    pub fn for_formula(
        lang: Arc<Language>,
        size: u32,
        phi: &Formula,
    ) -> Result<Self, SemanticsError> {
        let (rels, fns) = phi.symbols();
        Self::new(lang, size, FiniteBooleanAlg::two(), &fns, &rels)
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    fn base_of(&self, cell: &Cell) -> u128 {
        match cell {
            Cell::Fn { .. } => self.base.size as u128,
            Cell::Rel { .. } => self.base.boolean.element_count() as u128,
        }
    }

    /// Number of candidates, or `None` if it does not fit in a `u128`.
    pub fn count(&self) -> Option<u128> {
        self.cells
            .iter()
            .try_fold(1u128, |acc, c| acc.checked_mul(self.base_of(c)))
    }

    /// The candidate with the given number; `index` must be below [`Self::count`].
    pub fn nth(&self, mut index: u128) -> Structure {
        let mut d = self.base.clone();
        for cell in &self.cells {
            let b = self.base_of(cell);
            let digit = index % b;
            index /= b;
            self.put(&mut d, cell, digit as u64);
        }
        d
    }

    /// A candidate with every free cell drawn uniformly.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Structure {
        let mut d = self.base.clone();
        for cell in &self.cells {
            let digit = rng.gen_range(0..self.base_of(cell));
            self.put(&mut d, cell, digit as u64);
        }
        d
    }

    fn put(&self, d: &mut Structure, cell: &Cell, digit: u64) {
        match *cell {
            Cell::Fn { table, index } => d.fns[table][index] = digit as u32,
            Cell::Rel { table, index } => d.rels[table][index] = digit,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_size: u32,
    pub cell_cap: usize,
    /// Worker threads; 0 lets the pool choose.
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_size: 3,
            cell_cap: DEFAULT_CELL_CAP,
            threads: 0,
        }
    }
}

/// The first two-valued structure (sizes ascending, then candidate order)
/// in which `phi` is not valid. The result does not depend on the thread count.
pub fn countermodel_search(
    lang: &Language,
    phi: &Formula,
    opts: &SearchOptions,
) -> Result<Option<Structure>, SemanticsError> {
    let compiled = CompiledFormula::new(lang, phi)?;
    let lang = Arc::new(lang.clone());
    let spaces = (1..=opts.max_size)
        .map(|n| StructureSpace::for_formula(lang.clone(), n, phi))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(big) = spaces.last() {
        if big.cell_count() > opts.cell_cap {
            return Err(SemanticsError::CellCap {
                cells: big.cell_count(),
                cap: opts.cell_cap,
            });
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .map_err(|e| SemanticsError::ThreadPool(e.to_string()))?;
    pool.install(|| {
        for space in &spaces {
            let total = space.count().expect("bounded by the cell cap");
            let mut start = 0u128;
            while start < total {
                let len = (total - start).min(CHUNK as u128) as u64;
                let hit = (0..len)
                    .into_par_iter()
                    .find_first(|&i| !compiled.is_valid(&space.nth(start + i as u128)));
                if let Some(i) = hit {
                    return Ok(Some(space.nth(start + i as u128)));
                }
                start += len as u128;
            }
        }
        Ok(None)
    })
}
