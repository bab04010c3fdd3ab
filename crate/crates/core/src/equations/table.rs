//! Reference table loading and the two-way comparison against a system.

use std::collections::BTreeMap;
use std::fmt;

use sha2::{Digest, Sha256};

use crate::algebra::Symbol;
use crate::scalar::Scalar;

use super::io::{parse_table, FormatError};
use super::linexpr::LinExpr;
use super::solver::{solve_system, InconsistentSystem, SolutionTable};
use super::{Family, LinearSystem};

/// Name accepted by [`load_fixture`] for the embedded table.
pub const BUILTIN_FIXTURE: &str = "appendixG";

/// The published constants table in `con-solution-table` format.
pub const APPENDIX_G: &str = include_str!("../../data/appendix_g.json");

pub const APPENDIX_G_SHA256: &str = "23e41a6ca6024c00bf1b3149038a245eff3517a25c2f653c73d5b9886a838493";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FixtureError {
    #[error("embedded fixture checksum mismatch: {0}")]
    Checksum(String),
    #[error("cannot read fixture {path}: {msg}")]
    Io { path: String, msg: String },
    #[error("fixture parse error: {0}")]
    Format(#[from] FormatError),
    #[error("fixture entry {entry} refers to {symbol}, which is not a free unknown")]
    NotFree { entry: Symbol, symbol: Symbol },
}

/// Loads `appendixG` (checksummed) or a table file by path.
pub fn load_fixture<T: Scalar>(spec: &str) -> Result<SolutionTable<T>, FixtureError> {
    let src = if spec == BUILTIN_FIXTURE {
        let sum = hex::encode(Sha256::digest(APPENDIX_G.as_bytes()));
        if sum != APPENDIX_G_SHA256 {
            return Err(FixtureError::Checksum(sum));
        }
        APPENDIX_G.to_string()
    } else {
        std::fs::read_to_string(spec).map_err(|e| FixtureError::Io { path: spec.to_string(), msg: e.to_string() })?
    };
    let t: SolutionTable<T> = parse_table(&src)?;
    for (c, e) in &t.entries {
        for s in e.con.keys() {
            if !t.free.contains(s) {
                return Err(FixtureError::NotFree { entry: *c, symbol: *s });
            }
        }
    }
    Ok(t)
}

/// Resolves `e` against `t`.
pub fn substitute_table<T: Scalar>(t: &SolutionTable<T>, e: &LinExpr<T>) -> LinExpr<T> {
    t.apply(e)
}

/// Outcome of comparing a table with a system in both directions.
#[derive(Clone, Debug, PartialEq)]
pub struct TableCheck {
    /// System equations the table does not satisfy, as (family, label).
    pub unsatisfied: Vec<(Family, String)>,
    /// Table relations `Con = entry` not implied by the system.
    pub not_implied: Vec<Symbol>,
    /// Violated equations per family (every assembled family is listed).
    pub per_family: BTreeMap<Family, usize>,
    pub table_free: usize,
    pub solved_free: usize,
}

impl TableCheck {
    pub fn passed(&self) -> bool {
        self.unsatisfied.is_empty() && self.not_implied.is_empty()
    }
}

impl fmt::Display for TableCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (fam, n) in &self.per_family {
            writeln!(f, "{fam}: {}", if *n == 0 { "satisfied".to_string() } else { format!("{n} equations violated") })?;
        }
        if self.passed() {
            write!(f, "all relations implied; free unknowns: {}", self.table_free)
        } else {
            for c in &self.not_implied {
                writeln!(f, "not implied: {c}")?;
            }
            write!(
                f,
                "{} relations not implied, {} equations violated; free unknowns: table {}, system {}",
                self.not_implied.len(),
                self.unsatisfied.len(),
                self.table_free,
                self.solved_free
            )
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TableMismatch {
    #[error("{}", .0)]
    Mismatch(TableCheck),
    #[error(transparent)]
    Inconsistent(#[from] InconsistentSystem),
}

/// Checks that `table` satisfies every equation of `s` and that every table
/// relation follows from the reduced system.
pub fn check_paper_table<T: Scalar>(table: &SolutionTable<T>, s: &LinearSystem<T>) -> Result<TableCheck, TableMismatch> {
    let mut per_family = BTreeMap::new();
    let mut unsatisfied = Vec::new();
    for e in &s.equations {
        let n = per_family.entry(e.family).or_insert(0usize);
        if !table.apply(&e.expr).is_zero() {
            *n += 1;
            unsatisfied.push((e.family, e.label.clone()));
        }
    }
    let solved = solve_system(s)?;
    let not_implied: Vec<Symbol> =
        Symbol::all_con().into_iter().filter(|c| !solved.apply(&table.relation(*c)).is_zero()).collect();
    let check = TableCheck { unsatisfied, not_implied, per_family, table_free: table.free.len(), solved_free: solved.free.len() };
    if check.passed() {
        Ok(check)
    } else {
        Err(TableMismatch::Mismatch(check))
    }
}
