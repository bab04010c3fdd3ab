//! Exact Gauss–Jordan elimination over the Con columns.
//!
//! Parameters (ζ, ξ, CVol) ride along in the affine part and are never
//! divided by. Columns are pivoted from the highest Con index down, and within
//! a column the shortest candidate row wins, so the free unknowns come out as
//! the lowest-index representatives of each relation.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::Symbol;
use crate::scalar::Scalar;

use super::linexpr::LinExpr;
use super::{Equation, LinearSystem};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("inconsistent system: elimination derived `{residue} = 0`")]
pub struct InconsistentSystem {
    pub residue: String,
}

/// Every Con written as an affine expression in the parameters and the free
/// unknowns. Free unknowns map to themselves.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionTable<T> {
    pub entries: BTreeMap<Symbol, LinExpr<T>>,
    pub free: Vec<Symbol>,
}

impl<T: Scalar> SolutionTable<T> {
    pub fn get(&self, c: Symbol) -> Option<&LinExpr<T>> {
        self.entries.get(&c)
    }

    /// The relation `c − entry(c)` (zero for free unknowns).
    pub fn relation(&self, c: Symbol) -> LinExpr<T> {
        let mut r = self.entries[&c].scale(&-T::one());
        r.add_scaled(&LinExpr::con(c), &T::one());
        r
    }

    /// Resolves a linear expression against the table.
    pub fn apply(&self, e: &LinExpr<T>) -> LinExpr<T> {
        let mut out = LinExpr { con: BTreeMap::new(), rest: e.rest.clone() };
        for (c, a) in &e.con {
            match self.entries.get(c) {
                Some(v) => out.add_scaled(v, a),
                None => out.add_scaled(&LinExpr::con(*c), a),
            }
        }
        out
    }
}

fn eliminate<T: Scalar>(row: &mut LinExpr<T>, col: Symbol, pivot: &LinExpr<T>) {
    if let Some(a) = row.con.get(&col).cloned() {
        row.add_scaled(pivot, &-a);
    }
}

/// Reduced row echelon form of the system, expressed as a [`SolutionTable`].
pub fn solve_system<T: Scalar>(s: &LinearSystem<T>) -> Result<SolutionTable<T>, InconsistentSystem> {
    solve_equations(s.equations.iter())
}

pub(crate) fn solve_equations<'a, T: Scalar>(
    eqs: impl Iterator<Item = &'a Equation<T>>,
) -> Result<SolutionTable<T>, InconsistentSystem> {
    let mut seen = BTreeSet::new();
    let mut rows: Vec<LinExpr<T>> = Vec::new();
    for e in eqs {
        if e.expr.is_zero() {
            continue;
        }
        if e.expr.con.is_empty() {
            return Err(InconsistentSystem { residue: e.expr.to_string() });
        }
        let n = e.expr.normalized();
        if seen.insert(n.to_string()) {
            rows.push(n);
        }
    }

    let mut pivots: BTreeMap<Symbol, LinExpr<T>> = BTreeMap::new();
    for col in Symbol::all_con().into_iter().rev() {
        let best = rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.con.contains_key(&col))
            .min_by_key(|(i, r)| (r.con.len(), *i))
            .map(|(i, _)| i);
        let Some(idx) = best else { continue };
        let p = rows.remove(idx);
        let p = p.scale(&(T::one() / p.con[&col].clone()));
        for r in rows.iter_mut() {
            eliminate(r, col, &p);
        }
        for r in pivots.values_mut() {
            eliminate(r, col, &p);
        }
        let mut kept = Vec::with_capacity(rows.len());
        for r in rows.drain(..) {
            if r.con.is_empty() {
                if !r.rest.is_zero() {
                    return Err(InconsistentSystem { residue: r.to_string() });
                }
            } else {
                kept.push(r);
            }
        }
        rows = kept;
        pivots.insert(col, p);
    }
    debug_assert!(rows.is_empty());

    let mut entries = BTreeMap::new();
    let mut free = Vec::new();
    for c in Symbol::all_con() {
        match pivots.get(&c) {
            Some(p) => {
                let mut v = p.scale(&-T::one());
                v.con.remove(&c);
                entries.insert(c, v);
            }
            None => {
                free.push(c);
                entries.insert(c, LinExpr::con(c));
            }
        }
    }
    Ok(SolutionTable { entries, free })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;
    use crate::equations::Family;
    use crate::scalar::{rat, Rational};

    fn eq(s: &str) -> Equation<Rational> {
        let p: Poly<Rational> = s.parse().unwrap();
        Equation { family: Family::Differential, label: s.into(), expr: LinExpr::from_poly(&p).unwrap() }
    }

    #[test]
    fn small_system() {
        let sys = LinearSystem {
            equations: vec![
                eq("Con[1,1,1,1] - CVol"),
                eq("Con[1,2,2,1] + Con[1,2,1,2] - zeta11"),
                eq("2 Con[1,2,2,1] + 2 Con[1,2,1,2] - 2 zeta11"),
            ],
        };
        let t = solve_system(&sys).unwrap();
        assert_eq!(t.free.len(), 256 - 2);
        assert!(t.free.contains(&Symbol::con(0, 1, 0, 1)));
        let v = t.get(Symbol::con(0, 1, 1, 0)).unwrap();
        assert_eq!(v.con.get(&Symbol::con(0, 1, 0, 1)), Some(&rat(-1, 1)));
        assert_eq!(v.rest, "zeta11".parse().unwrap());
        for e in &sys.equations {
            assert!(t.apply(&e.expr).is_zero());
        }
    }

    #[test]
    fn inconsistency_is_reported() {
        let sys = LinearSystem { equations: vec![eq("Con[1,1,1,1] - CVol"), eq("Con[1,1,1,1] - zeta11")] };
        assert!(solve_system(&sys).is_err());
    }
}
