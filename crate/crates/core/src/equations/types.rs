//! The seven symmetry types of Con[i,j,k,l]:
//! I iiii; II iiij and its rearrangements; III iijj; IV ijij, ijji;
//! V iijk, jkii; VI ijki, jiik, ijik, jiki; VII all distinct.

use std::fmt::Write;

use crate::algebra::Symbol;
use crate::scalar::Scalar;

use super::linexpr::LinExpr;
use super::solver::SolutionTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConType {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
}

impl ConType {
    pub const ALL: [ConType; 7] = [ConType::I, ConType::II, ConType::III, ConType::IV, ConType::V, ConType::VI, ConType::VII];

    pub fn roman(self) -> &'static str {
        ["I", "II", "III", "IV", "V", "VI", "VII"][self as usize]
    }

    pub fn from_roman(s: &str) -> Option<ConType> {
        ConType::ALL.into_iter().find(|t| t.roman() == s)
    }
}

/// Type of a Con symbol. Panics on non-Con symbols.
pub fn classify_con(c: Symbol) -> ConType {
    let [a, b, cc, d] = c.con_indices().expect("not a Con symbol");
    let mut counts = [0u8; 4];
    for v in [a, b, cc, d] {
        counts[v] += 1;
    }
    let mut mult: Vec<u8> = counts.into_iter().filter(|&n| n > 0).collect();
    mult.sort_unstable();
    match mult.as_slice() {
        [4] => ConType::I,
        [1, 3] => ConType::II,
        [2, 2] if a == b => ConType::III,
        [2, 2] => ConType::IV,
        [1, 1, 2] if a == b || cc == d => ConType::V,
        [1, 1, 2] => ConType::VI,
        _ => ConType::VII,
    }
}

/// Table entries grouped by type, each group in Con order.
pub fn group_by_type<T: Scalar>(t: &SolutionTable<T>) -> Vec<(ConType, Vec<(Symbol, &LinExpr<T>)>)> {
    ConType::ALL
        .into_iter()
        .map(|ty| (ty, t.entries.iter().filter(|(c, _)| classify_con(**c) == ty).map(|(c, e)| (*c, e)).collect()))
        .collect()
}

/// Plain-text rendering: one section per type, one `Con[..] = expr` line per
/// entry, free unknowns marked.
pub fn render_types_text<T: Scalar>(t: &SolutionTable<T>) -> String {
    let mut out = String::new();
    for (ty, entries) in group_by_type(t) {
        let _ = writeln!(out, "Type {} ({} entries)", ty.roman(), entries.len());
        for (c, e) in entries {
            if t.free.contains(&c) {
                let _ = writeln!(out, "  {c} free");
            } else {
                let _ = writeln!(out, "  {c} = {}", if e.is_zero() { "0".to_string() } else { e.to_string() });
            }
        }
    }
    let _ = writeln!(out, "free unknowns: {}", t.free.len());
    out
}
