//! Restriction equations on the constants Con[i,j,k,l], their exact
//! solution, and comparison against a reference table.

mod assembly;
mod io;
mod linexpr;
mod sigma;
mod solver;
mod table;
mod types;

use std::fmt;

pub use assembly::{
    assemble_covariant_pairing, assemble_differential, assemble_divergence, assemble_family,
    assemble_harmonic_boundary, assemble_laplacian_pairing, covariant_pairing_density, covariant_pairing_integrals,
    divergence_expr, harmonic_flux_form, laplacian_pairing_form, laplacian_pairing_integrals, laplacian_pairing_residues,
    pair_differences, AssemblyError,
};
pub use io::{
    parse_system, parse_table, parse_types_report, system_to_json, table_to_json, types_report_to_json, FormatError,
};
pub use linexpr::{LinExpr, NonLinear};
pub use sigma::{sigma_reduce, sigma_split, sigma_substitute, SigmaError, SigmaParts};
pub use solver::{solve_system, InconsistentSystem, SolutionTable};
pub use table::{
    check_paper_table, load_fixture, substitute_table, FixtureError, TableCheck, TableMismatch, APPENDIX_G,
    APPENDIX_G_SHA256, BUILTIN_FIXTURE,
};
pub use types::{classify_con, group_by_type, render_types_text, ConType};

use crate::algebra::Symbol;
use crate::expansions::ExpansionTerms;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, clap::ValueEnum)]
pub enum Family {
    HarmonicBoundary,
    Differential,
    Divergence,
    LaplacianPairing,
    CovariantPairing,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::HarmonicBoundary,
        Family::Differential,
        Family::Divergence,
        Family::LaplacianPairing,
        Family::CovariantPairing,
    ];

    /// The four families that constrain Con.
    pub const RESTRICTION: [Family; 4] =
        [Family::Differential, Family::Divergence, Family::LaplacianPairing, Family::CovariantPairing];

    pub fn name(self) -> &'static str {
        match self {
            Family::HarmonicBoundary => "harmonic-boundary",
            Family::Differential => "differential",
            Family::Divergence => "divergence",
            Family::LaplacianPairing => "laplacian-pairing",
            Family::CovariantPairing => "covariant-pairing",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One linear equation `expr = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Equation<T> {
    pub family: Family,
    pub label: String,
    pub expr: LinExpr<T>,
}

/// Equations in a fixed order together with the unknown and parameter lists.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSystem<T> {
    pub equations: Vec<Equation<T>>,
}

impl<T: Scalar> LinearSystem<T> {
    /// The 256 Con symbols in index order.
    pub fn unknowns() -> Vec<Symbol> {
        Symbol::all_con()
    }

    /// ζ (6), ξ (6), CVol.
    pub fn parameters() -> Vec<Symbol> {
        Symbol::parameters()
    }

    /// Assembles the given families in the order of [`Family::ALL`].
    pub fn assemble(terms: &ExpansionTerms<T>, families: &[Family]) -> Result<Self, AssemblyError> {
        let mut equations = Vec::new();
        for f in Family::ALL {
            if families.contains(&f) {
                equations.extend(assemble_family(terms, f)?);
            }
        }
        Ok(LinearSystem { equations })
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn family(&self, f: Family) -> LinearSystem<T> {
        LinearSystem { equations: self.equations.iter().filter(|e| e.family == f).cloned().collect() }
    }
}
