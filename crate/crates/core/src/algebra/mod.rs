//! Exact symbolic algebra: symbols, sparse polynomials and radial rational
//! functions `P / r^(2m)`.

mod parse;
mod poly;
mod radial;
mod symbol;

pub use parse::ParsePolyError;
pub use poly::{Monomial, Poly, MAX_GEOM_DEGREE};
pub use radial::{r2_pow, Homogeneity, RadialRational};
pub use symbol::{Symbol, UnknownSymbol};
