//! Exact reconstruction of the asymptotic constants of harmonic functions and
//! harmonic 1-forms on a Ricci-flat ALE 4-manifold asymptotic to ℝ⁴/Γ.
//!
//! The leading metric perturbation h is built from two symmetric 3×3
//! parameter matrices ζ, ξ. From h the crate derives the correction terms of
//! the expansions, assembles linear restriction equations on the 256
//! constants Con[i,j,k,l] from boundary integrals over cube faces, and solves
//! them exactly. A small quadrature module checks the integral identities
//! numerically.
//!
//! Everything symbolic is generic over [`scalar::Scalar`]; the pipeline runs
//! over [`Rational`]. Concrete aliases for the common instantiations are
//! exported here.

pub mod algebra;
pub mod cli;
pub mod equations;
pub mod expansions;
pub mod exterior;
pub mod integrals;
pub mod metric;
pub mod quadrature;
pub mod scalar;

pub use scalar::Rational;

pub type RatPoly = algebra::Poly<Rational>;
pub type RatRadial = algebra::RadialRational<Rational>;
pub type RatForm = exterior::Form<Rational>;
pub type RatTensor2 = metric::Tensor2<Rational>;
pub type RatLinExpr = equations::LinExpr<Rational>;
pub type RatSystem = equations::LinearSystem<Rational>;
pub type RatTable = equations::SolutionTable<Rational>;
pub type F64Poly = algebra::Poly<f64>;
pub type F64Radial = algebra::RadialRational<f64>;
pub type F64Form = exterior::Form<f64>;
