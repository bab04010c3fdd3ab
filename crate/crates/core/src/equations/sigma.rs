//! Elimination of σ₃, σ₄ through
//! 8(3σ₁ + 6σ₂ + 6σ₃ + σ₄) = 2π² and 3σ₁ − 6σ₂ − 6σ₃ + σ₄ = 0,
//! whose unique solution is σ₄ = π²/8 − 3σ₁, σ₃ = π²/48 − σ₂.

use crate::algebra::{Poly, Symbol};
use crate::scalar::Scalar;

use super::linexpr::{LinExpr, NonLinear};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SigmaError {
    #[error("σ₁/σ₂ survive the reduction: {0}")]
    SigmaResidue(String),
    #[error("reduced expression is not a multiple of π²: {0}")]
    NoPiFactor(String),
    #[error(transparent)]
    NonLinear(#[from] NonLinear),
}

/// Substitutes σ₄ and σ₃; the result is returned with π² still symbolic.
pub fn sigma_substitute<T: Scalar>(e: &Poly<T>) -> Result<Poly<T>, SigmaError> {
    let pi2 = Poly::symbol(Symbol::PiSq);
    let s1 = Poly::symbol(Symbol::sigma(1));
    let s2 = Poly::symbol(Symbol::sigma(2));
    let s4 = &pi2.scale(&T::ratio(1, 8)) - &s1.scale(&T::from_i32(3).unwrap());
    let s3 = &pi2.scale(&T::ratio(1, 48)) - &s2;
    let out = e.substitute(Symbol::sigma(4), &s4).substitute(Symbol::sigma(3), &s3);
    if out.contains_symbol(Symbol::sigma(1)) || out.contains_symbol(Symbol::sigma(2)) {
        return Err(SigmaError::SigmaResidue(out.to_string()));
    }
    Ok(out)
}

/// [`sigma_substitute`] followed by division by the common π² factor.
pub fn sigma_reduce<T: Scalar>(e: &Poly<T>) -> Result<LinExpr<T>, SigmaError> {
    let reduced = sigma_substitute(e)?;
    let parts = reduced.split_on(Symbol::PiSq);
    match (parts.len(), parts.get(&1)) {
        (0, _) => Ok(LinExpr::zero()),
        (1, Some(p)) => Ok(LinExpr::from_poly(p)?),
        _ => Err(SigmaError::NoPiFactor(reduced.to_string())),
    }
}

/// Coefficients of π², σ₁ and σ₂ after [`sigma_substitute`] without the
/// residue check: `e = π²·pi2 + σ₁·sigma1 + σ₂·sigma2`.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaParts<T> {
    pub pi2: LinExpr<T>,
    pub sigma1: LinExpr<T>,
    pub sigma2: LinExpr<T>,
}

impl<T: Scalar> SigmaParts<T> {
    pub fn has_residue(&self) -> bool {
        !(self.sigma1.is_zero() && self.sigma2.is_zero())
    }
}

/// Like [`sigma_reduce`] but returns surviving σ₁/σ₂ coefficients instead of
/// failing on them.
pub fn sigma_split<T: Scalar>(e: &Poly<T>) -> Result<SigmaParts<T>, SigmaError> {
    let pi2 = Poly::symbol(Symbol::PiSq);
    let s1 = Poly::symbol(Symbol::sigma(1));
    let s2 = Poly::symbol(Symbol::sigma(2));
    let s4 = &pi2.scale(&T::ratio(1, 8)) - &s1.scale(&T::from_i32(3).unwrap());
    let s3 = &pi2.scale(&T::ratio(1, 48)) - &s2;
    let reduced = e.substitute(Symbol::sigma(4), &s4).substitute(Symbol::sigma(3), &s3);
    let mut parts = [Poly::zero(), Poly::zero(), Poly::zero()];
    let syms = [Symbol::PiSq, Symbol::sigma(1), Symbol::sigma(2)];
    for (m, c) in reduced.terms() {
        let hits: Vec<usize> = (0..3).filter(|&k| m.exponent(syms[k]) > 0).collect();
        match hits.as_slice() {
            [k] if m.exponent(syms[*k]) == 1 => {
                parts[*k].add_term(m.without(syms[*k]), c.clone());
            }
            _ => return Err(SigmaError::NoPiFactor(reduced.to_string())),
        }
    }
    let [a, b, c] = parts;
    Ok(SigmaParts { pi2: LinExpr::from_poly(&a)?, sigma1: LinExpr::from_poly(&b)?, sigma2: LinExpr::from_poly(&c)? })
}
