use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Monomial, Poly, Symbol};
use crate::scalar::Scalar;

/// `Σ_c a_c·Con_c + rest`, where `rest` involves only parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct LinExpr<T> {
    pub con: BTreeMap<Symbol, T>,
    pub rest: Poly<T>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("expression is not affine-linear in Con: offending term `{term}`")]
pub struct NonLinear {
    pub term: String,
}

impl<T: Scalar> LinExpr<T> {
    pub fn zero() -> Self {
        LinExpr { con: BTreeMap::new(), rest: Poly::zero() }
    }

    /// Splits a polynomial into its Con part and parameter part. Every
    /// Con must appear to the first power with a purely numeric coefficient.
    pub fn from_poly(p: &Poly<T>) -> Result<Self, NonLinear> {
        let mut out = LinExpr::zero();
        for (m, c) in p.terms() {
            let cons: Vec<&(Symbol, u32)> = m.factors().iter().filter(|(s, _)| s.is_con()).collect();
            match cons.as_slice() {
                [] => out.rest.add_term(m.clone(), c.clone()),
                [(s, 1)] if m.factors().len() == 1 => {
                    out.con.insert(*s, c.clone());
                }
                _ => return Err(NonLinear { term: format!("{c}*{m}") }),
            }
        }
        Ok(out)
    }

    pub fn to_poly(&self) -> Poly<T> {
        let mut p = self.rest.clone();
        for (s, c) in &self.con {
            p.add_term(Monomial::var(*s, 1), c.clone());
        }
        p
    }

    /// The single unknown `c`.
    pub fn con(c: Symbol) -> Self {
        let mut e = LinExpr::zero();
        e.con.insert(c, T::one());
        e
    }

    /// `self += k·other`.
    pub fn add_scaled(&mut self, other: &LinExpr<T>, k: &T) {
        for (s, c) in &other.con {
            let v = self.con.remove(s).unwrap_or_else(T::zero) + c.clone() * k.clone();
            if !v.is_zero() {
                self.con.insert(*s, v);
            }
        }
        self.rest += &other.rest.scale(k);
    }

    pub fn is_zero(&self) -> bool {
        self.con.is_empty() && self.rest.is_zero()
    }

    pub fn scale(&self, k: &T) -> Self {
        LinExpr {
            con: self.con.iter().map(|(s, c)| (*s, c.clone() * k.clone())).collect(),
            rest: self.rest.scale(k),
        }
    }

    /// Scales so that the coefficient of the highest Con (or, without Con,
    /// the first parameter term) is 1. Equal equations up to a factor become
    /// structurally equal.
    pub fn normalized(&self) -> Self {
        let lead = match self.con.iter().next_back() {
            Some((_, c)) => c.clone(),
            None => match self.rest.terms().next() {
                Some((_, c)) => c.clone(),
                None => return self.clone(),
            },
        };
        self.scale(&(T::one() / lead))
    }
}

impl<T: Scalar> fmt::Display for LinExpr<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    type P = Poly<Rational>;

    #[test]
    fn splits_con_and_parameters() {
        let p: P = "2 Con[1,2,1,2] - zeta11/9 + CVol".parse().unwrap();
        let e = LinExpr::from_poly(&p).unwrap();
        assert_eq!(e.con.get(&Symbol::con(0, 1, 0, 1)), Some(&rat(2, 1)));
        assert_eq!(e.rest.len(), 2);
        assert_eq!(e.to_poly(), p);
        assert_eq!(e.normalized().con.get(&Symbol::con(0, 1, 0, 1)), Some(&rat(1, 1)));
    }

    #[test]
    fn rejects_nonlinear_terms() {
        for bad in ["Con[1,1,1,1]^2", "zeta11 Con[1,1,1,1]", "Con[1,1,1,1] Con[1,1,1,2]", "x1 Con[1,1,1,1]"] {
            assert!(LinExpr::from_poly(&bad.parse::<P>().unwrap()).is_err(), "{bad}");
        }
    }
}
