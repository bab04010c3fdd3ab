use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use super::symbol::Symbol;
use crate::scalar::Scalar;

/// Guard on the geometric degree of any monomial produced by the pipeline.
pub const MAX_GEOM_DEGREE: u32 = 12;

/// A power product of symbols. Exponents are positive and the factors are
/// kept sorted by [`Symbol`] order, so geometric variables form a prefix.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(sym: Symbol, exp: u32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(sym, exp)])
        }
    }

    /// x1^a x2^b x3^c x4^d.
    pub fn geom(exps: [u32; 4]) -> Self {
        Monomial(
            exps.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, &e)| (Symbol::x(k), e))
                .collect(),
        )
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (Symbol, u32)>) -> Self {
        let mut m = Monomial::one();
        for (s, e) in factors {
            m = m.mul(&Monomial::var(s, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn exponent(&self, sym: Symbol) -> u32 {
        self.0
            .binary_search_by(|(s, _)| s.cmp(&sym))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn geom_exponents(&self) -> [u32; 4] {
        let mut out = [0; 4];
        for (s, e) in self.0.iter().take_while(|(s, _)| s.is_geom()) {
            out[s.axis().unwrap()] = *e;
        }
        out
    }

    pub fn geom_degree(&self) -> u32 {
        self.0.iter().take_while(|(s, _)| s.is_geom()).map(|(_, e)| e).sum()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    /// The non-geometric part of the monomial.
    pub fn params(&self) -> Monomial {
        Monomial(self.0.iter().filter(|(s, _)| !s.is_geom()).copied().collect())
    }

    /// Removes every power of `sym`.
    pub fn without(&self, sym: Symbol) -> Monomial {
        Monomial(self.0.iter().filter(|(s, _)| *s != sym).copied().collect())
    }

    /// Drops all geometric factors.
    pub fn without_geom(&self) -> Monomial {
        self.params()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        let m = Monomial(out);
        debug_assert!(m.geom_degree() <= MAX_GEOM_DEGREE, "geometric degree guard exceeded");
        m
    }

    /// `self / sym^e`, if that is still a monomial.
    pub fn div_var(&self, sym: Symbol, e: u32) -> Option<Monomial> {
        let have = self.exponent(sym);
        if have < e {
            return None;
        }
        let mut out = self.without(sym);
        if have > e {
            out = out.mul(&Monomial::var(sym, have - e));
        }
        Some(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (n, (s, e)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial over a [`Scalar`] ring.
///
/// Zero coefficients are never stored, so structural equality is value
/// equality.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<T> {
    terms: BTreeMap<Monomial, T>,
}

impl<T: Scalar> Default for Poly<T> {
    fn default() -> Self {
        Poly::zero()
    }
}

impl<T: Scalar> Poly<T> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: T) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn symbol(s: Symbol) -> Self {
        Poly::term(Monomial::var(s, 1), T::one())
    }

    /// Coordinate x^(k+1) for a 0-based axis.
    pub fn x(k: usize) -> Self {
        Poly::symbol(Symbol::x(k))
    }

    /// r² = Σ_k (x^k)².
    pub fn r2() -> Self {
        let mut p = Poly::zero();
        for k in 0..4 {
            p.add_term(Monomial::var(Symbol::x(k), 2), T::one());
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, T)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &T)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, T)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Monomial) -> T {
        self.terms.get(m).cloned().unwrap_or_else(T::zero)
    }

    pub fn constant_term(&self) -> T {
        self.coeff(&Monomial::one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Adds `c·m` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: T) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.clone() * c.clone()))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &T) -> Self {
        let mut out = Poly::zero();
        for (mm, v) in &self.terms {
            out.add_term(mm.mul(m), v.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Poly::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Formal ∂/∂x^(k+1); every non-geometric symbol is a constant.
    pub fn partial_derivative(&self, k: usize) -> Self {
        let sym = Symbol::x(k);
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(sym);
            if e == 0 {
                continue;
            }
            let reduced = m.div_var(sym, 1).expect("exponent checked");
            out.add_term(reduced, c.clone() * T::from_u32(e).expect("small exponent"));
        }
        out
    }

    /// Σ_k ∂²/∂(x^k)².
    pub fn flat_laplacian(&self) -> Self {
        let mut out = Poly::zero();
        for k in 0..4 {
            out += &self.partial_derivative(k).partial_derivative(k);
        }
        out
    }

    /// Replaces `sym` by the polynomial `value`.
    pub fn substitute(&self, sym: Symbol, value: &Poly<T>) -> Self {
        let mut out = Poly::zero();
        let mut powers: Vec<Poly<T>> = vec![Poly::one()];
        for (m, c) in &self.terms {
            let e = m.exponent(sym) as usize;
            if e == 0 {
                out.add_term(m.clone(), c.clone());
                continue;
            }
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            out += &powers[e].mul_monomial(&m.without(sym), c);
        }
        out
    }

    /// Substitutes a scalar for x^(k+1).
    pub fn substitute_geom(&self, k: usize, value: &T) -> Self {
        let sym = Symbol::x(k);
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(sym);
            let mut coeff = c.clone();
            for _ in 0..e {
                coeff = coeff * value.clone();
            }
            out.add_term(m.without(sym), coeff);
        }
        out
    }

    /// Evaluates every geometric variable at `point`; the result carries only
    /// parameter symbols.
    pub fn eval_geom(&self, point: &[T; 4]) -> Self {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            for (k, e) in m.geom_exponents().iter().enumerate() {
                for _ in 0..*e {
                    coeff = coeff * point[k].clone();
                }
            }
            out.add_term(m.params(), coeff);
        }
        out
    }

    /// Numeric value at a point; `None` if a non-geometric symbol is present.
    pub fn eval_f64(&self, point: &[f64; 4]) -> Option<f64> {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            if !m.params().is_one() {
                return None;
            }
            let mut v = c.to_f64()?;
            for (k, e) in m.geom_exponents().iter().enumerate() {
                v *= point[k].powi(*e as i32);
            }
            acc += v;
        }
        Some(acc)
    }

    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Converts coefficients to another scalar type through `f64`.
    pub fn to_f64(&self) -> Poly<f64> {
        self.map_coeffs(|c| c.to_f64().expect("finite coefficient"))
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms.keys().flat_map(|m| m.factors().iter().map(|(s, _)| *s)).collect()
    }

    pub fn contains_symbol(&self, sym: Symbol) -> bool {
        self.terms.keys().any(|m| m.exponent(sym) > 0)
    }

    pub fn degree_in(&self, sym: Symbol) -> u32 {
        self.terms.keys().map(|m| m.exponent(sym)).max().unwrap_or(0)
    }

    pub fn max_geom_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::geom_degree).max().unwrap_or(0)
    }

    /// The set of geometric degrees that occur.
    pub fn geom_degrees(&self) -> BTreeSet<u32> {
        self.terms.keys().map(Monomial::geom_degree).collect()
    }

    /// Coefficients of the powers of `sym`: `self = Σ_e out[e]·sym^e`.
    pub fn split_on(&self, sym: Symbol) -> BTreeMap<u32, Poly<T>> {
        let mut out: BTreeMap<u32, Poly<T>> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exponent(sym)).or_default().add_term(m.without(sym), c.clone());
        }
        out
    }

    /// Groups by geometric monomial: `self = Σ x^α · out[α]` with each
    /// `out[α]` free of geometric variables.
    pub fn group_by_geom(&self) -> BTreeMap<[u32; 4], Poly<T>> {
        let mut out: BTreeMap<[u32; 4], Poly<T>> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.geom_exponents()).or_default().add_term(m.params(), c.clone());
        }
        out
    }

    /// Exact quotient by r², or `None` if r² does not divide `self`.
    ///
    /// Long division with x¹ as the main variable: r² is monic of degree 2 in
    /// x¹, so the remainder is unique and has x¹-degree at most 1.
    pub fn div_r2(&self) -> Option<Self> {
        let x1 = Symbol::x(0);
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        let rest: Vec<Monomial> = (1..4).map(|k| Monomial::var(Symbol::x(k), 2)).collect();
        loop {
            let lead = rem
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(x1) >= 2)
                .max_by_key(|(m, _)| m.exponent(x1))
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((m, c)) = lead else { break };
            let q = m.div_var(x1, 2).expect("x1 exponent >= 2");
            quot.add_term(q.clone(), c.clone());
            rem.add_term(m, -c.clone());
            for sq in &rest {
                rem.add_term(q.mul(sq), -c.clone());
            }
        }
        rem.is_zero().then_some(quot)
    }
}

impl<T: Scalar> From<Symbol> for Poly<T> {
    fn from(s: Symbol) -> Self {
        Poly::symbol(s)
    }
}

impl<T: Scalar> AddAssign<&Poly<T>> for Poly<T> {
    fn add_assign(&mut self, rhs: &Poly<T>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<T: Scalar> SubAssign<&Poly<T>> for Poly<T> {
    fn sub_assign(&mut self, rhs: &Poly<T>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<T: Scalar> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<T: Scalar> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<T: Scalar> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl<T: Scalar> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $f(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$f(&rhs)
            }
        }
        impl<T: Scalar> $tr<&Poly<T>> for Poly<T> {
            type Output = Poly<T>;
            fn $f(self, rhs: &Poly<T>) -> Poly<T> {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -&self
    }
}

impl<T: Scalar> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}
