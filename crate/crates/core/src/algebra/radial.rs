use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::Poly;
use super::symbol::Symbol;
use crate::scalar::Scalar;

/// `num / r^(2m)` with `r² = Σ_k (x^k)²`.
///
/// Always canonical: either `m == 0` or r² does not divide `num`. Zero is
/// stored as `0 / r^0`.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialRational<T> {
    num: Poly<T>,
    m: u32,
}

/// Result of [`RadialRational::homogeneity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// The value is identically zero, so every degree fits.
    Zero,
    Degree(i32),
    NotHomogeneous,
}

/// `(r²)^n` as a polynomial.
pub fn r2_pow<T: Scalar>(n: u32) -> Poly<T> {
    Poly::r2().pow(n)
}

impl<T: Scalar> Default for RadialRational<T> {
    fn default() -> Self {
        RadialRational::zero()
    }
}

impl<T: Scalar> RadialRational<T> {
    pub fn zero() -> Self {
        RadialRational { num: Poly::zero(), m: 0 }
    }

    pub fn one() -> Self {
        RadialRational::from_poly(Poly::one())
    }

    pub fn constant(c: T) -> Self {
        RadialRational::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly<T>) -> Self {
        RadialRational { num: p, m: 0 }
    }

    pub fn x(k: usize) -> Self {
        RadialRational::from_poly(Poly::x(k))
    }

    pub fn symbol(s: Symbol) -> Self {
        RadialRational::from_poly(Poly::symbol(s))
    }

    /// `num / r^(2m)`, canonicalized.
    pub fn new(num: Poly<T>, m: u32) -> Self {
        RadialRational { num, m }.canonicalize()
    }

    /// `1 / r^(2m)`.
    pub fn inv_r2_pow(m: u32) -> Self {
        RadialRational { num: Poly::one(), m }
    }

    pub fn num(&self) -> &Poly<T> {
        &self.num
    }

    /// Denominator exponent: the value is `num / r^(2m)`.
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Divides out every power of r² that divides the numerator.
    pub fn canonicalize(mut self) -> Self {
        if self.num.is_zero() {
            self.m = 0;
            return self;
        }
        while self.m > 0 {
            match self.num.div_r2() {
                Some(q) => {
                    self.num = q;
                    self.m -= 1;
                }
                None => break,
            }
        }
        self
    }

    /// The numerator over the larger denominator `r^(2·target)`.
    ///
    /// Panics if `target < self.m()`.
    pub fn lift_to(&self, target: u32) -> Poly<T> {
        assert!(target >= self.m, "cannot lift r^{} to r^{}", 2 * self.m, 2 * target);
        if target == self.m {
            self.num.clone()
        } else {
            &self.num * &r2_pow(target - self.m)
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        RadialRational { num: self.num.scale(c), m: self.m }.canonicalize()
    }

    pub fn mul_poly(&self, p: &Poly<T>) -> Self {
        RadialRational::new(&self.num * p, self.m)
    }

    /// Quotient rule: `∂_k(P/r^{2m}) = (∂_kP·r² − 2m·x^k·P)/r^{2m+2}`.
    pub fn derivative(&self, k: usize) -> Self {
        if self.m == 0 {
            return RadialRational { num: self.num.partial_derivative(k), m: 0 };
        }
        let dp = &self.num.partial_derivative(k) * &Poly::r2();
        let two_m = T::from_u32(2 * self.m).expect("small exponent");
        let corr = (&Poly::x(k) * &self.num).scale(&two_m);
        RadialRational::new(&dp - &corr, self.m + 1)
    }

    /// Σ_k ∂²/∂(x^k)². The geometer's Laplacian is the negative of this.
    pub fn flat_laplacian(&self) -> Self {
        let mut out = RadialRational::zero();
        for k in 0..4 {
            out = &out + &self.derivative(k).derivative(k);
        }
        out
    }

    /// Degree of homogeneity in the geometric variables, `deg(num) − 2m`.
    pub fn homogeneity(&self) -> Homogeneity {
        let degs = self.num.geom_degrees();
        match degs.len() {
            0 => Homogeneity::Zero,
            1 => Homogeneity::Degree(*degs.iter().next().unwrap() as i32 - 2 * self.m as i32),
            _ => Homogeneity::NotHomogeneous,
        }
    }

    /// Replaces a non-geometric symbol by a geometric-free polynomial.
    pub fn substitute(&self, sym: Symbol, value: &Poly<T>) -> Self {
        RadialRational::new(self.num.substitute(sym, value), self.m)
    }

    pub fn eval_f64(&self, point: &[f64; 4]) -> Option<f64> {
        let r2: f64 = point.iter().map(|v| v * v).sum();
        Some(self.num.eval_f64(point)? / r2.powi(self.m as i32))
    }

    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> RadialRational<U> {
        RadialRational::new(self.num.map_coeffs(f), self.m)
    }

    /// Cross-multiplied equality `a.num·r^{2b.m} = b.num·r^{2a.m}`; holds for
    /// equal values whether or not either side is canonical.
    pub fn value_eq(&self, other: &Self) -> bool {
        let m = self.m.max(other.m);
        self.lift_to(m) == other.lift_to(m)
    }

    fn combine(&self, other: &Self, sub: bool) -> Self {
        let m = self.m.max(other.m);
        let a = self.lift_to(m);
        let b = other.lift_to(m);
        let num = if sub { &a - &b } else { &a + &b };
        RadialRational::new(num, m)
    }
}

impl<T: Scalar> From<Poly<T>> for RadialRational<T> {
    fn from(p: Poly<T>) -> Self {
        RadialRational::from_poly(p)
    }
}

impl<T: Scalar> Add for &RadialRational<T> {
    type Output = RadialRational<T>;
    fn add(self, rhs: &RadialRational<T>) -> RadialRational<T> {
        self.combine(rhs, false)
    }
}

impl<T: Scalar> Sub for &RadialRational<T> {
    type Output = RadialRational<T>;
    fn sub(self, rhs: &RadialRational<T>) -> RadialRational<T> {
        self.combine(rhs, true)
    }
}

impl<T: Scalar> Mul for &RadialRational<T> {
    type Output = RadialRational<T>;
    fn mul(self, rhs: &RadialRational<T>) -> RadialRational<T> {
        RadialRational::new(&self.num * &rhs.num, self.m + rhs.m)
    }
}

impl<T: Scalar> Neg for &RadialRational<T> {
    type Output = RadialRational<T>;
    fn neg(self) -> RadialRational<T> {
        RadialRational { num: -&self.num, m: self.m }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl<T: Scalar> $tr for RadialRational<T> {
            type Output = RadialRational<T>;
            fn $f(self, rhs: RadialRational<T>) -> RadialRational<T> {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Scalar> Neg for RadialRational<T> {
    type Output = RadialRational<T>;
    fn neg(self) -> RadialRational<T> {
        -&self
    }
}

impl<T: Scalar> fmt::Display for RadialRational<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/r^{}", self.num, 2 * self.m)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    type R = RadialRational<Rational>;
    type P = Poly<Rational>;

    #[test]
    fn derivative_of_inverse_r2() {
        for j in 0..4 {
            let d = R::inv_r2_pow(1).derivative(j);
            assert_eq!(d, R::new(P::x(j).scale(&rat(-2, 1)), 2));
        }
    }

    #[test]
    fn derivative_of_x1_over_r4() {
        let f = R::new(P::x(0), 2);
        let expect = &P::r2() - &(&P::x(0) * &P::x(0)).scale(&rat(4, 1));
        assert_eq!(f.derivative(0), R::new(expect, 3));
        assert!(R::constant(rat(5, 1)).derivative(2).is_zero());
    }

    #[test]
    fn canonical_forms() {
        let f = R::new(&P::r2() * &P::x(0), 2);
        assert_eq!((f.num().clone(), f.m()), (P::x(0), 1));
        let g = R::new(P::r2(), 1);
        assert_eq!(g, R::one());
        let h = R::new(P::x(0), 0);
        assert_eq!((h.num().clone(), h.m()), (P::x(0), 0));
    }

    #[test]
    fn homogeneity_degrees() {
        assert_eq!(R::new(P::x(0), 1).homogeneity(), Homogeneity::Degree(-1));
        assert_eq!(R::new(&P::one() + &P::x(0), 1).homogeneity(), Homogeneity::NotHomogeneous);
        assert_eq!(R::zero().homogeneity(), Homogeneity::Zero);
    }

    #[test]
    fn arithmetic_over_common_denominator() {
        let a = R::inv_r2_pow(1);
        let b = R::new(P::x(0), 2);
        let sum = &a + &b;
        assert_eq!(sum, R::new(&P::r2() + &P::x(0), 2));
        assert!((&sum - &sum).is_zero());
        let prod = &R::new(P::r2(), 0) * &R::inv_r2_pow(2);
        assert_eq!(prod, R::inv_r2_pow(1));
    }

    #[test]
    fn inverse_r2_is_harmonic() {
        assert!(R::inv_r2_pow(1).flat_laplacian().is_zero());
    }
}
