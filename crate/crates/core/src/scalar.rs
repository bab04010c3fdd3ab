//! Coefficient scalars.
//!
//! Everything in [`crate::algebra`], [`crate::exterior`], [`crate::metric`] and
//! [`crate::expansions`] is generic over a [`Scalar`]. The pipeline that
//! reproduces the constants table runs over exact rationals ([`Rational`]);
//! `f64` is used for spot evaluation and quadrature.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// A commutative coefficient ring (in practice a field) usable as the
/// coefficient type of [`crate::algebra::Poly`].
pub trait Scalar:
    Num + Clone + Neg<Output = Self> + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Builds `n / d`. Panics on `d == 0`.
    fn ratio(n: i64, d: i64) -> Self;

    /// Renders the value in the `p/q` text form used by the structured file formats.
    fn to_pq(&self) -> String {
        format!("{self}")
    }

    /// Inverse of [`Scalar::to_pq`].
    fn from_pq(s: &str) -> Option<Self>;
}

impl Scalar for Rational {
    fn ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn from_pq(s: &str) -> Option<Self> {
        parse_rational(s)
    }
}

impl Scalar for f64 {
    fn ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        n as f64 / d as f64
    }

    fn from_pq(s: &str) -> Option<Self> {
        s.trim().parse().ok().or_else(|| parse_rational(s)?.to_f64())
    }
}

impl Scalar for f32 {
    fn ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        n as f32 / d as f32
    }

    fn from_pq(s: &str) -> Option<Self> {
        s.trim().parse().ok().or_else(|| parse_rational(s)?.to_f32())
    }
}

/// Shorthand for an exact rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

/// Parses `p/q` or `p` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}
