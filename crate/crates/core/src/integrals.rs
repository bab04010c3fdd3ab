//! Face integrals over the boundary of the cube [−1,1]⁴.
//!
//! On a face x^p = ±1 the numerator is a polynomial in the three remaining
//! variables and the denominator is (1 + |y|²)^m. By symmetry every such
//! integral is a rational combination of six constants:
//!
//! | m | numerator | constant |
//! |---|-----------|----------|
//! | 3 | 1         | c₁       |
//! | 3 | t²        | c₂       |
//! | 4 | t⁴        | σ₁       |
//! | 4 | t²u²      | σ₂       |
//! | 4 | t²        | σ₃       |
//! | 4 | 1         | σ₄       |
//!
//! Monomials odd in any variable integrate to zero.

use crate::algebra::{Poly, RadialRational, Symbol};
use crate::exterior::{face_flux, FaceFunction, Form, GradeMismatch};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntegralError {
    #[error("numerator degree {degree} exceeds the weight-{m} class table (max {max})")]
    DegreeOverflow { degree: u32, m: u32, max: u32 },
    #[error("denominator r^{} does not fit weight {m}", 2 * found)]
    WeightMismatch { found: u32, m: u32 },
    #[error("unsupported weight {0}; only 3 and 4 are tabulated")]
    UnsupportedWeight(u32),
    #[error(transparent)]
    Grade(#[from] GradeMismatch),
}

/// Highest numerator degree the weight-`m` table covers.
pub fn max_degree(m: u32) -> Result<u32, IntegralError> {
    match m {
        3 => Ok(3),
        4 => Ok(5),
        _ => Err(IntegralError::UnsupportedWeight(m)),
    }
}

/// The constant for one monomial `∏ y_q^{e_q}` against `(1+|y|²)^{-m}`;
/// `None` means the integral vanishes.
pub fn class_symbol(m: u32, exps: &[u32]) -> Result<Option<Symbol>, IntegralError> {
    let max = max_degree(m)?;
    let degree: u32 = exps.iter().sum();
    if degree > max {
        return Err(IntegralError::DegreeOverflow { degree, m, max });
    }
    if exps.iter().any(|e| e % 2 == 1) {
        return Ok(None);
    }
    let mut pattern: Vec<u32> = exps.iter().copied().filter(|&e| e > 0).collect();
    pattern.sort_unstable_by(|a, b| b.cmp(a));
    let sym = match (m, pattern.as_slice()) {
        (3, []) => Symbol::c(1),
        (3, [2]) => Symbol::c(2),
        (4, []) => Symbol::sigma(4),
        (4, [2]) => Symbol::sigma(3),
        (4, [4]) => Symbol::sigma(1),
        (4, [2, 2]) => Symbol::sigma(2),
        _ => unreachable!("even patterns of bounded degree are exhausted above"),
    };
    Ok(Some(sym))
}

/// Restricts a function to the face `x^(axis+1) = side`.
pub fn restrict_to_face<T: Scalar>(f: &RadialRational<T>, axis: usize, side: i32) -> FaceFunction<T> {
    FaceFunction { axis, side, num: f.num().substitute_geom(axis, &T::from_i32(side).unwrap()), m: f.m() }
}

/// Replaces every monomial of the numerator by coefficient × class constant.
///
/// A face function of lower weight is first brought to weight `m` by
/// multiplying its numerator with (1 + |y|²)^{m − weight}.
pub fn classify_face_integral<T: Scalar>(f: &FaceFunction<T>, m: u32) -> Result<Poly<T>, IntegralError> {
    max_degree(m)?;
    if f.num.is_zero() {
        return Ok(Poly::zero());
    }
    if f.m > m {
        return Err(IntegralError::WeightMismatch { found: f.m, m });
    }
    let mut num = f.num.clone();
    if f.m < m {
        let mut face_r2 = Poly::one();
        for q in (0..4).filter(|&q| q != f.axis) {
            face_r2 += &(&Poly::x(q) * &Poly::x(q));
        }
        num = &num * &face_r2.pow(m - f.m);
    }
    let mut out = Poly::zero();
    for (mono, c) in num.terms() {
        let e = mono.geom_exponents();
        debug_assert_eq!(e[f.axis], 0, "face variable must be substituted");
        let exps: Vec<u32> = (0..4).filter(|&q| q != f.axis).map(|q| e[q]).collect();
        if let Some(sym) = class_symbol(m, &exps)? {
            out += &Poly::term(mono.params(), c.clone()).mul_monomial(&crate::algebra::Monomial::var(sym, 1), &T::one());
        }
    }
    Ok(out)
}

/// ∫ over ∂[−1,1]⁴ of a 3-form: Σ_p [I(face x^p = +1) − I(face x^p = −1)] of
/// its γ_p components, with each face integral classified at weight `m`.
pub fn integrate_over_cube_boundary<T: Scalar>(w: &Form<T>, m: u32) -> Result<Poly<T>, IntegralError> {
    let mut out = Poly::zero();
    for p in 0..4 {
        out += &classify_face_integral(&face_flux(w, p, 1)?, m)?;
        out -= &classify_face_integral(&face_flux(w, p, -1)?, m)?;
    }
    Ok(out)
}

/// Σ_p [I(f_p on x^p = +1) − I(f_p on x^p = −1)] for scalar densities f_p.
pub fn integrate_scalar_faces<T: Scalar>(f: &[RadialRational<T>; 4], m: u32) -> Result<Poly<T>, IntegralError> {
    let mut out = Poly::zero();
    for (p, fp) in f.iter().enumerate() {
        out += &classify_face_integral(&restrict_to_face(fp, p, 1), m)?;
        out -= &classify_face_integral(&restrict_to_face(fp, p, -1), m)?;
    }
    Ok(out)
}

fn sign_points<T: Scalar>(scale: i32) -> Vec<[T; 4]> {
    (0..16)
        .map(|bits: u32| std::array::from_fn(|k| T::from_i32(if bits >> k & 1 == 0 { scale } else { -scale }).unwrap()))
        .collect()
}

fn sum_at<T: Scalar>(p: &Poly<T>, points: &[[T; 4]]) -> Poly<T> {
    points.iter().fold(Poly::zero(), |acc, pt| &acc + &p.eval_geom(pt))
}

fn origin<T: Scalar>() -> [T; 4] {
    std::array::from_fn(|_| T::zero())
}

fn sym<T: Scalar>(s: Symbol) -> Poly<T> {
    Poly::symbol(s)
}

/// The weight-3 evaluation functional as printed:
/// F(p) = (1/16) Σ_{s ∈ {±1}⁴} p(s) c₁ + p(0)(c₂ − c₁).
///
/// This sends 1 ↦ c₂ and t² ↦ c₁, i.e. it equals [`classify_face_integral`]
/// with the labels c₁ and c₂ exchanged.
pub fn operator_f_eval<T: Scalar>(p: &Poly<T>) -> Poly<T> {
    let g1 = sum_at(p, &sign_points(1)).scale(&T::ratio(1, 16));
    let g0 = p.eval_geom(&origin());
    let c1 = sym::<T>(Symbol::c(1));
    let c2 = sym::<T>(Symbol::c(2));
    &(&g1 * &c1) + &(&g0 * &(&c2 - &c1))
}

/// The weight-4 evaluation functional:
/// G(p) = G₁(−σ₁/12 + σ₂/16 + σ₃/12) + G₂(−11σ₁/4 + 3σ₂ − 5σ₃/4 + σ₄)
///      + G₃(σ₁/192 − σ₃/192) + G₄(σ₁/2 − σ₂/2)
/// with G₁ the sum over {±1}⁴, G₂ = p(0), G₃ the sum over {±2}⁴ and G₄ the
/// sum over the eight points ±e_k.
pub fn operator_g_eval<T: Scalar>(p: &Poly<T>) -> Poly<T> {
    let g1 = sum_at(p, &sign_points(1));
    let g2 = p.eval_geom(&origin());
    let g3 = sum_at(p, &sign_points(2));
    let unit: Vec<[T; 4]> = (0..8)
        .map(|n| std::array::from_fn(|k| if k == n % 4 { T::from_i32(if n < 4 { 1 } else { -1 }).unwrap() } else { T::zero() }))
        .collect();
    let g4 = sum_at(p, &unit);
    let s = |n: u8| sym::<T>(Symbol::sigma(n));
    let comb = |w: [(i64, i64); 4]| {
        (1..=4u8).zip(w).fold(Poly::zero(), |acc, (n, (a, b))| &acc + &s(n).scale(&T::ratio(a, b)))
    };
    let w1 = comb([(-1, 12), (1, 16), (1, 12), (0, 1)]);
    let w2 = comb([(-11, 4), (3, 1), (-5, 4), (1, 1)]);
    let w3 = comb([(1, 192), (0, 1), (-1, 192), (0, 1)]);
    let w4 = comb([(1, 2), (-1, 2), (0, 1), (0, 1)]);
    &(&(&(&g1 * &w1) + &(&g2 * &w2)) + &(&g3 * &w3)) + &(&g4 * &w4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::gamma;
    use crate::scalar::{rat, Rational};

    type P = Poly<Rational>;
    type R = RadialRational<Rational>;

    fn face(num: P, m: u32) -> FaceFunction<Rational> {
        FaceFunction { axis: 0, side: 1, num, m }
    }

    fn sig(n: u8) -> P {
        P::symbol(Symbol::sigma(n))
    }

    #[test]
    fn classifier_examples() {
        assert_eq!(classify_face_integral(&face(P::x(1).pow(4), 4), 4).unwrap(), sig(1));
        assert!(classify_face_integral(&face(&P::x(1) * &P::x(2).pow(2), 4), 4).unwrap().is_zero());
        let r4_face = P::r2().pow(2).substitute_geom(0, &rat(1, 1));
        let expect = &(&(&sig(1).scale(&rat(3, 1)) + &sig(2).scale(&rat(6, 1))) + &sig(3).scale(&rat(6, 1))) + &sig(4);
        assert_eq!(classify_face_integral(&face(r4_face.clone(), 4), 4).unwrap(), expect);
        // The same integrand at weight 2 is lifted to weight 4 first.
        assert_eq!(classify_face_integral(&face(P::one(), 2), 4).unwrap(), expect);
    }

    #[test]
    fn classifier_errors() {
        let e = classify_face_integral(&face(P::x(1).pow(6), 4), 4).unwrap_err();
        assert!(matches!(e, IntegralError::DegreeOverflow { degree: 6, .. }));
        let e = classify_face_integral(&face(P::one(), 4), 3).unwrap_err();
        assert_eq!(e, IntegralError::WeightMismatch { found: 4, m: 3 });
    }

    fn radial_flux(num: P) -> Form<Rational> {
        let mut w = Form::zero();
        for k in 0..4 {
            w = &w + &gamma(k).scale(&R::new(&P::x(k) * &num, 4));
        }
        w
    }

    #[test]
    fn closed_forms_through_the_cube() {
        let quartic = (0..4).fold(P::zero(), |acc, k| &acc + &P::x(k).pow(4));
        let w = radial_flux(quartic);
        assert!(w.exterior_d().is_zero());
        let got = integrate_over_cube_boundary(&w, 4).unwrap();
        assert_eq!(got, (&sig(1).scale(&rat(3, 1)) + &sig(4)).scale(&rat(8, 1)));

        // Σ x^k r⁴/r⁸ γ_k is the flux density of x/r⁴.
        let got = integrate_over_cube_boundary(&radial_flux(P::r2().pow(2)), 4).unwrap();
        let inner = &(&(&sig(1).scale(&rat(3, 1)) + &sig(2).scale(&rat(6, 1))) + &sig(3).scale(&rat(6, 1))) + &sig(4);
        assert_eq!(got, inner.scale(&rat(8, 1)));
        let got = integrate_over_cube_boundary(&radial_flux(P::r2()), 4).unwrap();
        assert_eq!(got, (&sig(3).scale(&rat(3, 1)) + &sig(4)).scale(&rat(8, 1)));
        assert!(integrate_over_cube_boundary(&Form::<Rational>::zero(), 4).unwrap().is_zero());
    }

    #[test]
    fn g_operator_point_sums() {
        assert_eq!(operator_g_eval(&P::x(1).pow(4)), sig(1));
        assert_eq!(operator_g_eval(&(&P::x(1).pow(2) * &P::x(2).pow(2))), sig(2));
        assert_eq!(operator_g_eval(&P::x(1).pow(2)), sig(3));
        assert_eq!(operator_g_eval(&P::one()), sig(4));
    }

    #[test]
    fn f_operator_swaps_labels() {
        assert_eq!(operator_f_eval(&P::one()), P::symbol(Symbol::c(2)));
        assert_eq!(operator_f_eval(&P::x(2).pow(2)), P::symbol(Symbol::c(1)));
    }
}
