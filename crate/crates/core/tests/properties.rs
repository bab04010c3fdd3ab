use ale_expansion::algebra::{Monomial, Poly, RadialRational, Symbol};
use ale_expansion::exterior::{Form, IndexSet};
use ale_expansion::integrals::{classify_face_integral, operator_f_eval, operator_g_eval};
use ale_expansion::exterior::FaceFunction;
use ale_expansion::metric::{build_h, SymParam3};
use ale_expansion::scalar::Rational;
use proptest::prelude::*;

type P = Poly<Rational>;
type R = RadialRational<Rational>;
type F = Form<Rational>;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Up to `n` terms in x¹..x⁴ (axes in `axes`) of total degree ≤ `deg`,
/// optionally multiplied by one parameter symbol.
fn poly(axes: std::ops::Range<usize>, deg: u32, n: usize, params: bool) -> impl Strategy<Value = P> {
    let term = (
        prop::collection::vec(0..=deg, 4),
        -9i64..=9,
        1i64..=4,
        prop::option::weighted(0.3, 0usize..6),
    );
    prop::collection::vec(term, 0..=n).prop_map(move |ts| {
        let mut p = P::zero();
        for (e, num, den, par) in ts {
            let mut exps = [0u32; 4];
            let mut left = deg;
            for k in axes.clone() {
                let take = e[k].min(left);
                exps[k] = take;
                left -= take;
            }
            let mut m = Monomial::geom(exps);
            if let Some(z) = par.filter(|_| params) {
                m = m.mul(&Monomial::var(Symbol::all_zeta()[z], 1));
            }
            p.add_term(m, rat(num, den));
        }
        p
    })
}

fn any_poly() -> impl Strategy<Value = P> {
    poly(0..4, 3, 5, true)
}

fn radial() -> impl Strategy<Value = R> {
    (poly(0..4, 3, 3, false), 0u32..3).prop_map(|(p, m)| R::new(p, m))
}

fn form(grade: usize) -> impl Strategy<Value = F> {
    let sets = IndexSet::all_of_grade(grade);
    prop::collection::vec(prop::option::of(radial()), sets.len()).prop_map(move |cs| {
        let mut f = F::zero();
        for (s, c) in sets.iter().zip(cs) {
            if let Some(c) = c {
                f.add_term(*s, c);
            }
        }
        f
    })
}

fn forms_eq(a: &F, b: &F) -> bool {
    (a - b).terms().all(|(_, c)| c.is_zero())
}

fn swap_c(p: &P) -> P {
    let c1 = P::symbol(Symbol::c(1));
    let c2 = P::symbol(Symbol::c(2));
    let tmp = P::symbol(Symbol::PiSq);
    p.substitute(Symbol::c(1), &tmp).substitute(Symbol::c(2), &c1).substitute(Symbol::PiSq, &c2)
}

fn on_face(num: P, m: u32) -> FaceFunction<Rational> {
    FaceFunction { axis: 0, side: 1, num, m }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in any_poly(), b in any_poly(), c in any_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &P::one(), a.clone());
        prop_assert!((&a * &P::zero()).is_zero());
    }

    #[test]
    fn partial_derivatives_commute(p in any_poly(), i in 0usize..4, j in 0usize..4) {
        prop_assert_eq!(p.partial_derivative(i).partial_derivative(j), p.partial_derivative(j).partial_derivative(i));
    }

    #[test]
    fn radial_leibniz(f in radial(), g in radial(), k in 0usize..4) {
        let lhs = (&f * &g).derivative(k);
        let rhs = &(&f.derivative(k) * &g) + &(&f * &g.derivative(k));
        prop_assert!(lhs.value_eq(&rhs));
    }

    #[test]
    fn canonicalize_is_idempotent(f in radial(), k in 0u32..3) {
        let lifted = R::new(f.lift_to(f.m() + k), f.m() + k);
        let once = lifted.clone().canonicalize();
        prop_assert_eq!(once.clone().canonicalize(), once.clone());
        prop_assert!(once.value_eq(&f));
        prop_assert!(once.m() <= f.m());
    }

    #[test]
    fn g_matches_classifier(p in poly(1..4, 5, 8, true)) {
        prop_assert_eq!(operator_g_eval(&p), classify_face_integral(&on_face(p.clone(), 4), 4).unwrap());
    }

    #[test]
    fn f_matches_classifier_up_to_label_swap(p in poly(1..4, 3, 6, true)) {
        let direct = classify_face_integral(&on_face(p.clone(), 3), 3).unwrap();
        prop_assert_eq!(swap_c(&operator_f_eval(&p)), direct);
    }

    #[test]
    fn odd_monomials_vanish(p in poly(1..4, 2, 4, true), axis in 1usize..4) {
        // Make every monomial odd in the chosen axis.
        let odd = P::from_terms(p.terms().map(|(m, c)| {
            let m = if m.exponent(Symbol::x(axis)) % 2 == 0 { m.mul(&Monomial::var(Symbol::x(axis), 1)) } else { m.clone() };
            (m, c.clone())
        }));
        prop_assert!(operator_g_eval(&odd).is_zero());
        prop_assert!(classify_face_integral(&on_face(odd.clone(), 4), 4).unwrap().is_zero());
        if odd.max_geom_degree() <= 3 {
            prop_assert!(operator_f_eval(&odd).is_zero());
        }
    }
}

/// Euler's identity for a homogeneous numerator.
fn homogeneous(p: &P, d: u32) -> P {
    P::from_terms(p.terms().filter(|(m, _)| m.geom_degree() == d).map(|(m, c)| (m.clone(), c.clone())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn euler_identity(p in poly(0..4, 3, 5, true), d in 0u32..=3, m in 0u32..3) {
        let f = R::new(homogeneous(&p, d), m);
        let euler = (0..4).fold(R::zero(), |acc, k| &acc + &f.derivative(k).mul_poly(&P::x(k)));
        let expect = f.scale(&Rational::from_integer((d as i64 - 2 * m as i64).into()));
        prop_assert!(euler.value_eq(&expect));
    }

    #[test]
    fn h_is_linear(a in prop::array::uniform6(-5i64..5), b in prop::array::uniform6(-5i64..5), c in prop::array::uniform6(-5i64..5), d in prop::array::uniform6(-5i64..5)) {
        let sp = |v: [i64; 6]| SymParam3::from_values(v.map(|x| rat(x, 1)));
        let sum = |u: [i64; 6], v: [i64; 6]| std::array::from_fn(|k| u[k] + v[k]);
        let lhs = build_h(&sp(sum(a, c)), &sp(sum(b, d)));
        let rhs = build_h(&sp(a), &sp(b)).add(&build_h(&sp(c), &sp(d)));
        for i in 0..4 {
            for j in 0..4 {
                prop_assert!(lhs.get(i, j).value_eq(rhs.get(i, j)));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn graded_leibniz(p in 0usize..3, q in 0usize..2, seed_a in form(0), seed_b in form(1)) {
        // Raise the seeds to the requested grades by wedging with dx's.
        let lift = |f: F, k: usize| (0..k).fold(f, |acc, n| acc.wedge(&F::dx(3 - n)));
        let a = lift(seed_a, p);
        let b = lift(seed_b, q);
        let lhs = a.wedge(&b).exterior_d();
        let sign = if p % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
        let rhs = &a.exterior_d().wedge(&b) + &a.wedge(&b.exterior_d()).scale_const(&sign);
        prop_assert!(forms_eq(&lhs, &rhs));
    }

    #[test]
    fn d_squared_vanishes(k in 0usize..3, w in form(1), f in form(0)) {
        let w = if k == 0 { f } else { (1..k).fold(w, |acc, n| acc.wedge(&F::dx(n))) };
        prop_assert!(w.exterior_d().exterior_d().terms().all(|(_, c)| c.is_zero()));
    }

    #[test]
    fn double_hodge_star(k in 0usize..=4, w0 in form(0), w1 in form(1), w2 in form(2), w3 in form(3), w4 in form(4)) {
        let w = [w0, w1, w2, w3, w4][k].clone();
        let sign = if (k * (4 - k)) % 2 == 0 { rat(1, 1) } else { rat(-1, 1) };
        prop_assert!(forms_eq(&w.hodge_star_flat().hodge_star_flat(), &w.scale_const(&sign)));
    }
}
