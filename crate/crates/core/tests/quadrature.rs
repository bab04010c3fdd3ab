use std::f64::consts::PI;

use ale_expansion::algebra::{Poly, Symbol};
use ale_expansion::equations::laplacian_pairing_integrals;
use ale_expansion::expansions::ExpansionTerms;
use ale_expansion::quadrature::*;
use ale_expansion::scalar::Rational;

// Frozen from a converged run at tol 1e-13 (64 nodes per axis).
const C1: f64 = 1.523_749_957_185_192_2;
const C2: f64 = 0.314_550_381_029_048_25;
const SIGMA: [f64; 4] = [0.076_208_547_394_738_33, 0.032_725_075_278_281_79, 0.172_891_683_077_746_36, 1.005_074_907_951_953_6];

fn constants() -> [f64; 6] {
    integral_constants::<f64>(1e-10).unwrap().map(|r| r.value)
}

#[test]
fn regression_values() {
    let v = constants();
    let frozen = [C1, C2, SIGMA[0], SIGMA[1], SIGMA[2], SIGMA[3]];
    for (a, b) in v.iter().zip(frozen) {
        assert!((a - b).abs() < 1e-9, "{a} vs {b}");
    }
}

#[test]
fn sigma_identities() {
    let [_, _, s1, s2, s3, s4] = constants();
    assert!((8.0 * (3.0 * s1 + 6.0 * s2 + 6.0 * s3 + s4) - 2.0 * PI * PI).abs() < 1e-8);
    assert!((3.0 * s1 - 6.0 * s2 - 6.0 * s3 + s4).abs() < 1e-8);
    assert!((8.0 * (3.0 * s1 + s4) - PI * PI).abs() < 1e-8);
}

#[test]
fn flux_of_inverse_square() {
    for rho in [1.0, 2.0] {
        let r = flux_identity_check::<f64>(rho, 1e-9).unwrap();
        assert!((r.value + 4.0 * PI * PI).abs() < 1e-7, "rho={rho}: {}", r.value);
    }
    let r = cube_flux(|_x: [f64; 4]| [1.0, 0.0, 0.0, 0.0], 1.0, 1e-10).unwrap();
    assert!(r.value.abs() < 1e-12);
}

#[test]
fn inverse_fourth_power_face_integral() {
    let r = integrate_box(
        |y: [f64; 3]| {
            let r2 = 1.0 + y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
            1.0 / (r2 * r2)
        },
        [-1.0; 3],
        [1.0; 3],
        1e-11,
    )
    .unwrap();
    assert!((r.value - PI * PI / 4.0).abs() < 1e-8);
}

#[test]
fn sphere_integral() {
    let r = sphere_integral_q::<f64>(1e-10).unwrap();
    assert!((r.value - PI * PI).abs() < 1e-8);
    let mut state = 0x2545_f491_u64;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    for _ in 0..100 {
        let (a, b, c) = (next() * PI, next() * PI, next() * 2.0 * PI);
        assert!(sphere_q(a, b, c) >= 0.0);
    }
}

#[test]
fn error_estimate_shrinks_under_doubling() {
    let coarse = sphere_integral_q::<f64>(1e-3).unwrap();
    let fine = sphere_integral_q::<f64>(1e-10).unwrap();
    assert!(fine.nodes_used > coarse.nodes_used);
    assert!(fine.estimated_error <= coarse.estimated_error / 2.0);
}

#[test]
fn f32_instantiation() {
    let r = sphere_integral_q::<f32>(1e-4).unwrap();
    assert!((r.value - std::f32::consts::PI.powi(2)).abs() < 1e-3);
}

/// Evaluates σ-containing integrals numerically before and after the σ₃/σ₄
/// elimination; both must agree coefficientwise.
#[test]
fn sigma_reduction_matches_numeric_values() {
    let terms = ExpansionTerms::<Rational>::symbolic();
    let ints = laplacian_pairing_integrals(&terms).unwrap();
    let numeric = |p: &Poly<Rational>, with_pi: bool| -> Poly<f64> {
        let mut q = p.to_f64();
        for (n, v) in SIGMA.iter().enumerate() {
            q = q.substitute(Symbol::sigma(n as u8 + 1), &Poly::constant(*v));
        }
        if with_pi {
            q = q.substitute(Symbol::PiSq, &Poly::constant(PI * PI));
        }
        q
    };
    let mut checked = 0;
    for p in ints.iter().step_by(7) {
        let direct = numeric(p, false);
        let reduced = numeric(&sigma_substitute_loose(p), true);
        let scale = direct.terms().map(|(_, c)| c.abs()).fold(0.0, f64::max).max(1e-300);
        let diff = &direct - &reduced;
        for (m, c) in diff.terms() {
            assert!(c.abs() <= 1e-6 * scale, "{m}: {c}");
        }
        checked += 1;
    }
    assert!(checked > 30);
}

/// σ₄, σ₃ elimination without the residue check that `sigma_substitute`
/// applies.
fn sigma_substitute_loose(p: &Poly<Rational>) -> Poly<Rational> {
    let r = |a: i64, b: i64| Rational::new(a.into(), b.into());
    let pi2 = Poly::<Rational>::symbol(Symbol::PiSq);
    let s4 = &pi2.scale(&r(1, 8)) - &Poly::symbol(Symbol::sigma(1)).scale(&r(3, 1));
    let s3 = &pi2.scale(&r(1, 48)) - &Poly::symbol(Symbol::sigma(2));
    p.substitute(Symbol::sigma(4), &s4).substitute(Symbol::sigma(3), &s3)
}
