//! Floating-point checks of the face-integral constants and identities by
//! tensor-product Gauss–Legendre quadrature with node doubling.
//!
//! Every estimate starts at [`START_NODES`] nodes per axis and doubles until
//! two successive estimates differ by less than the tolerance; it gives up
//! with [`QuadratureError::NoConvergence`] once [`MAX_NODES`] per axis is
//! reached. Summation order is fixed, so results are deterministic.

use num_traits::{Float, FloatConst};
use rayon::prelude::*;

use crate::algebra::Poly;
use crate::scalar::Scalar;

pub const START_NODES: usize = 4;
/// Node cap per axis (256³ ≈ 1.7·10⁷ evaluations per estimate).
pub const MAX_NODES: usize = 256;

/// Scalars usable by the quadrature routines.
pub trait Real: Scalar + Float + FloatConst {}
impl<F: Scalar + Float + FloatConst> Real for F {}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<F> {
    pub value: F,
    /// |I(2n) − I(n)| for the last doubling.
    pub estimated_error: F,
    /// Points in the final grid.
    pub nodes_used: usize,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuadratureError {
    #[error("no convergence with {nodes} nodes per axis (last change {last_change:e})")]
    NoConvergence { nodes: usize, last_change: f64 },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("weight exponent must be 3 or 4, got {0}")]
    BadWeight(u32),
}

fn cast<F: Real>(v: f64) -> F {
    <F as num_traits::NumCast>::from(v).expect("f64 fits in F")
}

/// Gauss–Legendre nodes and weights on [−1, 1], by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre<F: Real>(n: usize) -> (Vec<F>, Vec<F>) {
    assert!(n > 0);
    let mut x = vec![F::zero(); n];
    let mut w = vec![F::zero(); n];
    let one = F::one();
    let two = cast::<F>(2.0);
    let nf = cast::<F>(n as f64);
    let eps = F::epsilon() * cast(4.0);
    for i in 0..n.div_ceil(2) {
        let mut z = (F::PI() * (cast::<F>(i as f64) + cast(0.75)) / (nf + cast(0.5))).cos();
        let mut dp = F::one();
        for _ in 0..100 {
            let (mut p0, mut p1) = (one, z);
            for k in 2..=n {
                let kf = cast::<F>(k as f64);
                let p2 = ((two * kf - one) * z * p1 - (kf - one) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { z } else { p1 };
            let pm = if n == 1 { one } else { p0 };
            dp = nf * (z * pn - pm) / (z * z - one);
            let dz = pn / dp;
            z = z - dz;
            if dz.abs() <= eps {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = two / ((one - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// One tensor-product estimate of ∫ f over the box `lo..hi` (per axis).
fn box_rule<F: Real, G>(f: &G, lo: [F; 3], hi: [F; 3], n: usize) -> F
where
    G: Fn([F; 3]) -> F + Sync,
{
    let (x, w) = gauss_legendre::<F>(n);
    let half = cast::<F>(0.5);
    let map = |a: usize, t: F| (lo[a] + hi[a]) * half + (hi[a] - lo[a]) * half * t;
    let jac = (0..3).fold(F::one(), |acc, a| acc * (hi[a] - lo[a]) * half);
    let slabs: Vec<F> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut s = F::zero();
            for j in 0..n {
                let mut row = F::zero();
                for k in 0..n {
                    row = row + w[k] * f([map(0, x[i]), map(1, x[j]), map(2, x[k])]);
                }
                s = s + w[j] * row;
            }
            w[i] * s
        })
        .collect();
    slabs.into_iter().fold(F::zero(), |a, b| a + b) * jac
}

/// Node doubling driver shared by every integral here.
pub fn integrate_box<F: Real, G>(f: G, lo: [F; 3], hi: [F; 3], tol: F) -> Result<QuadratureResult<F>, QuadratureError>
where
    G: Fn([F; 3]) -> F + Sync,
{
    if !(tol > F::zero()) {
        return Err(QuadratureError::BadTolerance(tol.to_f64().unwrap_or(f64::NAN)));
    }
    let mut n = START_NODES;
    let mut prev = box_rule(&f, lo, hi, n);
    loop {
        let m = 2 * n;
        let cur = box_rule(&f, lo, hi, m);
        let err = (cur - prev).abs();
        if err < tol {
            return Ok(QuadratureResult { value: cur, estimated_error: err, nodes_used: m * m * m });
        }
        if m >= MAX_NODES {
            return Err(QuadratureError::NoConvergence { nodes: m, last_change: err.to_f64().unwrap_or(f64::NAN) });
        }
        prev = cur;
        n = m;
    }
}

/// Dense form of a polynomial for fast evaluation.
fn compile<F: Real>(p: &Poly<F>) -> Vec<(F, [u32; 4])> {
    p.terms()
        .map(|(m, c)| {
            assert!(m.params().is_one(), "numerator must have numeric coefficients");
            (*c, m.geom_exponents())
        })
        .collect()
}

fn eval_compiled<F: Real>(terms: &[(F, [u32; 4])], x: [F; 4]) -> F {
    terms.iter().fold(F::zero(), |acc, (c, e)| {
        let mut v = *c;
        for k in 0..4 {
            if e[k] > 0 {
                v = v * x[k].powi(e[k] as i32);
            }
        }
        acc + v
    })
}

/// ∫_{[−1,1]³} p / r^{2m} with r² = 1 + (x²)² + (x³)² + (x⁴)², i.e. on the
/// face x¹ = 1. The numerator is a polynomial in x², x³, x⁴ (any x¹ is set
/// to 1).
pub fn numeric_cube_integral<F: Real>(numerator: &Poly<F>, m: u32, tol: F) -> Result<QuadratureResult<F>, QuadratureError> {
    if m != 3 && m != 4 {
        return Err(QuadratureError::BadWeight(m));
    }
    let terms = compile(numerator);
    let f = move |y: [F; 3]| {
        let r2 = F::one() + y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
        eval_compiled(&terms, [F::one(), y[0], y[1], y[2]]) / r2.powi(m as i32)
    };
    let one = F::one();
    integrate_box(f, [-one; 3], [one; 3], tol)
}

/// Σ_j ∫_{∂[−ρ,ρ]⁴} v_j γ_j for a vector field v, i.e. the outward flux.
pub fn cube_flux<F: Real, V>(v: V, rho: F, tol: F) -> Result<QuadratureResult<F>, QuadratureError>
where
    V: Fn([F; 4]) -> [F; 4] + Sync,
{
    let mut value = F::zero();
    let mut err = F::zero();
    let mut nodes = 0;
    let face_tol = tol / cast(8.0);
    for j in 0..4 {
        for side in [-F::one(), F::one()] {
            let f = |y: [F; 3]| {
                let mut x = [F::zero(); 4];
                let mut it = y.iter();
                for (k, xk) in x.iter_mut().enumerate() {
                    *xk = if k == j { side * rho } else { *it.next().unwrap() };
                }
                side * v(x)[j]
            };
            let r = integrate_box(f, [-rho; 3], [rho; 3], face_tol)?;
            value = value + r.value;
            err = err + r.estimated_error;
            nodes += r.nodes_used;
        }
    }
    Ok(QuadratureResult { value, estimated_error: err, nodes_used: nodes })
}

/// Flux of d(1/r²) through ∂[−ρ,ρ]⁴; equals −4π² for every ρ.
pub fn flux_identity_check<F: Real>(rho: F, tol: F) -> Result<QuadratureResult<F>, QuadratureError> {
    let grad = |x: [F; 4]| {
        let r2 = x.iter().fold(F::zero(), |a, &v| a + v * v);
        let k = cast::<F>(-2.0) / (r2 * r2);
        [k * x[0], k * x[1], k * x[2], k * x[3]]
    };
    cube_flux(grad, rho, tol)
}

/// The integrand Q(θ₁, θ₂, θ₃) of the 3-sphere integral.
pub fn sphere_q<F: Real>(t1: F, t2: F, t3: F) -> F {
    let (s1, c1) = t1.sin_cos();
    let (s2, c2) = t2.sin_cos();
    let quarter = cast::<F>(0.25);
    s1.powi(2) * s2 * (s1.powi(4) * (quarter * s2.powi(4) * ((cast::<F>(4.0) * t3).cos() + cast(3.0)) + c2.powi(4)) + c1.powi(4))
}

/// ∫ Q over (0,π)×(0,π)×(0,2π); equals π².
pub fn sphere_integral_q<F: Real>(tol: F) -> Result<QuadratureResult<F>, QuadratureError> {
    let pi = F::PI();
    integrate_box(|t: [F; 3]| sphere_q(t[0], t[1], t[2]), [F::zero(); 3], [pi, pi, pi + pi], tol)
}

/// Numeric c₁, c₂, σ₁..σ₄ in that order.
pub fn integral_constants<F: Real>(tol: F) -> Result<[QuadratureResult<F>; 6], QuadratureError> {
    let p = |s: &str| s.parse::<Poly<F>>().expect("constant numerator");
    Ok([
        numeric_cube_integral(&p("1"), 3, tol)?,
        numeric_cube_integral(&p("x2^2"), 3, tol)?,
        numeric_cube_integral(&p("x2^4"), 4, tol)?,
        numeric_cube_integral(&p("x2^2 x3^2"), 4, tol)?,
        numeric_cube_integral(&p("x2^2"), 4, tol)?,
        numeric_cube_integral(&p("1"), 4, tol)?,
    ])
}
