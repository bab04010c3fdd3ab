//! Correction terms in the expansions of the harmonic functions u_ij and the
//! harmonic 1-forms ω_{i₁i₂} on the exterior region (cutoff ≡ 1).
//!
//! The Laplacian is the geometer's one, Δ = −Σ_k ∂_k², so Δη̃ = 2h and
//! Δμ̃ = L.

use crate::algebra::{Poly, RadialRational, Symbol};
use crate::exterior::{Form, IndexSet};
use crate::metric::{symbolic_h, Tensor2};
use crate::scalar::Scalar;

/// Kronecker delta as 0/1.
fn delta(a: usize, b: usize) -> bool {
    a == b
}

/// η̃_ij = h_ij r²/4.
pub fn eta_tilde<T: Scalar>(h: &Tensor2<T>, i: usize, j: usize) -> RadialRational<T> {
    h.get(i, j).mul_poly(&Poly::r2()).scale(&T::ratio(1, 4))
}

/// ∂_k h_ij for all i, j, k, indexed `[i][j][k]`.
pub fn h_derivatives<T: Scalar>(h: &Tensor2<T>) -> Vec<Vec<Vec<RadialRational<T>>>> {
    (0..4)
        .map(|i| (0..4).map(|j| (0..4).map(|k| h.get(i, j).derivative(k)).collect()).collect())
        .collect()
}

/// L_{i₁i₂}, assembled literally:
/// Σ_k ∂_k(h_{i₁i₂} + Σ_j x^{i₁} ∂_j h_{i₂j}) dx^k
/// + Σ_{i,j,k,l} (δ_{i₁l}δ_{i₂k} − δ_{i₁k}δ_{i₂l}) ∂_j(δ_{ik}h_{jl} + h_{ik}δ_{jl}) dx^i.
pub fn l_form<T: Scalar>(h: &Tensor2<T>, i1: usize, i2: usize) -> Form<T> {
    let mut inner = h.get(i1, i2).clone();
    for j in 0..4 {
        inner = &inner + &h.get(i2, j).derivative(j).mul_poly(&Poly::x(i1));
    }
    let mut coeffs: [RadialRational<T>; 4] = std::array::from_fn(|k| inner.derivative(k));
    for (i, coeff) in coeffs.iter_mut().enumerate() {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    let sign = delta(i1, l) as i32 * delta(i2, k) as i32 - delta(i1, k) as i32 * delta(i2, l) as i32;
                    if sign == 0 {
                        continue;
                    }
                    let mut t = RadialRational::zero();
                    if delta(i, k) {
                        t = &t + h.get(j, l);
                    }
                    if delta(j, l) {
                        t = &t + h.get(i, k);
                    }
                    let d = t.derivative(j);
                    *coeff = if sign > 0 { &*coeff + &d } else { &*coeff - &d };
                }
            }
        }
    }
    Form::one_form(coeffs)
}

/// μ̃ = L r²/12.
pub fn mu_tilde<T: Scalar>(l: &Form<T>) -> Form<T> {
    let r2 = RadialRational::from_poly(Poly::r2());
    l.scale(&r2).scale_const(&T::ratio(1, 12))
}

/// Σ_{k,l} Con[i₁,i₂,k,l] x^k / r⁴ dx^l.
pub fn con_form<T: Scalar>(i1: usize, i2: usize) -> Form<T> {
    Form::one_form(std::array::from_fn(|l| {
        let mut num = Poly::zero();
        for k in 0..4 {
            num += &(&Poly::symbol(Symbol::con(i1, i2, k, l)) * &Poly::x(k));
        }
        RadialRational::new(num, 2)
    }))
}

/// Γ_ij^k = ½(∂_j h_ik + ∂_i h_jk − ∂_k h_ij), leading order.
pub fn christoffel_leading<T: Scalar>(h: &Tensor2<T>, i: usize, j: usize, k: usize) -> RadialRational<T> {
    let s = &(&h.get(i, k).derivative(j) + &h.get(j, k).derivative(i)) - &h.get(i, j).derivative(k);
    s.scale(&T::ratio(1, 2))
}

/// Every correction term, built once from h.
#[derive(Clone, Debug)]
pub struct ExpansionTerms<T> {
    pub h: Tensor2<T>,
    /// η̃_ij.
    pub eta: Tensor2<T>,
    l: Vec<Form<T>>,
    mu: Vec<Form<T>>,
    tomega: Vec<Form<T>>,
    omega: Vec<Form<T>>,
    /// u_ij.
    pub u: Tensor2<T>,
    /// Γ_ij^k indexed `[16·i + 4·j + k]`.
    gamma_chr: Vec<RadialRational<T>>,
}

impl<T: Scalar> ExpansionTerms<T> {
    /// Builds everything from h. `c_vol` is the coefficient of 1/r² in u_ii.
    pub fn build(h: Tensor2<T>, c_vol: &Poly<T>) -> Self {
        let eta = Tensor2::from_fn(|i, j| eta_tilde(&h, i, j));
        let pairs: Vec<(usize, usize)> = (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).collect();
        let l: Vec<Form<T>> = pairs.iter().map(|&(a, b)| l_form(&h, a, b)).collect();
        let mu: Vec<Form<T>> = l.iter().map(mu_tilde).collect();
        let tomega: Vec<Form<T>> = pairs.iter().zip(&mu).map(|(&(a, b), m)| m + &con_form(a, b)).collect();
        let omega: Vec<Form<T>> = pairs
            .iter()
            .zip(&tomega)
            .map(|(&(a, b), t)| &Form::basis(IndexSet::single(b), RadialRational::x(a)) - t)
            .collect();
        let u = Tensor2::from_fn(|i, j| {
            let base = &RadialRational::from_poly(&Poly::x(i) * &Poly::x(j)) - eta.get(i, j);
            if i == j {
                &base + &RadialRational::new(c_vol.clone(), 1)
            } else {
                base
            }
        });
        let mut gamma_chr = Vec::with_capacity(64);
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    gamma_chr.push(christoffel_leading(&h, i, j, k));
                }
            }
        }
        ExpansionTerms { h, eta, l, mu, tomega, omega, u, gamma_chr }
    }

    /// Fully symbolic ζ, ξ and C_ii = CVol.
    pub fn symbolic() -> Self {
        ExpansionTerms::build(symbolic_h(), &Poly::symbol(Symbol::CVol))
    }

    pub fn l(&self, i1: usize, i2: usize) -> &Form<T> {
        &self.l[4 * i1 + i2]
    }

    pub fn mu(&self, i1: usize, i2: usize) -> &Form<T> {
        &self.mu[4 * i1 + i2]
    }

    /// ω̃_{i₁i₂} = μ̃_{i₁i₂} + Σ Con[i₁,i₂,k,l] x^k/r⁴ dx^l.
    pub fn tomega(&self, i1: usize, i2: usize) -> &Form<T> {
        &self.tomega[4 * i1 + i2]
    }

    /// ω_{i₁i₂} = x^{i₁}dx^{i₂} − ω̃_{i₁i₂}.
    pub fn omega(&self, i1: usize, i2: usize) -> &Form<T> {
        &self.omega[4 * i1 + i2]
    }

    pub fn christoffel(&self, i: usize, j: usize, k: usize) -> &RadialRational<T> {
        &self.gamma_chr[16 * i + 4 * j + k]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Homogeneity;
    use crate::metric::{build_h, SymParam3};
    use crate::scalar::{rat, Rational};

    type R = RadialRational<Rational>;

    fn terms() -> &'static ExpansionTerms<Rational> {
        use std::sync::OnceLock;
        static T: OnceLock<ExpansionTerms<Rational>> = OnceLock::new();
        T.get_or_init(ExpansionTerms::symbolic)
    }

    #[test]
    fn eta_laplacian_is_twice_h() {
        let t = terms();
        for i in 0..4 {
            for j in i..4 {
                let lap = -&t.eta.get(i, j).flat_laplacian();
                assert_eq!(lap, t.h.get(i, j).scale(&rat(2, 1)), "({i},{j})");
                assert_eq!(t.eta.get(i, j).homogeneity(), Homogeneity::Degree(-2));
            }
        }
    }

    #[test]
    fn mu_laplacian_is_l() {
        let t = terms();
        for i1 in 0..4 {
            for i2 in 0..4 {
                for k in 0..4 {
                    let mu = t.mu(i1, i2).component(k);
                    assert_eq!(-&mu.flat_laplacian(), t.l(i1, i2).component(k));
                    assert!(matches!(mu.homogeneity(), Homogeneity::Degree(-3) | Homogeneity::Zero));
                    assert!(t.l(i1, i2).component(k).flat_laplacian().is_zero());
                }
            }
        }
    }

    #[test]
    fn u_and_omega_shapes() {
        let t = terms();
        let expect = &(&R::from_poly(&Poly::x(0) * &Poly::x(0)) - t.eta.get(0, 0)) + &R::new(Poly::symbol(Symbol::CVol), 1);
        assert_eq!(t.u.get(0, 0), &expect);
        assert_eq!(t.u.get(0, 1), &(&R::from_poly(&Poly::x(0) * &Poly::x(1)) - t.eta.get(0, 1)));
    }

    #[test]
    fn flat_case_is_trivial() {
        let h = build_h::<Rational>(&SymParam3::zero(), &SymParam3::zero());
        let t = ExpansionTerms::build(h, &Poly::zero());
        let con_free = |f: &Form<Rational>| f.map_coeffs(|c| {
            let mut num = c.num().clone();
            for s in Symbol::all_con() {
                num = num.substitute(s, &Poly::zero());
            }
            R::new(num, c.m())
        });
        for a in 0..4 {
            for b in 0..4 {
                assert!(t.l(a, b).is_zero());
                assert_eq!(con_free(t.omega(a, b)), Form::basis(IndexSet::single(b), R::x(a)));
            }
        }
    }

    #[test]
    fn christoffel_symmetry_and_trace() {
        let t = terms();
        for j in 0..4 {
            let mut tr = R::zero();
            for k in 0..4 {
                tr = &tr + t.christoffel(k, j, k);
                for i in 0..4 {
                    assert_eq!(t.christoffel(i, j, k), t.christoffel(j, i, k));
                }
            }
            assert!(tr.is_zero());
        }
    }
}
