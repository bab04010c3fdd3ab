//! The five families of restriction equations.
//!
//! Families C and D come from identities `F = 0` with F a radial rational
//! function: F vanishes iff its numerator does, and the numerator vanishes
//! iff the parameter/Con coefficient of every x-monomial does. The clearing
//! factors 9r⁴ and 9r⁶ of the original worksheets are irrelevant here.
//!
//! The pairing families are antisymmetrized boundary integrals. The overall
//! factor ½ in β is dropped since the equations are homogeneous. The
//! covariant-pairing differences reduce to multiples of π² exactly. The
//! Laplacian-pairing differences keep σ₁/σ₂ terms after the σ₃, σ₄
//! substitution; their coefficients are emitted as separate equations next
//! to the π² coefficient (they are implied by the differential and divergence
//! families, see [`laplacian_pairing_residues`]).

use rayon::prelude::*;

use crate::algebra::{Poly, RadialRational, Symbol};
use crate::exterior::{levi_civita, wedge_sign, Form, IndexSet};
use crate::expansions::ExpansionTerms;
use crate::integrals::{integrate_over_cube_boundary, integrate_scalar_faces, IntegralError};
use crate::scalar::Scalar;

use super::linexpr::{LinExpr, NonLinear};
use super::sigma::{sigma_reduce, sigma_split, SigmaError, SigmaParts};
use super::{Equation, Family};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AssemblyError {
    #[error("{family}: {source}")]
    Integral { family: Family, source: IntegralError },
    #[error("{family} {label}: {source}")]
    Sigma { family: Family, label: String, source: SigmaError },
    #[error("{family} {label}: {source}")]
    NonLinear { family: Family, label: String, source: NonLinear },
    #[error("{family} {label}: degree in {symbol} exceeds 1")]
    ParameterDegree { family: Family, label: String, symbol: Symbol },
}

fn all_pairs() -> Vec<(usize, usize)> {
    (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).collect()
}

fn all_quads() -> Vec<[usize; 4]> {
    let mut v = Vec::with_capacity(256);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    v.push([a, b, c, d]);
                }
            }
        }
    }
    v
}

fn tuple_label(t: &[usize]) -> String {
    t.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn geom_label(e: &[u32; 4]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > 0)
        .map(|(k, &p)| if p == 1 { format!("x{}", k + 1) } else { format!("x{}^{p}", k + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Checks degree ≤ 1 in every Con, ζ, ξ and CVol.
fn check_param_degrees<T: Scalar>(p: &Poly<T>, family: Family, label: &str) -> Result<(), AssemblyError> {
    for s in p.symbols() {
        let relevant = matches!(s, Symbol::Con(..) | Symbol::Zeta(..) | Symbol::Xi(..) | Symbol::CVol);
        if relevant && p.degree_in(s) > 1 {
            return Err(AssemblyError::ParameterDegree { family, label: label.to_string(), symbol: s });
        }
    }
    Ok(())
}

/// One equation per x-monomial of the numerator of `f`.
fn numerator_equations<T: Scalar>(
    f: &RadialRational<T>,
    family: Family,
    label: &str,
) -> Result<Vec<Equation<T>>, AssemblyError> {
    let mut out = Vec::new();
    for (e, coeff) in f.num().group_by_geom() {
        let l = format!("{label} [{}]", geom_label(&e));
        check_param_degrees(&coeff, family, &l)?;
        let expr = LinExpr::from_poly(&coeff)
            .map_err(|source| AssemblyError::NonLinear { family, label: l.clone(), source })?;
        out.push(Equation { family, label: l, expr });
    }
    Ok(out)
}

/// Q_ijl = ∂_l η̃_ij + Σ_k h_kl ∂_k(x^i x^j), the flux density of the
/// corrected harmonic coordinate u_ij through γ_l (without the C/r² term).
pub fn harmonic_flux_form<T: Scalar>(t: &ExpansionTerms<T>, i: usize, j: usize) -> Form<T> {
    let xx = RadialRational::from_poly(&Poly::x(i) * &Poly::x(j));
    let mut w = Form::zero();
    for l in 0..4 {
        let mut q = t.eta.get(i, j).derivative(l);
        for k in 0..4 {
            q = &q + &(t.h.get(k, l) * &xx.derivative(k));
        }
        w = &w + &crate::exterior::gamma(l).scale(&q);
    }
    w
}

/// Int[i,j] for all 16 pairs, as polynomials in c₁, c₂ and the parameters.
pub fn assemble_harmonic_boundary<T: Scalar>(
    t: &ExpansionTerms<T>,
) -> Result<Vec<((usize, usize), Poly<T>)>, AssemblyError> {
    all_pairs()
        .into_par_iter()
        .map(|(i, j)| {
            let w = harmonic_flux_form(t, i, j);
            integrate_over_cube_boundary(&w, 3)
                .map(|v| ((i, j), v))
                .map_err(|source| AssemblyError::Integral { family: Family::HarmonicBoundary, source })
        })
        .collect()
}

/// du_ij − ω_ij − ω_ji = 0 for i ≤ j (for i = j this is du_ii = 2ω_ii).
pub fn assemble_differential<T: Scalar>(t: &ExpansionTerms<T>) -> Result<Vec<Equation<T>>, AssemblyError> {
    let pairs: Vec<(usize, usize)> = all_pairs().into_iter().filter(|(i, j)| i <= j).collect();
    let per_pair: Result<Vec<Vec<Equation<T>>>, AssemblyError> = pairs
        .into_par_iter()
        .map(|(i, j)| {
            let du = Form::function(t.u.get(i, j).clone()).exterior_d();
            let xi = &(&du - t.omega(i, j)) - t.omega(j, i);
            let mut out = Vec::new();
            for l in 0..4 {
                let label = format!("u[{}] dx{}", tuple_label(&[i, j]), l + 1);
                out.extend(numerator_equations(&xi.component(l), Family::Differential, &label)?);
            }
            Ok(out)
        })
        .collect();
    Ok(per_pair?.into_iter().flatten().collect())
}

/// h_{i₁i₂} + Σ_l ∂_l ω̃_{i₁i₂;l} + Σ_j x^{i₁} ∂_j h_{i₂j} = 0.
pub fn divergence_expr<T: Scalar>(t: &ExpansionTerms<T>, i1: usize, i2: usize) -> RadialRational<T> {
    let mut f = t.h.get(i1, i2).clone();
    for l in 0..4 {
        f = &f + &t.tomega(i1, i2).component(l).derivative(l);
    }
    let xi1 = Poly::x(i1);
    for j in 0..4 {
        f = &f + &t.h.get(i2, j).derivative(j).mul_poly(&xi1);
    }
    f
}

pub fn assemble_divergence<T: Scalar>(t: &ExpansionTerms<T>) -> Result<Vec<Equation<T>>, AssemblyError> {
    let per_pair: Result<Vec<Vec<Equation<T>>>, AssemblyError> = all_pairs()
        .into_par_iter()
        .map(|(i1, i2)| {
            let label = format!("div[{}]", tuple_label(&[i1, i2]));
            numerator_equations(&divergence_expr(t, i1, i2), Family::Divergence, &label)
        })
        .collect();
    Ok(per_pair?.into_iter().flatten().collect())
}

/// The 3-form α_{i₁i₂i₃i₄} (leading term of *dω_{i₁i₂} ∧ ω_{i₃i₄}):
///
/// −Σ [j₃<j₄, j's distinct] ε_{j₁j₂j₃j₄} dx^{j₃}∧dx^{j₄}∧dx^t
///   ( [i₁=j₁][i₂=j₂] ω̃_{i₃i₄;t}
///   + ([i₁=j₁]h_{i₂j₂} + h_{i₁j₁}[i₂=j₂] + ∂_{j₁}ω̃_{i₁i₂;j₂}) x^{i₃}[i₄=t] ).
pub fn laplacian_pairing_form<T: Scalar>(t: &ExpansionTerms<T>, q: [usize; 4]) -> Form<T> {
    let [i1, i2, i3, i4] = q;
    let xi3 = Poly::x(i3);
    let mut w = Form::zero();
    for j1 in 0..4 {
        for j2 in 0..4 {
            for j3 in 0..4 {
                for j4 in j3 + 1..4 {
                    let eps = levi_civita(j1, j2, j3, j4);
                    if eps == 0 {
                        continue;
                    }
                    let pair = IndexSet::new(&[j3, j4]).unwrap();
                    for tt in 0..4 {
                        let Some(ws) = wedge_sign(pair, IndexSet::single(tt)) else { continue };
                        let mut c = RadialRational::zero();
                        if i1 == j1 && i2 == j2 {
                            c = &c + &t.tomega(i3, i4).component(tt);
                        }
                        if i4 == tt {
                            let mut inner = t.tomega(i1, i2).component(j2).derivative(j1);
                            if i1 == j1 {
                                inner = &inner + t.h.get(i2, j2);
                            }
                            if i2 == j2 {
                                inner = &inner + t.h.get(i1, j1);
                            }
                            c = &c + &inner.mul_poly(&xi3);
                        }
                        if c.is_zero() {
                            continue;
                        }
                        let set = IndexSet::new(&{
                            let mut v = vec![j3, j4, tt];
                            v.sort_unstable();
                            v
                        })
                        .unwrap();
                        let sign = -eps * ws;
                        w.add_term(set, if sign > 0 { c } else { -c });
                    }
                }
            }
        }
    }
    w
}

/// V_{i₁i₂i₃i₄;j}, the β-integrand on the faces x^j = ±1:
/// −(ω̃_{i₁i₂;i₄}[i₃=j] + x^{i₁}(∂_jω̃_{i₃i₄;i₂} + x^{i₃}Γ_{i₂j}^{i₄})
///   + x^{i₁}[i₂=i₄]h_{i₃j} + x^{i₁}[i₃=j]h_{i₂i₄}).
pub fn covariant_pairing_density<T: Scalar>(t: &ExpansionTerms<T>, q: [usize; 4], j: usize) -> RadialRational<T> {
    let [i1, i2, i3, i4] = q;
    let xi1 = Poly::x(i1);
    let mut inner = &t.tomega(i3, i4).component(i2).derivative(j) + &t.christoffel(i2, j, i4).mul_poly(&Poly::x(i3));
    if i2 == i4 {
        inner = &inner + t.h.get(i3, j);
    }
    if i3 == j {
        inner = &inner + t.h.get(i2, i4);
    }
    let mut v = inner.mul_poly(&xi1);
    if i3 == j {
        v = &v + &t.tomega(i1, i2).component(i4);
    }
    -v
}

/// Ordered tuple pairs (a, b) with b the swap (i₃,i₄,i₁,i₂) of a, a < b.
fn swap_pairs() -> Vec<([usize; 4], [usize; 4])> {
    all_quads()
        .into_iter()
        .map(|a| (a, [a[2], a[3], a[0], a[1]]))
        .filter(|(a, b)| a < b)
        .collect()
}

fn antisymmetrized<T: Scalar>(
    integrals: &[Poly<T>],
    family: Family,
    name: &str,
    keep_residues: bool,
) -> Result<Vec<Equation<T>>, AssemblyError> {
    let mut out = Vec::new();
    for (a, b, diff) in pair_differences(integrals) {
        let label = format!("{name}[{}]-{name}[{}]", tuple_label(&a), tuple_label(&b));
        check_param_degrees(&diff, family, &label)?;
        let err = |source| AssemblyError::Sigma { family, label: label.clone(), source };
        if !keep_residues {
            let expr = sigma_reduce(&diff).map_err(err)?;
            out.push(Equation { family, label, expr });
            continue;
        }
        let parts = sigma_split(&diff).map_err(err)?;
        for (suffix, expr) in [("", parts.pi2), (" [sigma1]", parts.sigma1), (" [sigma2]", parts.sigma2)] {
            if suffix.is_empty() || !expr.is_zero() {
                out.push(Equation { family, label: format!("{label}{suffix}"), expr });
            }
        }
    }
    Ok(out)
}

/// `(a, b, I[a] − I[b])` for every swapped pair, in tuple order.
pub fn pair_differences<T: Scalar>(integrals: &[Poly<T>]) -> Vec<([usize; 4], [usize; 4], Poly<T>)> {
    let idx = |q: &[usize; 4]| 64 * q[0] + 16 * q[1] + 4 * q[2] + q[3];
    swap_pairs().into_iter().map(|(a, b)| (a, b, &integrals[idx(&a)] - &integrals[idx(&b)])).collect()
}

/// σ₁/σ₂ coefficients left in each Laplacian-pairing difference after the
/// σ₃, σ₄ substitution, keyed by the tuple pair. Empty residues are omitted.
pub fn laplacian_pairing_residues<T: Scalar>(
    integrals: &[Poly<T>],
) -> Result<Vec<(([usize; 4], [usize; 4]), SigmaParts<T>)>, AssemblyError> {
    let mut out = Vec::new();
    for (a, b, diff) in pair_differences(integrals) {
        let parts = sigma_split(&diff).map_err(|source| AssemblyError::Sigma {
            family: Family::LaplacianPairing,
            label: format!("Int2[{}]-Int2[{}]", tuple_label(&a), tuple_label(&b)),
            source,
        })?;
        if parts.has_residue() {
            out.push(((a, b), parts));
        }
    }
    Ok(out)
}

/// Int2 for all 256 tuples, indexed by 64i₁ + 16i₂ + 4i₃ + i₄.
pub fn laplacian_pairing_integrals<T: Scalar>(t: &ExpansionTerms<T>) -> Result<Vec<Poly<T>>, AssemblyError> {
    all_quads()
        .into_par_iter()
        .map(|q| {
            integrate_over_cube_boundary(&laplacian_pairing_form(t, q), 4)
                .map_err(|source| AssemblyError::Integral { family: Family::LaplacianPairing, source })
        })
        .collect()
}

/// VInt for all 256 tuples, indexed by 64i₁ + 16i₂ + 4i₃ + i₄.
pub fn covariant_pairing_integrals<T: Scalar>(t: &ExpansionTerms<T>) -> Result<Vec<Poly<T>>, AssemblyError> {
    all_quads()
        .into_par_iter()
        .map(|q| {
            let v: [RadialRational<T>; 4] = std::array::from_fn(|j| covariant_pairing_density(t, q, j));
            integrate_scalar_faces(&v, 4).map_err(|source| AssemblyError::Integral { family: Family::CovariantPairing, source })
        })
        .collect()
}

pub fn assemble_laplacian_pairing<T: Scalar>(t: &ExpansionTerms<T>) -> Result<Vec<Equation<T>>, AssemblyError> {
    antisymmetrized(&laplacian_pairing_integrals(t)?, Family::LaplacianPairing, "Int2", true)
}

pub fn assemble_covariant_pairing<T: Scalar>(t: &ExpansionTerms<T>) -> Result<Vec<Equation<T>>, AssemblyError> {
    antisymmetrized(&covariant_pairing_integrals(t)?, Family::CovariantPairing, "VInt", false)
}

/// Equations of one family. The harmonic-boundary family contributes no Con
/// equations; its integrals are checked to vanish instead, and a nonzero one
/// is returned as a c₁/c₂ coefficient equation.
pub fn assemble_family<T: Scalar>(t: &ExpansionTerms<T>, family: Family) -> Result<Vec<Equation<T>>, AssemblyError> {
    match family {
        Family::HarmonicBoundary => {
            let mut out = Vec::new();
            for ((i, j), v) in assemble_harmonic_boundary(t)? {
                for c in [Symbol::c(1), Symbol::c(2)] {
                    let coeff = v.split_on(c).remove(&1).unwrap_or_default();
                    if !coeff.is_zero() {
                        let label = format!("Int[{}] {c}", tuple_label(&[i, j]));
                        let expr = LinExpr::from_poly(&coeff)
                            .map_err(|source| AssemblyError::NonLinear { family, label: label.clone(), source })?;
                        out.push(Equation { family, label, expr });
                    }
                }
            }
            Ok(out)
        }
        Family::Differential => assemble_differential(t),
        Family::Divergence => assemble_divergence(t),
        Family::LaplacianPairing => assemble_laplacian_pairing(t),
        Family::CovariantPairing => assemble_covariant_pairing(t),
    }
}
