//! The leading term h = h⁺ + h⁻ of an ALE metric, built from the standard
//! hyperkähler triple and the reflection ℛ = diag(1,−1,−1,−1).

use std::fmt;

use crate::algebra::{Homogeneity, Poly, RadialRational, Symbol};
use crate::exterior::Form;
use crate::scalar::Scalar;

type Mat4 = [[i32; 4]; 4];

const ID4: Mat4 = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];

/// ℛ = diag(1,−1,−1,−1).
pub const REFLECTION: Mat4 = [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]];

pub fn mat_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = [[0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn transpose(a: &Mat4) -> Mat4 {
    let mut out = [[0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[j][i];
        }
    }
    out
}

/// The complex structures J₁, J₂, J₃ = J₁J₂ as integer matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexStructureTriple {
    pub j: [Mat4; 3],
}

impl ComplexStructureTriple {
    pub fn standard() -> Self {
        let j1 = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]];
        let j2 = [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]];
        let j3 = mat_mul(&j1, &j2);
        ComplexStructureTriple { j: [j1, j2, j3] }
    }

    /// Checks J_i² = −Id, J_iᵀJ_i = Id and J₃ = J₁J₂.
    pub fn is_valid(&self) -> bool {
        let neg_id = ID4.map(|row| row.map(|v| -v));
        self.j.iter().all(|m| mat_mul(m, m) == neg_id && mat_mul(&transpose(m), m) == ID4)
            && self.j[2] == mat_mul(&self.j[0], &self.j[1])
    }
}

fn mat_vec<T: Scalar>(m: &Mat4, v: &[Poly<T>; 4]) -> [Poly<T>; 4] {
    std::array::from_fn(|i| {
        let mut acc = Poly::zero();
        for k in 0..4 {
            if m[i][k] != 0 {
                acc += &v[k].scale(&T::from_i32(m[i][k]).unwrap());
            }
        }
        acc
    })
}

fn coords<T: Scalar>() -> [Poly<T>; 4] {
    std::array::from_fn(Poly::x)
}

/// Coefficients of α_j = I_j*(r dr), i.e. the vector J_jᵀx (0-based `j`).
pub fn alpha_coeffs<T: Scalar>(j: usize) -> [Poly<T>; 4] {
    let triple = ComplexStructureTriple::standard();
    mat_vec(&transpose(&triple.j[j]), &coords())
}

/// Coefficients of ℛ*α_j: the vector ℛᵀJ_jᵀℛx.
pub fn reflected_alpha_coeffs<T: Scalar>(j: usize) -> [Poly<T>; 4] {
    let triple = ComplexStructureTriple::standard();
    let m = mat_mul(&mat_mul(&transpose(&REFLECTION), &transpose(&triple.j[j])), &REFLECTION);
    mat_vec(&m, &coords())
}

/// α_j as a 1-form, 0-based `j`.
pub fn build_alpha<T: Scalar>(j: usize) -> Form<T> {
    Form::one_form(alpha_coeffs::<T>(j).map(RadialRational::from_poly))
}

/// A symmetric 3×3 matrix of polynomials (normally single symbols).
#[derive(Clone, Debug, PartialEq)]
pub struct SymParam3<T> {
    entries: [[Poly<T>; 3]; 3],
}

impl<T: Scalar> SymParam3<T> {
    /// From the upper triangle in the order 11, 12, 13, 22, 23, 33.
    pub fn from_upper(v: [Poly<T>; 6]) -> Self {
        let [a11, a12, a13, a22, a23, a33] = v;
        SymParam3 {
            entries: [
                [a11, a12.clone(), a13.clone()],
                [a12, a22, a23.clone()],
                [a13, a23, a33],
            ],
        }
    }

    /// The fully symbolic ζ.
    pub fn zeta() -> Self {
        SymParam3::from_upper(Symbol::all_zeta().map(Poly::symbol))
    }

    /// The fully symbolic ξ.
    pub fn xi() -> Self {
        SymParam3::from_upper(Symbol::all_xi().map(Poly::symbol))
    }

    pub fn zero() -> Self {
        SymParam3::from_upper(std::array::from_fn(|_| Poly::zero()))
    }

    pub fn from_values(v: [T; 6]) -> Self {
        SymParam3::from_upper(v.map(Poly::constant))
    }

    /// 0-based entry.
    pub fn get(&self, a: usize, b: usize) -> &Poly<T> {
        &self.entries[a][b]
    }
}

/// A 4×4 matrix of radial rational functions.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor2<T> {
    c: [[RadialRational<T>; 4]; 4],
}

impl<T: Scalar> Tensor2<T> {
    pub fn zero() -> Self {
        Tensor2 { c: std::array::from_fn(|_| std::array::from_fn(|_| RadialRational::zero())) }
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> RadialRational<T>) -> Self {
        Tensor2 { c: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))) }
    }

    pub fn get(&self, i: usize, j: usize) -> &RadialRational<T> {
        &self.c[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().flatten().all(RadialRational::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..4).all(|i| (0..i).all(|j| self.c[i][j] == self.c[j][i]))
    }

    pub fn add(&self, other: &Tensor2<T>) -> Tensor2<T> {
        Tensor2::from_fn(|i, j| &self.c[i][j] + &other.c[i][j])
    }

    pub fn map(&self, f: impl Fn(&RadialRational<T>) -> RadialRational<T>) -> Tensor2<T> {
        Tensor2::from_fn(|i, j| f(&self.c[i][j]))
    }

    pub fn trace(&self) -> RadialRational<T> {
        (0..4).fold(RadialRational::zero(), |acc, k| &acc + &self.c[k][k])
    }

    /// Σ_k ∂_k h_ki.
    pub fn divergence(&self, i: usize) -> RadialRational<T> {
        (0..4).fold(RadialRational::zero(), |acc, k| &acc + &self.c[k][i].derivative(k))
    }

    /// `(R·T·R)` for a signed permutation matrix `r`, together with the
    /// point change `x ↦ r x` applied to every entry.
    pub fn pull_back(&self, r: &Mat4) -> Tensor2<T> {
        let rx = mat_vec(r, &coords::<T>());
        // r is orthogonal, so r² is unchanged and only the numerator moves.
        let moved = self.map(|c| {
            let mut out = Poly::zero();
            for (m, v) in c.num().terms() {
                let mut term = Poly::term(m.params(), v.clone());
                for (a, e) in m.geom_exponents().iter().enumerate() {
                    term = &term * &rx[a].pow(*e);
                }
                out += &term;
            }
            RadialRational::new(out, c.m())
        });
        Tensor2::from_fn(|i, j| {
            let mut acc = RadialRational::zero();
            for k in 0..4 {
                for l in 0..4 {
                    let s = r[k][i] * r[l][j];
                    if s != 0 {
                        acc = &acc + &moved.c[k][l].scale(&T::from_i32(s).unwrap());
                    }
                }
            }
            acc
        })
    }
}

/// (−2/(3r⁶)) Σ of the ζ-weighted symmetric products of the given α vectors.
fn assemble_h<T: Scalar>(alpha: [[Poly<T>; 4]; 3], z: &SymParam3<T>) -> Tensor2<T> {
    let prod = |a: usize, b: usize, k: usize, l: usize| &alpha[a][k] * &alpha[b][l];
    let two = T::from_i32(2).unwrap();
    let pref = T::ratio(-2, 3);
    Tensor2::from_fn(|k, l| {
        let mut num = Poly::zero();
        for a in 0..3 {
            // ζ_aa (2A_aa − A_bb − A_cc)
            let mut diag = prod(a, a, k, l).scale(&two);
            for b in (0..3).filter(|&b| b != a) {
                diag -= &prod(b, b, k, l);
            }
            num += &(z.get(a, a) * &diag);
            for b in a + 1..3 {
                let sym = &prod(a, b, k, l) + &prod(b, a, k, l);
                num += &(z.get(a, b) * &sym);
            }
        }
        RadialRational::new(num.scale(&pref), 3)
    })
}

/// h⁺ for the coefficient matrix `z`.
pub fn build_h_plus<T: Scalar>(z: &SymParam3<T>) -> Tensor2<T> {
    assemble_h(std::array::from_fn(alpha_coeffs), z)
}

/// h⁻ = ℛ*h⁺ for the coefficient matrix `xi`, built from the reflected α's.
pub fn build_h_minus<T: Scalar>(xi: &SymParam3<T>) -> Tensor2<T> {
    assemble_h(std::array::from_fn(reflected_alpha_coeffs), xi)
}

/// h = h⁺(ζ) + h⁻(ξ).
pub fn build_h<T: Scalar>(z: &SymParam3<T>, xi: &SymParam3<T>) -> Tensor2<T> {
    build_h_plus(z).add(&build_h_minus(xi))
}

/// h with fully symbolic ζ and ξ.
pub fn symbolic_h<T: Scalar>() -> Tensor2<T> {
    build_h(&SymParam3::zeta(), &SymParam3::xi())
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValidationFailure {
    #[error("h is not symmetric at ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("trace of h is nonzero")]
    Trace,
    #[error("divergence component {0} of h is nonzero")]
    Divergence(usize),
    #[error("h_{0}{1} is not harmonic")]
    Laplacian(usize, usize),
    #[error("h_{0}{1} is not homogeneous of degree -4")]
    Degree(usize, usize),
}

/// The identities checked by [`validate_h`].
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport<T> {
    pub trace: RadialRational<T>,
    pub divergence: [RadialRational<T>; 4],
    /// Σ_k ∂_k² h_ij for the 10 pairs i ≤ j.
    pub laplacian: Vec<((usize, usize), RadialRational<T>)>,
    pub degree: i32,
}

impl<T: Scalar> fmt::Display for ValidationReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let zero = |ok: bool| if ok { "0" } else { "nonzero" };
        write!(
            f,
            "trace={}, div={}, harmonic={}, degree={}",
            zero(self.trace.is_zero()),
            zero(self.divergence.iter().all(RadialRational::is_zero)),
            zero(self.laplacian.iter().all(|(_, v)| v.is_zero())),
            self.degree
        )
    }
}

/// Checks symmetry, trace, divergence, componentwise harmonicity and degree
/// −4, failing on the first violated identity.
pub fn validate_h<T: Scalar>(h: &Tensor2<T>) -> Result<ValidationReport<T>, ValidationFailure> {
    for i in 0..4 {
        for j in 0..i {
            if h.get(i, j) != h.get(j, i) {
                return Err(ValidationFailure::NotSymmetric(i + 1, j + 1));
            }
        }
    }
    let trace = h.trace();
    if !trace.is_zero() {
        return Err(ValidationFailure::Trace);
    }
    let divergence: [RadialRational<T>; 4] = std::array::from_fn(|i| h.divergence(i));
    if let Some(i) = divergence.iter().position(|d| !d.is_zero()) {
        return Err(ValidationFailure::Divergence(i + 1));
    }
    let mut laplacian = Vec::with_capacity(10);
    for i in 0..4 {
        for j in i..4 {
            let l = h.get(i, j).flat_laplacian();
            if !l.is_zero() {
                return Err(ValidationFailure::Laplacian(i + 1, j + 1));
            }
            match h.get(i, j).homogeneity() {
                Homogeneity::Degree(-4) | Homogeneity::Zero => {}
                _ => return Err(ValidationFailure::Degree(i + 1, j + 1)),
            }
            laplacian.push(((i, j), l));
        }
    }
    Ok(ValidationReport { trace, divergence, laplacian, degree: -4 })
}

/// The published component listing of −(3/2) r⁶ h, one component per line.
pub const H_LISTING: &str = include_str!("../data/h_listing.txt");

/// How one listed component compares with the constructive value.
#[derive(Clone, Debug, PartialEq)]
pub enum ListingStatus<T> {
    Match,
    /// Listed minus constructive.
    Mismatch(Poly<T>),
    Unparseable(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ListingComparison<T> {
    /// `true` for h⁺, `false` for h⁻.
    pub plus: bool,
    pub i: usize,
    pub j: usize,
    pub status: ListingStatus<T>,
}

/// Compares each line `plus|minus ij = <expr>` of a listing against
/// −(3/2) r⁶ h⁺ and −(3/2) r⁶ h⁻ built here with symbolic ζ, ξ.
pub fn compare_with_listing<T: Scalar>(listing: &str) -> Vec<ListingComparison<T>> {
    let hp = build_h_plus::<T>(&SymParam3::zeta());
    let hm = build_h_minus::<T>(&SymParam3::xi());
    let mut out = Vec::new();
    for line in listing.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let Some((head, expr)) = line.split_once('=') else { continue };
        let mut parts = head.split_whitespace();
        let (Some(which), Some(ij)) = (parts.next(), parts.next()) else { continue };
        let idx: Vec<usize> = ij.bytes().map(|b| (b - b'1') as usize).collect();
        if idx.len() != 2 || idx.iter().any(|&v| v > 3) {
            continue;
        }
        let plus = which == "plus";
        let h = if plus { &hp } else { &hm };
        let ours = h.get(idx[0], idx[1]).lift_to(3).scale(&T::ratio(-3, 2));
        let status = match expr.parse::<Poly<T>>() {
            Err(e) => ListingStatus::Unparseable(e.to_string()),
            Ok(listed) => {
                let diff = &listed - &ours;
                if diff.is_zero() {
                    ListingStatus::Match
                } else {
                    ListingStatus::Mismatch(diff)
                }
            }
        };
        out.push(ListingComparison { plus, i: idx[0] + 1, j: idx[1] + 1, status });
    }
    out
}
