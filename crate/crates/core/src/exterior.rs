//! Exterior algebra on ℝ⁴ with [`RadialRational`] coefficients.
//!
//! Axes are 0-based in the API (`dx(0)` is dx¹). Orientation: ε₁₂₃₄ = +1.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::algebra::{Poly, RadialRational};
use crate::scalar::Scalar;

/// A strictly increasing subset of {dx¹,..,dx⁴}, stored as a bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IndexSet(u8);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);
    pub const FULL: IndexSet = IndexSet(0b1111);

    /// From 0-based axes in strictly increasing order.
    pub fn new(axes: &[usize]) -> Option<Self> {
        if axes.windows(2).any(|w| w[0] >= w[1]) || axes.iter().any(|&a| a >= 4) {
            return None;
        }
        Some(IndexSet(axes.iter().fold(0, |acc, &a| acc | 1 << a)))
    }

    pub fn single(axis: usize) -> Self {
        assert!(axis < 4);
        IndexSet(1 << axis)
    }

    /// All index sets of the given grade, in increasing order.
    pub fn all_of_grade(grade: usize) -> Vec<IndexSet> {
        let mut v: Vec<IndexSet> = (0u8..16).map(IndexSet).filter(|s| s.grade() == grade).collect();
        v.sort();
        v
    }

    pub fn bits(&self) -> u8 {
        self.0
    }

    pub fn grade(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(&self, axis: usize) -> bool {
        self.0 & (1 << axis) != 0
    }

    pub fn axes(&self) -> Vec<usize> {
        (0..4).filter(|&a| self.contains(a)).collect()
    }

    pub fn complement(&self) -> IndexSet {
        IndexSet(!self.0 & 0b1111)
    }

    /// The 3-set omitting `axis`.
    pub fn omitting(axis: usize) -> IndexSet {
        IndexSet::single(axis).complement()
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered by grade, then lexicographically by the increasing axis list.
impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade().cmp(&other.grade()).then_with(|| self.axes().cmp(&other.axes()))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.axes().iter().map(|a| format!("dx{}", a + 1)).collect();
        write!(f, "{}", parts.join("^"))
    }
}

/// Sign of dx^a ∧ dx^b relative to dx^(a∪b), or `None` if the sets meet.
pub fn wedge_sign(a: IndexSet, b: IndexSet) -> Option<i32> {
    if a.0 & b.0 != 0 {
        return None;
    }
    let inversions: usize = a.axes().iter().map(|&i| b.axes().iter().filter(|&&j| j < i).count()).sum();
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

/// Sign of a sequence of distinct indices relative to its sorted order, or 0
/// if any index repeats.
pub fn permutation_sign(idx: &[usize]) -> i32 {
    let mut sign = 1;
    for i in 0..idx.len() {
        for j in i + 1..idx.len() {
            match idx[i].cmp(&idx[j]) {
                Ordering::Equal => return 0,
                Ordering::Greater => sign = -sign,
                Ordering::Less => {}
            }
        }
    }
    sign
}

/// ε with ε(0,1,2,3) = +1 (0-based axes).
pub fn levi_civita(i: usize, j: usize, k: usize, l: usize) -> i32 {
    permutation_sign(&[i, j, k, l])
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("expected a form of grade {expected}, found grade {found:?}")]
pub struct GradeMismatch {
    pub expected: usize,
    /// `None` for the zero form or a form of mixed grade.
    pub found: Option<usize>,
}

/// A differential form Σ_I f_I dx^I with no zero coefficients stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Form<T> {
    terms: BTreeMap<IndexSet, RadialRational<T>>,
}

impl<T: Scalar> Default for Form<T> {
    fn default() -> Self {
        Form::zero()
    }
}

impl<T: Scalar> Form<T> {
    pub fn zero() -> Self {
        Form { terms: BTreeMap::new() }
    }

    pub fn basis(set: IndexSet, coeff: RadialRational<T>) -> Self {
        let mut f = Form::zero();
        f.add_term(set, coeff);
        f
    }

    pub fn function(f: RadialRational<T>) -> Self {
        Form::basis(IndexSet::EMPTY, f)
    }

    /// dx^(axis+1).
    pub fn dx(axis: usize) -> Self {
        Form::basis(IndexSet::single(axis), RadialRational::one())
    }

    /// Σ_k c[k] dx^k.
    pub fn one_form(c: [RadialRational<T>; 4]) -> Self {
        let mut f = Form::zero();
        for (k, v) in c.into_iter().enumerate() {
            f.add_term(IndexSet::single(k), v);
        }
        f
    }

    pub fn add_term(&mut self, set: IndexSet, coeff: RadialRational<T>) {
        if coeff.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&set) {
            Some(old) => &old + &coeff,
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(set, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexSet, &RadialRational<T>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, set: IndexSet) -> RadialRational<T> {
        self.terms.get(&set).cloned().unwrap_or_default()
    }

    /// Coefficient of dx^(axis+1) in a 1-form.
    pub fn component(&self, axis: usize) -> RadialRational<T> {
        self.coeff(IndexSet::single(axis))
    }

    /// The common grade of all terms; `None` for zero or mixed grade.
    pub fn grade(&self) -> Option<usize> {
        let mut grades = self.terms.keys().map(IndexSet::grade);
        let g = grades.next()?;
        grades.all(|h| h == g).then_some(g)
    }

    /// Multiplies every coefficient by a function.
    pub fn scale(&self, f: &RadialRational<T>) -> Self {
        let mut out = Form::zero();
        for (s, c) in &self.terms {
            out.add_term(*s, c * f);
        }
        out
    }

    pub fn scale_const(&self, c: &T) -> Self {
        self.map_coeffs(|v| v.scale(c))
    }

    pub fn map_coeffs(&self, f: impl Fn(&RadialRational<T>) -> RadialRational<T>) -> Self {
        let mut out = Form::zero();
        for (s, c) in &self.terms {
            out.add_term(*s, f(c));
        }
        out
    }

    pub fn wedge(&self, other: &Form<T>) -> Form<T> {
        let mut out = Form::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some(sign) = wedge_sign(*a, *b) {
                    let c = ca * cb;
                    out.add_term(IndexSet(a.0 | b.0), if sign > 0 { c } else { -c });
                }
            }
        }
        out
    }

    /// d(f dx^I) = Σ_k ∂_k f dx^k ∧ dx^I.
    pub fn exterior_d(&self) -> Form<T> {
        let mut out = Form::zero();
        for (s, c) in &self.terms {
            for k in 0..4 {
                let k_set = IndexSet::single(k);
                if let Some(sign) = wedge_sign(k_set, *s) {
                    let d = c.derivative(k);
                    out.add_term(IndexSet(s.0 | k_set.0), if sign > 0 { d } else { -d });
                }
            }
        }
        out
    }

    /// Euclidean Hodge dual: *(dx^I) = sign(I, Iᶜ) dx^{Iᶜ}.
    pub fn hodge_star_flat(&self) -> Form<T> {
        let mut out = Form::zero();
        for (s, c) in &self.terms {
            let comp = s.complement();
            let sign = wedge_sign(*s, comp).expect("complement is disjoint");
            out.add_term(comp, if sign > 0 { c.clone() } else { -c });
        }
        out
    }
}

/// γ_j = (−1)^j dx¹∧..∧(omit dx^(j+1))∧..∧dx⁴ for a 0-based axis `j`.
///
/// Equivalently γ_j = *(dx^(j+1)).
pub fn gamma<T: Scalar>(j: usize) -> Form<T> {
    let c = RadialRational::one();
    Form::basis(IndexSet::omitting(j), if j % 2 == 0 { c } else { -c })
}

/// Restriction of a flux density to one face `x^(axis+1) = side` of the
/// unit cube: the value there is `num / (1 + Σ_{q≠axis} (x^q)²)^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct FaceFunction<T> {
    pub axis: usize,
    pub side: i32,
    pub num: Poly<T>,
    pub m: u32,
}

/// The γ_(p+1) component of a 3-form restricted to the face `x^(p+1) = side`:
/// `(−1)^p` times the coefficient of the set omitting `p`, with `x^(p+1)`
/// replaced by `side`.
pub fn face_flux<T: Scalar>(w: &Form<T>, p: usize, side: i32) -> Result<FaceFunction<T>, GradeMismatch> {
    if !w.is_zero() && w.grade() != Some(3) {
        return Err(GradeMismatch { expected: 3, found: w.grade() });
    }
    assert!(side == 1 || side == -1, "side must be ±1");
    let c = w.coeff(IndexSet::omitting(p));
    let mut num = c.num().substitute_geom(p, &T::from_i32(side).unwrap());
    if p % 2 == 1 {
        num = -num;
    }
    Ok(FaceFunction { axis: p, side, num, m: c.m() })
}

impl<T: Scalar> Add for &Form<T> {
    type Output = Form<T>;
    fn add(self, rhs: &Form<T>) -> Form<T> {
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.add_term(*s, c.clone());
        }
        out
    }
}

impl<T: Scalar> Sub for &Form<T> {
    type Output = Form<T>;
    fn sub(self, rhs: &Form<T>) -> Form<T> {
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.add_term(*s, -c);
        }
        out
    }
}

impl<T: Scalar> Neg for &Form<T> {
    type Output = Form<T>;
    fn neg(self) -> Form<T> {
        self.map_coeffs(|c| -c)
    }
}

impl<T: Scalar> fmt::Display for Form<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (s, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}] {s}")?;
        }
        Ok(())
    }
}
