use std::collections::BTreeMap;
use std::fmt;

use super::multi_index::{MonomialBasis, MultiIndex};
use crate::{CatError, ExactField, Result};

/// Homogeneous polynomial in the ordinary monomial basis.
///
/// Used for elements of `R = k[y_1, .., y_n]` and, at I/O boundaries, for
/// forms in `S` written in monomials `x^U`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomPoly<T> {
    n: usize,
    degree: usize,
    coeffs: BTreeMap<MultiIndex, T>,
}

/// An element of `R_j`.
pub type RPoly<T> = HomPoly<T>;

impl<T: ExactField> HomPoly<T> {
    pub fn zero(n: usize, degree: usize) -> Self {
        Self {
            n,
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        n: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (MultiIndex, T)>,
    ) -> Result<Self> {
        let mut p = Self::zero(n, degree);
        for (u, c) in terms {
            if u.len() != n || u.degree() != degree {
                return Err(CatError::Invalid(format!(
                    "term {u} does not have {n} variables and degree {degree}"
                )));
            }
            p.add_term(u, c);
        }
        Ok(p)
    }

    pub fn monomial(u: MultiIndex, c: T) -> Self {
        let mut p = Self::zero(u.len(), u.degree());
        p.add_term(u, c);
        p
    }

    /// The variable `y_k` (0-based).
    pub fn var(n: usize, k: usize) -> Self {
        Self::monomial(MultiIndex::unit(n, k), T::one())
    }

    /// `sum_k c_k y_k`.
    pub fn linear(coeffs: &[T]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n, 1);
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(MultiIndex::unit(n, k), c.clone());
        }
        p
    }

    pub fn constant(n: usize, c: T) -> Self {
        Self::monomial(MultiIndex::zero(n), c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &T)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, u: &MultiIndex) -> T {
        self.coeffs.get(u).cloned().unwrap_or_else(T::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub(crate) fn add_term(&mut self, u: MultiIndex, c: T) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(u) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (u, c) in &other.coeffs {
            out.add_term(u.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero(self.n, self.degree);
        for (u, c) in &self.coeffs {
            out.add_term(u.clone(), c.clone() * s.clone());
        }
        out
    }

    /// Exact product; degrees add.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(CatError::DimensionMismatch(format!(
                "product of polynomials in {} and {} variables",
                self.n, other.n
            )));
        }
        let mut out = Self::zero(self.n, self.degree + other.degree);
        for (u, a) in &self.coeffs {
            for (v, b) in &other.coeffs {
                out.add_term(u.add(v), a.clone() * b.clone());
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::constant(self.n, T::one());
        for _ in 0..e {
            acc = acc.mul(self).expect("same variable count");
        }
        acc
    }

    /// Coefficients over `basis` (which must match `n` and the degree).
    pub fn to_vector(&self, basis: &MonomialBasis) -> Vec<T> {
        debug_assert_eq!(basis.n(), self.n);
        debug_assert_eq!(basis.degree(), self.degree);
        basis.monomials().iter().map(|u| self.coeff(u)).collect()
    }

    pub fn from_vector(basis: &MonomialBasis, v: &[T]) -> Self {
        let mut p = Self::zero(basis.n(), basis.degree());
        for (u, c) in basis.monomials().iter().zip(v) {
            p.add_term(u.clone(), c.clone());
        }
        p
    }

    /// Evaluate at a point.
    pub fn eval(&self, point: &[T]) -> T {
        let mut acc = T::zero();
        for (u, c) in &self.coeffs {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(u.exponents()) {
                for _ in 0..e {
                    term = term * x.clone();
                }
            }
            acc = acc + term;
        }
        acc
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.degree != other.degree {
            return Err(CatError::DimensionMismatch(format!(
                "polynomials of shape (n={}, deg={}) and (n={}, deg={})",
                self.n, self.degree, other.n, other.degree
            )));
        }
        Ok(())
    }
}

impl<T: ExactField> fmt::Display for HomPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().rev(), "y")
    }
}

/// Writes `c*y1^2*y2 + ..` style text, highest monomial first.
pub(crate) fn write_poly<'a, T: ExactField>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a MultiIndex, &'a T)>,
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for (u, c) in terms {
        let negative = c.is_negative();
        let abs = c.abs();
        if first {
            if negative {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if negative { "-" } else { "+" })?;
        }
        first = false;
        let mut factors = Vec::new();
        for (k, &e) in u.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("{var}{}", k + 1)),
                _ => factors.push(format!("{var}{}^{e}", k + 1)),
            }
        }
        if factors.is_empty() {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            write!(f, "{}", factors.join("*"))?;
        } else {
            write!(f, "{abs}*{}", factors.join("*"))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}
