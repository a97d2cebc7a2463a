use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::multi_index::{MonomialBasis, MultiIndex};
use super::poly::{write_poly, HomPoly, RPoly};
use crate::{CatError, ExactField, ExactMatrix, Result};

/// Coefficient convention for a form `f in S_d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// `f = sum c_U x^U`
    Monomial,
    /// `f = sum a_U X^(U)` with `X^(U) = x^U / U!`
    Divided,
}

impl FromStr for Basis {
    type Err = CatError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monomial" => Ok(Basis::Monomial),
            "divided" => Ok(Basis::Divided),
            other => Err(CatError::Parse(format!("unknown basis '{other}'"))),
        }
    }
}

/// Homogeneous form of degree `d` in `n` variables, stored by its
/// divided-power coefficients `a_W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form<T> {
    n: usize,
    d: usize,
    coeffs: BTreeMap<MultiIndex, T>,
}

impl<T: ExactField> Form<T> {
    pub fn zero(n: usize, d: usize) -> Self {
        Self {
            n,
            d,
            coeffs: BTreeMap::new(),
        }
    }

    /// Build from coefficients given in either basis.
    pub fn from_coeffs(
        n: usize,
        d: usize,
        terms: impl IntoIterator<Item = (MultiIndex, T)>,
        basis: Basis,
    ) -> Result<Self> {
        if n == 0 {
            return Err(CatError::Invalid("a form needs at least one variable".into()));
        }
        let mut f = Self::zero(n, d);
        for (u, c) in terms {
            if u.len() != n || u.degree() != d {
                return Err(CatError::Invalid(format!(
                    "term {u} does not have {n} variables and degree {d}"
                )));
            }
            let a = match basis {
                Basis::Divided => c,
                Basis::Monomial => c * u.factorial::<T>(),
            };
            f.add_term(u, a);
        }
        Ok(f)
    }

    pub fn from_divided(
        n: usize,
        d: usize,
        terms: impl IntoIterator<Item = (MultiIndex, T)>,
    ) -> Result<Self> {
        Self::from_coeffs(n, d, terms, Basis::Divided)
    }

    pub fn from_monomial(p: &HomPoly<T>) -> Self {
        let mut f = Self::zero(p.n(), p.degree());
        for (u, c) in p.terms() {
            f.add_term(u.clone(), c.clone() * u.factorial::<T>());
        }
        f
    }

    /// The same form in the ordinary monomial basis.
    pub fn to_monomial(&self) -> HomPoly<T> {
        HomPoly::from_terms(
            self.n,
            self.d,
            self.coeffs
                .iter()
                .map(|(u, a)| (u.clone(), a.clone() / u.factorial::<T>())),
        )
        .expect("terms of a form are well shaped")
    }

    /// Coefficients in the requested basis, in graded-lex descending order.
    pub fn coefficients(&self, basis: Basis) -> Vec<(MultiIndex, T)> {
        let mut out: Vec<(MultiIndex, T)> = self
            .coeffs
            .iter()
            .map(|(u, a)| {
                let c = match basis {
                    Basis::Divided => a.clone(),
                    Basis::Monomial => a.clone() / u.factorial::<T>(),
                };
                (u.clone(), c)
            })
            .collect();
        out.reverse();
        out
    }

    /// `L^d` for the linear form `L = sum l_k x_k`; divided coefficients are `d! l^W`.
    pub fn power_of_linear(l: &[T], d: usize) -> Self {
        let n = l.len();
        let mut d_fact = T::one();
        for k in 2..=d {
            d_fact = d_fact * T::from_usize(k);
        }
        let mut f = Self::zero(n, d);
        for w in super::multi_index::enumerate_monomials(n, d) {
            let mut c = d_fact.clone();
            for (x, &e) in l.iter().zip(w.exponents()) {
                for _ in 0..e {
                    c = c * x.clone();
                }
            }
            f.add_term(w, c);
        }
        f
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Divided-power coefficient `a_W`.
    pub fn coeff(&self, w: &MultiIndex) -> T {
        self.coeffs.get(w).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &T)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Divided coefficients over `basis`.
    pub fn to_dense(&self, basis: &MonomialBasis) -> Vec<T> {
        basis.monomials().iter().map(|w| self.coeff(w)).collect()
    }

    pub fn from_dense(basis: &MonomialBasis, values: &[T]) -> Self {
        let mut f = Self::zero(basis.n(), basis.degree());
        for (w, c) in basis.monomials().iter().zip(values) {
            f.add_term(w.clone(), c.clone());
        }
        f
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n || self.d != other.d {
            return Err(CatError::DimensionMismatch(format!(
                "forms of shape (n={}, d={}) and (n={}, d={})",
                self.n, self.d, other.n, other.d
            )));
        }
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
        let mut out = Self::zero(self.n, self.d);
        for (u, c) in &self.coeffs {
            out.add_term(u.clone(), c.clone() * s.clone());
        }
        out
    }

    /// The same form viewed in `n_new >= n` variables.
    pub fn embed(&self, n_new: usize) -> Result<Self> {
        if n_new < self.n {
            return Err(CatError::DimensionMismatch(format!(
                "cannot embed {} variables into {n_new}",
                self.n
            )));
        }
        Ok(Self {
            n: n_new,
            d: self.d,
            coeffs: self
                .coeffs
                .iter()
                .map(|(u, c)| (u.padded(n_new), c.clone()))
                .collect(),
        })
    }

    /// Drop trailing variables `x_{k+1}, .., x_n`, which must not occur.
    pub fn restrict(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.n {
            return Err(CatError::DimensionMismatch(format!(
                "cannot restrict {} variables to {k}",
                self.n
            )));
        }
        let mut out = Self::zero(k, self.d);
        for (u, c) in &self.coeffs {
            if u.exponents()[k..].iter().any(|&e| e > 0) {
                return Err(CatError::Invalid(format!(
                    "term {u} uses a variable beyond x_{k}"
                )));
            }
            out.add_term(MultiIndex::new(u.exponents()[..k].to_vec()), c.clone());
        }
        Ok(out)
    }

    fn add_term(&mut self, u: MultiIndex, c: T) {
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
}

impl<T: ExactField> fmt::Display for Form<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mono = self.to_monomial();
        write_poly(f, mono.terms().collect::<Vec<_>>().into_iter().rev(), "x")
    }
}

/// The differential action `phi o f = phi(d/dx_1, .., d/dx_n) f`.
///
/// In divided coordinates `Y^V o X^(U) = X^(U - V)` when `V <= U`, else 0.
pub fn contract<T: ExactField>(phi: &RPoly<T>, f: &Form<T>) -> Result<Form<T>> {
    if phi.n() != f.n() {
        return Err(CatError::DimensionMismatch(format!(
            "operator in {} variables acting on a form in {}",
            phi.n(),
            f.n()
        )));
    }
    if phi.degree() > f.d() {
        return Err(CatError::DegreeTooLarge {
            j: phi.degree(),
            d: f.d(),
        });
    }
    let mut out = Form::zero(f.n(), f.d() - phi.degree());
    for (v, c) in phi.terms() {
        for (u, a) in f.terms() {
            if let Some(w) = u.checked_sub(v) {
                out.add_term(w, c.clone() * a.clone());
            }
        }
    }
    Ok(out)
}

/// `f(M x')`: substitute `x_i = sum_j M_ij x'_j`, giving a form in `M.cols()` variables.
pub fn substitute<T: ExactField>(f: &Form<T>, m: &ExactMatrix<T>) -> Result<Form<T>> {
    if m.rows() != f.n() {
        return Err(CatError::DimensionMismatch(format!(
            "substitution matrix has {} rows for a form in {} variables",
            m.rows(),
            f.n()
        )));
    }
    let new_n = m.cols();
    if new_n == 0 {
        return Err(CatError::DimensionMismatch(
            "substitution into zero variables".into(),
        ));
    }
    let d = f.d();
    // powers[i][e] = (sum_j M_ij x'_j)^e
    let powers: Vec<Vec<HomPoly<T>>> = (0..f.n())
        .map(|i| {
            let lin = HomPoly::linear(m.row(i));
            let mut ps = Vec::with_capacity(d + 1);
            ps.push(HomPoly::constant(new_n, T::one()));
            for e in 1..=d {
                let next = ps[e - 1].mul(&lin).expect("same variable count");
                ps.push(next);
            }
            ps
        })
        .collect();
    let mut acc = HomPoly::zero(new_n, d);
    for (w, c) in f.to_monomial().terms() {
        let mut term = HomPoly::constant(new_n, c.clone());
        for (i, &e) in w.exponents().iter().enumerate() {
            if e > 0 {
                term = term.mul(&powers[i][e as usize])?;
            }
        }
        acc = acc.add(&term)?;
    }
    Ok(Form::from_monomial(&acc))
}
