//! Apolar ideal slices, Hilbert sequences and tangent-space dimensions.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalecticant::{cat_rank, catalecticant_unchecked};
use crate::forms::{graded_dim, Form, MonomialBasis, RPoly};
use crate::{CatError, ExactField, ExactMatrix, Result};

/// A subspace of `R_j` given by linearly independent polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedSubspace<T> {
    pub n: usize,
    pub degree: usize,
    pub basis: Vec<RPoly<T>>,
}

impl<T: ExactField> GradedSubspace<T> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Whether this is all of `R_j`.
    pub fn is_full(&self) -> bool {
        self.dim() == graded_dim(self.n, self.degree)
    }

    /// Reduce a spanning set to an echelon basis.
    pub fn span(n: usize, degree: usize, polys: &[RPoly<T>]) -> Self {
        let basis = MonomialBasis::new(n, degree);
        let vectors: Vec<Vec<T>> = polys.iter().map(|p| p.to_vector(&basis)).collect();
        Self {
            n,
            degree,
            basis: reduce_rows(&basis, vectors),
        }
    }

    pub fn contains(&self, phi: &RPoly<T>) -> bool {
        if phi.n() != self.n || phi.degree() != self.degree {
            return false;
        }
        let mut all = self.basis.clone();
        all.push(phi.clone());
        Self::span(self.n, self.degree, &all).dim() == self.dim()
    }
}

/// Nonzero rows of the RREF of the stacked vectors, as polynomials.
fn reduce_rows<T: ExactField>(basis: &MonomialBasis, vectors: Vec<Vec<T>>) -> Vec<RPoly<T>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let rows = vectors.len();
    let m = ExactMatrix::new(rows, basis.len(), vectors.into_iter().flatten().collect())
        .expect("vectors have the basis length");
    let rref = m.rref();
    (0..rref.pivots.len())
        .map(|r| RPoly::from_vector(basis, rref.matrix.row(r)))
        .collect()
}

/// `(h_0, .., h_d)` with `h_i = dim (A_f)_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HilbertSequence(pub Vec<usize>);

impl HilbertSequence {
    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// The socle degree `d`.
    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn get(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }
}

impl fmt::Display for HilbertSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn nonzero<T: ExactField>(f: &Form<T>) -> Result<()> {
    if f.is_zero() {
        Err(CatError::ZeroForm)
    } else {
        Ok(())
    }
}

/// `I_j = { phi in R_j : phi o f = 0 }`.
///
/// For `j > d` the whole of `R_j` is returned.
pub fn apolar_slice<T: ExactField>(f: &Form<T>, j: usize) -> Result<GradedSubspace<T>> {
    nonzero(f)?;
    let (n, d) = (f.n(), f.d());
    let basis = MonomialBasis::new(n, j);
    if j > d {
        let full = basis
            .monomials()
            .iter()
            .map(|u| RPoly::monomial(u.clone(), T::one()))
            .collect();
        return Ok(GradedSubspace {
            n,
            degree: j,
            basis: full,
        });
    }
    // rows |U| = d - j, columns |V| = j: the map R_j -> S_{d-j}
    let cat = catalecticant_unchecked(f, d - j);
    let kernel = cat.body.kernel_basis();
    Ok(GradedSubspace {
        n,
        degree: j,
        basis: kernel
            .iter()
            .map(|v| RPoly::from_vector(&basis, v))
            .collect(),
    })
}

/// Ranks of all catalecticants of `f`.
pub fn hilbert_sequence<T: ExactField>(f: &Form<T>) -> Result<HilbertSequence> {
    nonzero(f)?;
    let h: Vec<usize> = (0..=f.d()).into_par_iter().map(|i| cat_rank(f, i)).collect();
    let seq = HilbertSequence(h);
    if !seq.is_symmetric() {
        return Err(CatError::Assertion(format!(
            "Hilbert sequence {seq} is not symmetric"
        )));
    }
    Ok(seq)
}

fn product_polys<T: ExactField>(a: &GradedSubspace<T>, b: &GradedSubspace<T>) -> Vec<RPoly<T>> {
    let pairs: Vec<(&RPoly<T>, &RPoly<T>)> = a
        .basis
        .iter()
        .flat_map(|p| b.basis.iter().map(move |q| (p, q)))
        .collect();
    pairs
        .par_iter()
        .map(|(p, q)| p.mul(q).expect("same variable count"))
        .collect()
}

/// Basis of `I_i I_{d-i}` inside `R_d`.
pub fn product_slice<T: ExactField>(f: &Form<T>, i: usize) -> Result<GradedSubspace<T>> {
    nonzero(f)?;
    let d = f.d();
    if i == 0 || i >= d {
        return Err(CatError::IndexOutOfRange { i, d });
    }
    let a = apolar_slice(f, i)?;
    let b = apolar_slice(f, d - i)?;
    Ok(GradedSubspace::span(f.n(), d, &product_polys(&a, &b)))
}

/// `dim T_f V_r(i, d-i; n) = dim S_d - dim I_i I_{d-i}`, valid where
/// `rank Cat_f(i, d-i; n) = r` exactly.
pub fn tangent_dim_vr<T: ExactField>(f: &Form<T>, i: usize, r: usize) -> Result<usize> {
    nonzero(f)?;
    let d = f.d();
    if i == 0 || i >= d {
        return Err(CatError::IndexOutOfRange { i, d });
    }
    let actual = cat_rank(f, i);
    if actual != r {
        return Err(CatError::OffStratum {
            expected: r,
            actual,
        });
    }
    Ok(graded_dim(f.n(), d) - product_slice(f, i)?.dim())
}

/// Degree-`d` part of `I^2`, i.e. the span of all `I_i I_{d-i}`.
pub fn square_slice<T: ExactField>(f: &Form<T>) -> Result<GradedSubspace<T>> {
    nonzero(f)?;
    let d = f.d();
    let slices: Vec<GradedSubspace<T>> = (0..=d)
        .map(|j| apolar_slice(f, j))
        .collect::<Result<_>>()?;
    let mut polys = Vec::new();
    // I_i I_{d-i} = I_{d-i} I_i, so half the range suffices
    for i in 1..=d / 2 {
        polys.extend(product_polys(&slices[i], &slices[d - i]));
    }
    Ok(GradedSubspace::span(f.n(), d, &polys))
}

/// `dim T_f Gor(T) = dim S_d - dim (I^2)_d` with `T = H(A_f)`.
pub fn tangent_dim_gor<T: ExactField>(f: &Form<T>) -> Result<usize> {
    Ok(graded_dim(f.n(), f.d()) - square_slice(f)?.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{contract, MultiIndex};
    use crate::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    fn monomial_form(n: usize, e: &[u32]) -> Form<Rational> {
        let d = e.iter().map(|&x| x as usize).sum();
        Form::from_coeffs(n, d, [(mi(e), q(1))], crate::Basis::Monomial).unwrap()
    }

    #[test]
    fn power_has_linear_apolar_form() {
        let f = monomial_form(2, &[5, 0]);
        let i1 = apolar_slice(&f, 1).unwrap();
        assert_eq!(i1.basis, vec![RPoly::var(2, 1)]);
        assert_eq!(hilbert_sequence(&f).unwrap().0, vec![1; 6]);
    }

    #[test]
    fn binary_cubic_slice() {
        let f = Form::from_divided(2, 3, [(mi(&[3, 0]), q(6)), (mi(&[0, 3]), q(6))]).unwrap();
        let i2 = apolar_slice(&f, 2).unwrap();
        assert_eq!(i2.basis, vec![RPoly::monomial(mi(&[1, 1]), q(1))]);
        assert!(apolar_slice(&f, 1).unwrap().is_zero());
        assert!(apolar_slice(&f, 4).unwrap().is_full());
    }

    #[test]
    fn tangent_line_kills_square() {
        let f = monomial_form(2, &[1, 4]);
        let y1sq = RPoly::monomial(mi(&[2, 0]), q(1));
        assert!(apolar_slice(&f, 2).unwrap().contains(&y1sq));
    }

    #[test]
    fn every_slice_vector_annihilates() {
        let f = Form::from_divided(
            3,
            4,
            [
                (mi(&[4, 0, 0]), q(3)),
                (mi(&[1, 2, 1]), q(-2)),
                (mi(&[0, 0, 4]), q(5)),
            ],
        )
        .unwrap();
        let h = hilbert_sequence(&f).unwrap();
        for j in 0..=4 {
            let s = apolar_slice(&f, j).unwrap();
            assert_eq!(s.dim(), graded_dim(3, j) - h.get(j));
            for phi in &s.basis {
                assert!(contract(phi, &f).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn hilbert_examples() {
        let f = Form::from_coeffs(
            2,
            4,
            [(mi(&[4, 0]), q(1)), (mi(&[0, 4]), q(1))],
            crate::Basis::Monomial,
        )
        .unwrap();
        assert_eq!(hilbert_sequence(&f).unwrap().0, vec![1, 2, 2, 2, 1]);
        // x1^2 x2^3 realizes T_{2,3}
        let g = monomial_form(2, &[2, 3]);
        assert_eq!(hilbert_sequence(&g).unwrap().0, vec![1, 2, 3, 3, 2, 1]);
        assert_eq!(
            hilbert_sequence(&Form::<Rational>::zero(2, 3)),
            Err(CatError::ZeroForm)
        );
    }

    #[test]
    fn generic_ternary_quartic_tangent() {
        let f = Form::power_of_linear(&[q(1), q(2), q(-1)], 4)
            .add(&Form::power_of_linear(&[q(3), q(0), q(1)], 4))
            .unwrap();
        assert_eq!(tangent_dim_vr(&f, 1, 2).unwrap(), 7);
        assert!(matches!(
            tangent_dim_vr(&f, 1, 3),
            Err(CatError::OffStratum {
                expected: 3,
                actual: 2
            })
        ));
        assert_eq!(tangent_dim_gor(&f).unwrap(), 6);
    }

    #[test]
    fn full_rank_gives_whole_space() {
        let f = monomial_form(3, &[2, 1, 1]);
        assert_eq!(cat_rank(&f, 1), 3);
        assert!(product_slice(&f, 1).unwrap().is_zero());
        assert_eq!(tangent_dim_vr(&f, 1, 3).unwrap(), graded_dim(3, 4));
    }

    #[test]
    fn square_slice_matches_brute_force() {
        let f = Form::from_divided(
            3,
            4,
            [
                (mi(&[4, 0, 0]), q(1)),
                (mi(&[2, 2, 0]), q(2)),
                (mi(&[0, 1, 3]), q(-1)),
            ],
        )
        .unwrap();
        let mut all = Vec::new();
        for i in 1..4 {
            all.extend(product_slice(&f, i).unwrap().basis);
        }
        let brute = GradedSubspace::span(3, 4, &all);
        assert_eq!(brute, square_slice(&f).unwrap());
    }
}
