use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use rayon::prelude::*;

use super::matrix::{build_generic_cat, SymbolicCatalecticant};
use crate::algebra::{clear_denominators, integer_rank};
use crate::forms::{Form, MonomialBasis, MultiIndex};
use crate::{CatError, ExactField, ExactMatrix, Result};

/// Largest minor size that is expanded symbolically.
pub const MAX_MINOR_SIZE: usize = 4;

/// Polynomial in the symbols `Z_W`, `|W| = d`.
///
/// A monomial is the sorted list of symbol positions in
/// `enumerate_monomials(n, d)`, so `Z_{(2,0)} Z_{(0,2)}` is `[0, 2]`.
/// Coefficients of minor expansions and their derivatives are integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MinorPolynomial {
    n: usize,
    d: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, i64>,
}

impl MinorPolynomial {
    pub fn zero(n: usize, d: usize, degree: usize) -> Self {
        Self {
            n,
            d,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        n: usize,
        d: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<usize>, i64)>,
    ) -> Result<Self> {
        let size = crate::forms::graded_dim(n, d);
        let mut p = Self::zero(n, d, degree);
        for (mut mono, c) in terms {
            if mono.len() != degree || mono.iter().any(|&s| s >= size) {
                return Err(CatError::Invalid(format!(
                    "monomial {mono:?} is not of degree {degree} in {size} symbols"
                )));
            }
            mono.sort_unstable();
            p.add_term(mono, c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Degree in the `Z_W`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &i64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, mono: Vec<usize>, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.n, self.d, self.degree) != (other.n, other.d, other.degree) {
            return Err(CatError::DimensionMismatch("minor polynomial sum".into()));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), *c);
        }
        Ok(out)
    }

    /// Value at `Z_W := values[pos(W)]`.
    pub fn evaluate<T: ExactField>(&self, values: &[T]) -> T {
        let mut acc = T::zero();
        for (mono, &c) in &self.terms {
            let mut term = T::from_int(c);
            for &s in mono {
                if values[s].is_zero() {
                    term = T::zero();
                    break;
                }
                term = term * values[s].clone();
            }
            if !term.is_zero() {
                acc = acc + term;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to the symbol at position `sym`.
    pub fn derivative(&self, sym: usize) -> Self {
        let mut out = Self::zero(self.n, self.d, self.degree.saturating_sub(1));
        for (mono, &c) in &self.terms {
            let mult = mono.iter().filter(|&&s| s == sym).count();
            if mult == 0 {
                continue;
            }
            let mut rest = mono.clone();
            let at = rest.iter().position(|&s| s == sym).expect("present");
            rest.remove(at);
            out.add_term(rest, c * mult as i64);
        }
        out
    }

    /// Gradient evaluated at `values`, written into `out` (length = number of symbols).
    fn gradient_into<T: ExactField>(&self, values: &[T], out: &mut [T]) {
        for (mono, &c) in &self.terms {
            for (k, &sym) in mono.iter().enumerate() {
                // each occurrence contributes the product of the others;
                // summing over occurrences gives the multiplicity factor
                let mut term = T::from_int(c);
                for (j, &other) in mono.iter().enumerate() {
                    if j == k {
                        continue;
                    }
                    if values[other].is_zero() {
                        term = T::zero();
                        break;
                    }
                    term = term * values[other].clone();
                }
                if !term.is_zero() {
                    out[sym] = out[sym].clone() + term;
                }
            }
        }
    }

    fn evaluate_int(&self, values: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        'terms: for (mono, &c) in &self.terms {
            let mut term = BigInt::from(c);
            for &s in mono {
                if values[s].is_zero() {
                    continue 'terms;
                }
                term *= &values[s];
            }
            acc += term;
        }
        acc
    }

    fn gradient_int(&self, values: &[BigInt], out: &mut [BigInt]) {
        for (mono, &c) in &self.terms {
            'slots: for (k, &sym) in mono.iter().enumerate() {
                let mut term = BigInt::from(c);
                for (j, &other) in mono.iter().enumerate() {
                    if j == k {
                        continue;
                    }
                    if values[other].is_zero() {
                        continue 'slots;
                    }
                    term *= &values[other];
                }
                out[sym] += term;
            }
        }
    }

    fn symbol_names(&self) -> MonomialBasis {
        MonomialBasis::new(self.n, self.d)
    }
}

impl fmt::Display for MinorPolynomial {
    /// `Z[2,0]*Z[0,2] - Z[1,1]^2`; the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.symbol_names();
        for (k, (mono, &c)) in self.terms.iter().enumerate() {
            if k == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            let mut idx = 0;
            while idx < mono.len() {
                let sym = mono[idx];
                let mut e = 1;
                while idx + e < mono.len() && mono[idx + e] == sym {
                    e += 1;
                }
                let w = names.get(sym);
                factors.push(if e == 1 {
                    format!("Z{w}")
                } else {
                    format!("Z{w}^{e}")
                });
                idx += e;
            }
            let abs = c.unsigned_abs();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == 1 {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// One minor together with the rows and columns it was taken from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub poly: MinorPolynomial,
}

impl Minor {
    /// Repeated entries `Z_{U+V}` can make a minor vanish identically.
    pub fn is_identically_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

/// All `size x size` minors of the generic `Cat_F(i, d-i; n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorBlock {
    pub i: usize,
    pub size: usize,
    pub minors: Vec<Minor>,
}

/// Generators of a catalecticant ideal, grouped by the `(i, d-i, size)` they came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub n: usize,
    pub d: usize,
    pub blocks: Vec<GeneratorBlock>,
}

impl GeneratorSet {
    pub fn new(n: usize, d: usize) -> Self {
        Self {
            n,
            d,
            blocks: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.minors.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn minors(&self) -> impl Iterator<Item = &Minor> {
        self.blocks.iter().flat_map(|b| b.minors.iter())
    }

    pub fn polynomials(&self) -> impl Iterator<Item = &MinorPolynomial> {
        self.minors().map(|m| &m.poly)
    }

    /// `(i, d - i, size)` per block.
    pub fn provenance(&self) -> Vec<(usize, usize, usize)> {
        self.blocks
            .iter()
            .map(|b| (b.i, self.d - b.i, b.size))
            .collect()
    }

    pub fn zero_count(&self) -> usize {
        self.minors().filter(|m| m.is_identically_zero()).count()
    }

    pub fn extend(&mut self, other: GeneratorSet) -> Result<()> {
        if (self.n, self.d) != (other.n, other.d) {
            return Err(CatError::DimensionMismatch("merging generator sets".into()));
        }
        self.blocks.extend(other.blocks);
        Ok(())
    }
}

/// Lexicographic `k`-subsets of `0..m`.
pub fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > m {
        return out;
    }
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        let Some(pos) = (0..k).rev().find(|&p| current[p] < m - k + p) else {
            return out;
        };
        current[pos] += 1;
        for q in pos + 1..k {
            current[q] = current[q - 1] + 1;
        }
    }
}

fn permutations_with_sign(r: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                rec(prefix, used, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut perms = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; r], &mut perms);
    perms
        .into_iter()
        .map(|p| {
            let inversions = (0..r)
                .flat_map(|a| (a + 1..r).map(move |b| (a, b)))
                .filter(|&(a, b)| p[a] > p[b])
                .count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            (p, sign)
        })
        .collect()
}

fn expand_minor(
    cat: &SymbolicCatalecticant,
    rows: &[usize],
    cols: &[usize],
    perms: &[(Vec<usize>, i64)],
) -> MinorPolynomial {
    let mut p = MinorPolynomial::zero(cat.n, cat.d, rows.len());
    for (perm, sign) in perms {
        let mut mono: Vec<usize> = rows
            .iter()
            .zip(perm)
            .map(|(&r, &k)| cat.entry(r, cols[k]))
            .collect();
        mono.sort_unstable();
        p.add_term(mono, *sign);
    }
    p
}

/// Every `r x r` minor of the generic `Cat_F(i, d-i; n)`, ordered
/// lexicographically by (row subset, column subset).
pub fn emit_minors(n: usize, d: usize, i: usize, r: usize) -> Result<GeneratorSet> {
    let cat = build_generic_cat(n, d, i)?;
    if r == 0 || r > cat.rows().min(cat.cols()) {
        return Err(CatError::MinorTooLarge {
            size: r,
            rows: cat.rows(),
            cols: cat.cols(),
        });
    }
    if r > MAX_MINOR_SIZE {
        return Err(CatError::MinorSizeUnsupported(r));
    }
    let perms = permutations_with_sign(r);
    let row_sets = combinations(cat.rows(), r);
    let col_sets = combinations(cat.cols(), r);
    let pairs: Vec<(&Vec<usize>, &Vec<usize>)> = row_sets
        .iter()
        .flat_map(|rs| col_sets.iter().map(move |cs| (rs, cs)))
        .collect();
    let minors: Vec<Minor> = pairs
        .par_iter()
        .map(|(rs, cs)| Minor {
            rows: (*rs).clone(),
            cols: (*cs).clone(),
            poly: expand_minor(&cat, rs, cs, &perms),
        })
        .collect();
    Ok(GeneratorSet {
        n,
        d,
        blocks: vec![GeneratorBlock { i, size: r, minors }],
    })
}

/// Substitute `Z_W := a_W`.
pub fn evaluate_minor<T: ExactField>(p: &MinorPolynomial, f: &Form<T>) -> Result<T> {
    if (p.n, p.d) != (f.n(), f.d()) {
        return Err(CatError::DimensionMismatch(format!(
            "generator for (n={}, d={}) evaluated at a form with (n={}, d={})",
            p.n,
            p.d,
            f.n(),
            f.d()
        )));
    }
    let values = f.to_dense(&MonomialBasis::new(f.n(), f.d()));
    // p is homogeneous, so p(a) = p(lambda a) / lambda^degree
    let (ints, lambda) = clear_denominators(&values);
    let scaled = p.evaluate_int(&ints);
    let exact = BigRational::new(scaled, Pow::pow(lambda, p.degree));
    Ok(T::from_big(&exact).unwrap_or_else(|| p.evaluate(&values)))
}

/// `d p / d Z_W`.
pub fn differentiate_minor(p: &MinorPolynomial, w: &MultiIndex) -> Result<MinorPolynomial> {
    if w.len() != p.n || w.degree() != p.d {
        return Err(CatError::Invalid(format!(
            "symbol {w} is not a degree-{} multi-index in {} variables",
            p.d, p.n
        )));
    }
    let pos = MonomialBasis::new(p.n, p.d)
        .position(w)
        .expect("degree checked");
    Ok(p.derivative(pos))
}

/// `|G| x dim S_d` matrix of first partials of every generator at `f`.
pub fn jacobian_matrix<T: ExactField>(g: &GeneratorSet, f: &Form<T>) -> Result<ExactMatrix<T>> {
    if (g.n, g.d) != (f.n(), f.d()) {
        return Err(CatError::DimensionMismatch(format!(
            "generators for (n={}, d={}) at a form with (n={}, d={})",
            g.n,
            g.d,
            f.n(),
            f.d()
        )));
    }
    let basis = MonomialBasis::new(f.n(), f.d());
    let values = f.to_dense(&basis);
    let width = basis.len();
    let polys: Vec<&MinorPolynomial> = g.polynomials().collect();
    let rows: Vec<Vec<T>> = polys
        .par_iter()
        .map(|p| {
            let mut row = vec![T::zero(); width];
            p.gradient_into(&values, &mut row);
            row
        })
        .collect();
    ExactMatrix::new(rows.len(), width, rows.into_iter().flatten().collect())
}

/// Rank of the Jacobian of `G` at `f`; the scheme tangent space has
/// dimension `dim S_d - jacobian_rank`.
///
/// Evaluated at the point with denominators cleared, which rescales each
/// row by a nonzero constant and so keeps the rank.
pub fn jacobian_rank<T: ExactField>(g: &GeneratorSet, f: &Form<T>) -> Result<usize> {
    if (g.n, g.d) != (f.n(), f.d()) {
        return Err(CatError::DimensionMismatch(format!(
            "generators for (n={}, d={}) at a form with (n={}, d={})",
            g.n,
            g.d,
            f.n(),
            f.d()
        )));
    }
    let basis = MonomialBasis::new(f.n(), f.d());
    let (values, _) = clear_denominators(&f.to_dense(&basis));
    let width = basis.len();
    let polys: Vec<&MinorPolynomial> = g.polynomials().collect();
    let rows: Vec<Vec<BigInt>> = polys
        .par_iter()
        .filter_map(|p| {
            let mut row = vec![BigInt::zero(); width];
            p.gradient_int(&values, &mut row);
            // zero rows are the bulk at special points
            row.iter().any(|v| !v.is_zero()).then_some(row)
        })
        .collect();
    let count = rows.len();
    let mut flat: Vec<BigInt> = rows.into_iter().flatten().collect();
    Ok(integer_rank(&mut flat, count, width))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalecticant::build_cat;
    use crate::Rational;

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn lexicographic_subsets() {
        assert_eq!(
            combinations(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn binary_quadric_minor() {
        let g = emit_minors(2, 2, 1, 2).unwrap();
        assert_eq!(g.len(), 1);
        let p = &g.blocks[0].minors[0].poly;
        // Z20 = 0, Z11 = 1, Z02 = 2
        let expect =
            MinorPolynomial::from_terms(2, 2, 2, [(vec![0, 2], 1), (vec![1, 1], -1)]).unwrap();
        assert_eq!(p, &expect);
        assert_eq!(p.to_string(), "Z[2,0]*Z[0,2] - Z[1,1]^2");
    }

    #[test]
    fn minor_count() {
        // Cat(1,3;3) is 3 x 10, Cat(1,4;3) is 3 x 15
        assert_eq!(emit_minors(3, 4, 1, 3).unwrap().len(), 120);
        assert_eq!(emit_minors(3, 5, 1, 3).unwrap().len(), 455);
        assert!(matches!(
            emit_minors(3, 4, 1, 4),
            Err(CatError::MinorTooLarge { .. })
        ));
        assert!(matches!(
            emit_minors(3, 6, 3, 5),
            Err(CatError::MinorSizeUnsupported(5))
        ));
    }

    #[test]
    fn quadric_minors_are_symmetric_matrix_minors() {
        let g = emit_minors(3, 2, 1, 2).unwrap();
        assert_eq!(g.len(), 9);
        // rows {0,1}, cols {0,1}: Z200 Z020 - Z110^2
        let basis = MonomialBasis::new(3, 2);
        let s = |v: &[u32]| basis.position(&mi(v)).unwrap();
        let expect = MinorPolynomial::from_terms(
            3,
            2,
            2,
            [
                (vec![s(&[2, 0, 0]), s(&[0, 2, 0])], 1),
                (vec![s(&[1, 1, 0]), s(&[1, 1, 0])], -1),
            ],
        )
        .unwrap();
        assert_eq!(g.blocks[0].minors[0].poly, expect);
    }

    #[test]
    fn zero_flag() {
        let m = Minor {
            rows: vec![0, 1],
            cols: vec![0, 1],
            poly: MinorPolynomial::zero(2, 2, 2),
        };
        assert!(m.is_identically_zero());
        assert_eq!(m.poly.to_string(), "0");
        // no minor collapses to zero at these sizes
        for (n, d) in [(2, 6), (3, 4)] {
            for i in 1..d {
                let g = emit_minors(n, d, i, 2).unwrap();
                assert_eq!(g.zero_count(), 0);
            }
        }
    }

    #[test]
    fn evaluation_examples() {
        let g = emit_minors(2, 2, 1, 2).unwrap();
        let p = &g.blocks[0].minors[0].poly;
        let f = Form::from_divided(2, 2, [(mi(&[2, 0]), q(2)), (mi(&[0, 2]), q(2))]).unwrap();
        assert_eq!(evaluate_minor(p, &f).unwrap(), q(4));
        assert_eq!(evaluate_minor(p, &Form::<Rational>::zero(2, 2)).unwrap(), q(0));
    }

    #[test]
    fn evaluation_matches_numeric_determinant() {
        let f = Form::from_divided(
            3,
            4,
            crate::forms::enumerate_monomials(3, 4)
                .into_iter()
                .enumerate()
                .map(|(k, w)| (w, q((k as i64 * 7) % 11 - 5))),
        )
        .unwrap();
        let g = emit_minors(3, 4, 2, 3).unwrap();
        let cat = build_cat(&f, 2).unwrap();
        for m in g.minors().step_by(37) {
            let det = cat.body.submatrix(&m.rows, &m.cols).determinant().unwrap();
            assert_eq!(evaluate_minor(&m.poly, &f).unwrap(), det);
        }
    }

    #[test]
    fn derivative_examples() {
        let g = emit_minors(2, 2, 1, 2).unwrap();
        let p = &g.blocks[0].minors[0].poly;
        let dp = differentiate_minor(p, &mi(&[1, 1])).unwrap();
        assert_eq!(dp, MinorPolynomial::from_terms(2, 2, 1, [(vec![1], -2)]).unwrap());
        let only_z20 = MinorPolynomial::from_terms(2, 2, 1, [(vec![0], 3)]).unwrap();
        assert!(differentiate_minor(&only_z20, &mi(&[0, 2])).unwrap().is_zero());
        assert!(differentiate_minor(p, &mi(&[1, 0])).is_err());
    }

    #[test]
    fn jacobian_vanishes_at_origin_and_powers() {
        let g = emit_minors(3, 4, 1, 3).unwrap();
        assert_eq!(jacobian_rank(&g, &Form::<Rational>::zero(3, 4)).unwrap(), 0);
        let x1 = Form::power_of_linear(&[q(1), q(0), q(0)], 4);
        assert_eq!(jacobian_rank(&g, &x1).unwrap(), 0);
    }

    #[test]
    fn jacobian_at_sum_of_two_powers() {
        let g = emit_minors(3, 4, 1, 3).unwrap();
        let f = Form::power_of_linear(&[q(1), q(2), q(-1)], 4)
            .add(&Form::power_of_linear(&[q(3), q(0), q(1)], 4))
            .unwrap();
        let rank = jacobian_rank(&g, &f).unwrap();
        assert_eq!(15 - rank, 7);
    }
}
