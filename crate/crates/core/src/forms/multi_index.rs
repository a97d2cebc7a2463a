use std::collections::HashMap;
use std::fmt;

use crate::ExactField;

/// Exponent vector `U = (u_1, .., u_n)` with degree `|U| = u_1 + .. + u_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// Unit vector `e_k` in `n` variables.
    pub fn unit(n: usize, k: usize) -> Self {
        let mut e = vec![0; n];
        e[k] = 1;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` if `other <= self` componentwise.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        debug_assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    /// `u_1! .. u_n!` as a field element.
    pub fn factorial<T: ExactField>(&self) -> T {
        let mut acc = T::one();
        for &e in &self.0 {
            for k in 2..=e {
                acc = acc * T::from_int(i64::from(k));
            }
        }
        acc
    }

    /// Same exponents padded with zeros to `n` variables.
    pub fn padded(&self, n: usize) -> Self {
        let mut e = self.0.clone();
        e.resize(n, 0);
        Self(e)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

/// All multi-indices of degree `j` in `n` variables, graded-lex descending.
///
/// This order fixes every row and column index in the crate.
pub fn enumerate_monomials(n: usize, j: usize) -> Vec<MultiIndex> {
    let mut out = Vec::with_capacity(binomial(n + j - 1, j));
    let mut current = vec![0u32; n];
    fill(&mut out, &mut current, 0, j);
    out
}

fn fill(out: &mut Vec<MultiIndex>, current: &mut [u32], pos: usize, remaining: usize) {
    let n = current.len();
    if n == 0 {
        return;
    }
    if pos == n - 1 {
        current[pos] = remaining as u32;
        out.push(MultiIndex(current.to_vec()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e as u32;
        fill(out, current, pos + 1, remaining - e);
    }
    current[pos] = 0;
}

/// Monomials of one degree together with their positions.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    n: usize,
    degree: usize,
    list: Vec<MultiIndex>,
    index: HashMap<MultiIndex, usize>,
}

impl MonomialBasis {
    pub fn new(n: usize, degree: usize) -> Self {
        let list = enumerate_monomials(n, degree);
        let index = list
            .iter()
            .enumerate()
            .map(|(k, u)| (u.clone(), k))
            .collect();
        Self {
            n,
            degree,
            list,
            index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn monomials(&self) -> &[MultiIndex] {
        &self.list
    }

    pub fn get(&self, k: usize) -> &MultiIndex {
        &self.list[k]
    }

    pub fn position(&self, u: &MultiIndex) -> Option<usize> {
        self.index.get(u).copied()
    }
}

/// `C(a, b)`, zero when `b > a`.
pub fn binomial(a: usize, b: usize) -> usize {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for k in 0..b {
        acc = acc * (a - k) as u128 / (k + 1) as u128;
    }
    usize::try_from(acc).expect("binomial coefficient overflow")
}

/// `dim R_j = C(n - 1 + j, j)`.
pub fn graded_dim(n: usize, j: usize) -> usize {
    if n == 0 {
        return usize::from(j == 0);
    }
    binomial(n - 1 + j, j)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn binary_cubic_order() {
        assert_eq!(
            enumerate_monomials(2, 3),
            vec![mi(&[3, 0]), mi(&[2, 1]), mi(&[1, 2]), mi(&[0, 3])]
        );
    }

    #[test]
    fn linear_in_three() {
        assert_eq!(
            enumerate_monomials(3, 1),
            vec![mi(&[1, 0, 0]), mi(&[0, 1, 0]), mi(&[0, 0, 1])]
        );
    }

    #[test]
    fn counts_are_binomial() {
        assert_eq!(enumerate_monomials(3, 2).len(), 6);
        for n in 1..5 {
            for j in 0..7 {
                assert_eq!(enumerate_monomials(n, j).len(), graded_dim(n, j));
            }
        }
    }

    #[test]
    fn exhaustive_oracle() {
        // every vector in [0, j]^n with sum j, sorted descending
        for n in 1..4usize {
            for j in 0..5usize {
                let mut all = Vec::new();
                let total = (j + 1).pow(n as u32);
                for code in 0..total {
                    let mut c = code;
                    let mut v = Vec::new();
                    for _ in 0..n {
                        v.push((c % (j + 1)) as u32);
                        c /= j + 1;
                    }
                    if v.iter().map(|&e| e as usize).sum::<usize>() == j {
                        all.push(MultiIndex(v));
                    }
                }
                all.sort_by(|a, b| b.cmp(a));
                assert_eq!(enumerate_monomials(n, j), all);
            }
        }
    }

    #[test]
    fn shift_helpers() {
        let u = mi(&[2, 1]);
        assert_eq!(u.checked_sub(&mi(&[1, 1])), Some(mi(&[1, 0])));
        assert_eq!(u.checked_sub(&mi(&[0, 2])), None);
        assert_eq!(u.factorial::<crate::Rational>(), crate::Rational::from_int(2));
        assert_eq!(binomial(15, 3), 455);
    }
}
