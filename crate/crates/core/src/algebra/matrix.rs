use std::fmt;

use super::integer::{clear_denominators, integer_rank};
use crate::{CatError, ExactField, Result};

/// Dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<T> {
    pub matrix: ExactMatrix<T>,
    pub pivots: Vec<usize>,
}

impl<T> ExactMatrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> ExactMatrix<U> {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: ExactField> ExactMatrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(CatError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(CatError::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| T::from_int(v)).collect())
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(CatError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).clone() + a.clone() * b.clone();
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.cols {
            return Err(CatError::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(CatError::DimensionMismatch("matrix sum".into()));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                data.push(self.get(r, c).clone());
            }
        }
        Self {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    /// Columns `range` of every row.
    pub fn column_block(&self, start: usize, end: usize) -> Self {
        let cols: Vec<usize> = (start..end).collect();
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, &cols)
    }

    /// Rank by fraction-free Bareiss elimination with first-nonzero pivoting,
    /// run over the integers after clearing each row's denominators.
    pub fn rank(&self) -> usize {
        if self.cols == 0 {
            return 0;
        }
        let mut a: Vec<_> = self
            .data
            .chunks(self.cols)
            .flat_map(|row| clear_denominators(row).0)
            .collect();
        integer_rank(&mut a, self.rows, self.cols)
    }

    /// Determinant; cofactor expansion up to 3x3, Bareiss above.
    pub fn determinant(&self) -> Result<T> {
        self.require_square()?;
        Ok(match self.rows {
            0 => T::one(),
            1 => self.data[0].clone(),
            2 => {
                self.get(0, 0).clone() * self.get(1, 1).clone()
                    - self.get(0, 1).clone() * self.get(1, 0).clone()
            }
            3 => {
                let m = |r, c| self.get(r, c).clone();
                m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                    - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                    + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
            }
            _ => self.determinant_bareiss()?,
        })
    }

    /// Determinant through Bareiss elimination regardless of size.
    pub fn determinant_bareiss(&self) -> Result<T> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.data.clone();
        let (rank, swaps) = bareiss(&mut a, n, n);
        if rank < n {
            return Ok(T::zero());
        }
        let last = a[n * n - 1].clone();
        Ok(if swaps % 2 == 1 { -last } else { last })
    }

    /// Gauss-Jordan reduction with first-nonzero pivoting; pivots are scaled to 1.
    pub fn rref(&self) -> Rref<T> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = T::one() / m.get(r, c).clone();
            for j in c..m.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let pivot_entry = m.get(r, j);
                    if pivot_entry.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).clone() - factor.clone() * pivot_entry.clone();
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, pivots }
    }

    /// Basis of the right kernel.
    ///
    /// One vector per free column (in column order), read off the reduced
    /// echelon form and then scaled so its first nonzero entry is 1.
    pub fn kernel_basis(&self) -> Vec<Vec<T>> {
        let Rref { matrix, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![T::zero(); self.cols];
                v[free] = T::one();
                for (k, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix.get(k, free).clone();
                }
                normalize_leading(&mut v);
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, T::one());
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(CatError::Singular);
        }
        Ok(matrix.column_block(n, 2 * n))
    }

    /// One solution of `self * x = b`, free variables set to zero; `None` if inconsistent.
    pub fn solve(&self, b: &[T]) -> Result<Option<Vec<T>>> {
        if b.len() != self.rows {
            return Err(CatError::DimensionMismatch("right-hand side length".into()));
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for (r, rhs) in b.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, rhs.clone());
        }
        let Rref { matrix, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![T::zero(); self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = matrix.get(k, self.cols).clone();
        }
        Ok(Some(x))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(CatError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

impl<T: fmt::Display> fmt::Display for ExactMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for r in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|c| format!("{:>width$}", cells[r * self.cols + c]))
                .collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

/// Scale so the first nonzero entry is 1.
pub(crate) fn normalize_leading<T: ExactField>(v: &mut [T]) {
    if let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() {
        if !lead.is_one() {
            for x in v.iter_mut() {
                *x = x.clone() / lead.clone();
            }
        }
    }
}

/// In-place Bareiss elimination. Returns (rank, row swaps).
///
/// Entry updates are `(p * a_ij - a_ic * a_rj) / prev`, where `prev` is the
/// previous pivot; for integer input every division is exact.
fn bareiss<T: ExactField>(a: &mut [T], rows: usize, cols: usize) -> (usize, usize) {
    let mut prev = T::one();
    let mut rank = 0;
    let mut swaps = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if p != rank {
            for j in 0..cols {
                a.swap(p * cols + j, rank * cols + j);
            }
            swaps += 1;
        }
        let pivot = a[rank * cols + c].clone();
        for i in rank + 1..rows {
            let factor = a[i * cols + c].clone();
            for j in c + 1..cols {
                let lhs = &a[i * cols + j];
                let rhs = &a[rank * cols + j];
                let v = if factor.is_zero() || rhs.is_zero() {
                    if lhs.is_zero() {
                        continue;
                    }
                    pivot.clone() * lhs.clone() / prev.clone()
                } else {
                    (pivot.clone() * lhs.clone() - factor.clone() * rhs.clone()) / prev.clone()
                };
                a[i * cols + j] = v;
            }
            a[i * cols + c] = T::zero();
        }
        prev = pivot;
        rank += 1;
    }
    (rank, swaps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    type M = ExactMatrix<Rational>;

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    fn laplace(m: &M) -> Rational {
        let n = m.rows();
        if n == 0 {
            return q(1);
        }
        let mut acc = q(0);
        for c in 0..n {
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&k| k != c).collect();
            let term = m.get(0, c).clone() * laplace(&m.submatrix(&rows, &cols));
            acc = if c % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }

    #[test]
    fn rank_examples() {
        assert_eq!(M::zeros(3, 3).rank(), 0);
        assert_eq!(M::identity(3).rank(), 3);
        let m = M::from_i64_rows(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn kernel_examples() {
        assert!(M::identity(2).kernel_basis().is_empty());
        let m = M::from_i64_rows(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(m.kernel_basis(), vec![vec![q(0), q(1), q(0)]]);
        let m = M::from_i64_rows(&[&[1, 1]]).unwrap();
        assert_eq!(m.kernel_basis(), vec![vec![q(1), q(-1)]]);
    }

    #[test]
    fn determinant_examples() {
        let m = M::from_i64_rows(&[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(m.determinant().unwrap(), q(-2));
        for k in 0..6 {
            assert_eq!(M::identity(k).determinant().unwrap(), q(1));
        }
        assert!(matches!(
            M::zeros(2, 3).determinant(),
            Err(CatError::NotSquare { .. })
        ));
    }

    #[test]
    fn determinant_matches_laplace_oracle() {
        // 4x4 with a zero leading entry to force a row swap.
        let m = M::from_rows(vec![
            vec![q(0), q(2), Rational::new(1.into(), 3.into()), q(-1)],
            vec![q(5), q(1), q(0), q(2)],
            vec![Rational::new((-7).into(), 2.into()), q(4), q(1), q(0)],
            vec![q(1), q(1), q(1), q(3)],
        ])
        .unwrap();
        assert_eq!(m.determinant().unwrap(), laplace(&m));
        let m3 = m.submatrix(&[1, 2, 3], &[0, 1, 3]);
        assert_eq!(m3.determinant().unwrap(), m3.determinant_bareiss().unwrap());
        assert_eq!(m3.determinant().unwrap(), laplace(&m3));
    }

    #[test]
    fn singular_bareiss_is_zero() {
        let m = M::from_i64_rows(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 0, 1], &[3, 3, 3, 3]])
            .unwrap();
        assert_eq!(m.determinant().unwrap(), q(0));
    }

    #[test]
    fn inverse_and_solve() {
        let m = M::from_i64_rows(&[&[2, 1], &[1, 1]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), M::identity(2));
        assert_eq!(
            M::from_i64_rows(&[&[1, 2], &[2, 4]]).unwrap().inverse(),
            Err(CatError::Singular)
        );
        let x = m.solve(&[q(3), q(2)]).unwrap().unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        let s = M::from_i64_rows(&[&[1, 1], &[1, 1]]).unwrap();
        assert_eq!(s.solve(&[q(1), q(2)]).unwrap(), None);
    }

    #[test]
    fn small_width_rationals_agree() {
        let big = M::from_i64_rows(&[&[3, 1, 4, 1], &[5, 9, 2, 6], &[5, 3, 5, 8], &[9, 7, 9, 3]])
            .unwrap();
        let small = ExactMatrix::<crate::Rational64>::from_i64_rows(&[
            &[3, 1, 4, 1],
            &[5, 9, 2, 6],
            &[5, 3, 5, 8],
            &[9, 7, 9, 3],
        ])
        .unwrap();
        assert_eq!(
            big.determinant().unwrap().to_int(),
            small.determinant().unwrap().to_int()
        );
        assert_eq!(big.rank(), small.rank());
    }
}
