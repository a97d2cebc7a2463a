use std::fmt;

use crate::forms::{enumerate_monomials, Form, MonomialBasis, MultiIndex};
use crate::{CatError, ExactField, ExactMatrix, Result};

/// `Cat_f(i, d-i; n)`: rows indexed by `|U| = i`, columns by `|V| = d - i`,
/// entry `a_{U+V}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CatalecticantMatrix<T> {
    pub n: usize,
    pub d: usize,
    pub i: usize,
    pub row_index: Vec<MultiIndex>,
    pub col_index: Vec<MultiIndex>,
    pub body: ExactMatrix<T>,
}

impl<T: ExactField> CatalecticantMatrix<T> {
    pub fn rank(&self) -> usize {
        self.body.rank()
    }
}

impl<T: ExactField> fmt::Display for CatalecticantMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Cat({}, {}; {})  {}x{}",
            self.i,
            self.d - self.i,
            self.n,
            self.body.rows(),
            self.body.cols()
        )?;
        write!(f, "{}", self.body)
    }
}

/// The i-th catalecticant of `f`, `1 <= i <= d - 1`.
pub fn build_cat<T: ExactField>(f: &Form<T>, i: usize) -> Result<CatalecticantMatrix<T>> {
    if i == 0 || i >= f.d() {
        return Err(CatError::IndexOutOfRange { i, d: f.d() });
    }
    Ok(catalecticant_unchecked(f, i))
}

/// Same as [`build_cat`] but admits the boundary cases `i = 0` and `i = d`.
pub(crate) fn catalecticant_unchecked<T: ExactField>(f: &Form<T>, i: usize) -> CatalecticantMatrix<T> {
    let (n, d) = (f.n(), f.d());
    let row_index = enumerate_monomials(n, i);
    let col_index = enumerate_monomials(n, d - i);
    let mut data = Vec::with_capacity(row_index.len() * col_index.len());
    for u in &row_index {
        for v in &col_index {
            data.push(f.coeff(&u.add(v)));
        }
    }
    let body = ExactMatrix::new(row_index.len(), col_index.len(), data)
        .expect("shape follows from the index lists");
    CatalecticantMatrix {
        n,
        d,
        i,
        row_index,
        col_index,
        body,
    }
}

/// `rank Cat_f(i, d-i; n)` for any `0 <= i <= d`.
pub(crate) fn cat_rank<T: ExactField>(f: &Form<T>, i: usize) -> usize {
    catalecticant_unchecked(f, i).rank()
}

/// Generic catalecticant `(Z_{U+V})`; entries are positions of `U+V` in
/// `enumerate_monomials(n, d)`.
#[derive(Clone, Debug)]
pub struct SymbolicCatalecticant {
    pub n: usize,
    pub d: usize,
    pub i: usize,
    pub row_index: Vec<MultiIndex>,
    pub col_index: Vec<MultiIndex>,
    symbols: MonomialBasis,
    entries: Vec<usize>,
}

impl SymbolicCatalecticant {
    pub fn rows(&self) -> usize {
        self.row_index.len()
    }

    pub fn cols(&self) -> usize {
        self.col_index.len()
    }

    /// Symbol index of entry `(r, c)`.
    pub fn entry(&self, r: usize, c: usize) -> usize {
        self.entries[r * self.cols() + c]
    }

    /// The multi-index `W` of the symbol `Z_W` at `(r, c)`.
    pub fn symbol(&self, r: usize, c: usize) -> &MultiIndex {
        self.symbols.get(self.entry(r, c))
    }

    pub fn symbols(&self) -> &MonomialBasis {
        &self.symbols
    }
}

impl fmt::Display for SymbolicCatalecticant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows() {
            let cells: Vec<String> = (0..self.cols())
                .map(|c| format!("Z{}", self.symbol(r, c)))
                .collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

pub fn build_generic_cat(n: usize, d: usize, i: usize) -> Result<SymbolicCatalecticant> {
    if n == 0 {
        return Err(CatError::Invalid("n must be positive".into()));
    }
    if i == 0 || i >= d {
        return Err(CatError::IndexOutOfRange { i, d });
    }
    let symbols = MonomialBasis::new(n, d);
    let row_index = enumerate_monomials(n, i);
    let col_index = enumerate_monomials(n, d - i);
    let mut entries = Vec::with_capacity(row_index.len() * col_index.len());
    for u in &row_index {
        for v in &col_index {
            entries.push(symbols.position(&u.add(v)).expect("U+V has degree d"));
        }
    }
    Ok(SymbolicCatalecticant {
        n,
        d,
        i,
        row_index,
        col_index,
        symbols,
        entries,
    })
}
