//! Form files (JSON) and the plain-text generator export.
//!
//! A form file looks like
//!
//! ```json
//! { "n": 2, "d": 3, "basis": "monomial",
//!   "terms": [ { "exp": [3, 0], "coeff": "1" }, { "exp": [0, 3], "coeff": "-1/2" } ] }
//! ```
//!
//! A generator export is one header per block,
//! `# catkit generators n=<n> d=<d> i=<i> r=<r>`, followed by one expanded
//! minor per line in the symbols `Z[e1,..,en]`, e.g.
//! `Z[2,0]*Z[0,2] - Z[1,1]^2`. Identically zero minors are written as `0`.
//! Line `k` of a block is the minor on the `k`-th (row subset, column
//! subset) pair in lexicographic order.

use std::path::Path;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::catalecticant::{build_generic_cat, combinations, GeneratorBlock, GeneratorSet, Minor, MinorPolynomial};
use crate::forms::{Basis, Form, MonomialBasis, MultiIndex};
use crate::{CatError, ExactField, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub exp: Vec<u32>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormRecord {
    pub n: usize,
    pub d: usize,
    pub basis: Basis,
    pub terms: Vec<TermRecord>,
}

impl FormRecord {
    pub fn from_form<T: ExactField>(f: &Form<T>, basis: Basis) -> Self {
        Self {
            n: f.n(),
            d: f.d(),
            basis,
            terms: f
                .coefficients(basis)
                .into_iter()
                .map(|(u, c)| TermRecord {
                    exp: u.exponents().to_vec(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_form<T: ExactField>(&self) -> Result<Form<T>> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((MultiIndex::new(t.exp.clone()), parse_scalar(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        Form::from_coeffs(self.n, self.d, terms, self.basis)
    }
}

/// `"p/q"` or `"p"`.
pub fn parse_scalar<T: ExactField>(s: &str) -> Result<T> {
    let v = BigRational::from_str(s.trim())
        .map_err(|_| CatError::Parse(format!("not a rational number: {s:?}")))?;
    T::from_big(&v).ok_or_else(|| CatError::Parse(format!("{s} does not fit the scalar type")))
}

pub fn parse_form<T: ExactField>(json: &str) -> Result<Form<T>> {
    let rec: FormRecord =
        serde_json::from_str(json).map_err(|e| CatError::Parse(format!("form file: {e}")))?;
    rec.to_form()
}

pub fn format_form<T: ExactField>(f: &Form<T>, basis: Basis) -> String {
    serde_json::to_string_pretty(&FormRecord::from_form(f, basis)).expect("plain data")
}

pub fn read_form<T: ExactField>(path: &Path) -> Result<Form<T>> {
    parse_form(&std::fs::read_to_string(path)?)
}

pub fn write_form<T: ExactField>(f: &Form<T>, basis: Basis, path: &Path) -> Result<()> {
    std::fs::write(path, format_form(f, basis) + "\n")?;
    Ok(())
}

/// Text of the generator export.
pub fn format_generators(g: &GeneratorSet) -> String {
    let mut out = String::new();
    if g.blocks.is_empty() {
        out.push_str(&format!("# catkit generators n={} d={}\n", g.n, g.d));
    }
    for block in &g.blocks {
        out.push_str(&format!(
            "# catkit generators n={} d={} i={} r={}\n",
            g.n, g.d, block.i, block.size
        ));
        for m in &block.minors {
            out.push_str(&m.poly.to_string());
            out.push('\n');
        }
    }
    out
}

pub fn export_generators(g: &GeneratorSet, path: &Path) -> Result<()> {
    std::fs::write(path, format_generators(g))?;
    Ok(())
}

pub fn import_generators(path: &Path) -> Result<GeneratorSet> {
    parse_generators(&std::fs::read_to_string(path)?)
}

fn header_fields(line: &str) -> Result<Vec<(String, usize)>> {
    let rest = line
        .strip_prefix("# catkit generators")
        .ok_or_else(|| CatError::Parse(format!("not a generator header: {line}")))?;
    rest.split_whitespace()
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| CatError::Parse(format!("bad header field {kv}")))?;
            let v = v
                .parse()
                .map_err(|_| CatError::Parse(format!("bad header value {kv}")))?;
            Ok((k.to_string(), v))
        })
        .collect()
}

fn field(fields: &[(String, usize)], key: &str) -> Option<usize> {
    fields.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
}

/// Inverse of [`format_generators`].
pub fn parse_generators(text: &str) -> Result<GeneratorSet> {
    let mut set: Option<GeneratorSet> = None;
    let mut pending: Option<(usize, usize, Vec<MinorPolynomial>)> = None;
    let mut symbols: Option<MonomialBasis> = None;

    fn close(set: &mut GeneratorSet, block: (usize, usize, Vec<MinorPolynomial>)) -> Result<()> {
        let (i, size, polys) = block;
        let minors = if polys.is_empty() {
            Vec::new()
        } else {
            let cat = build_generic_cat(set.n, set.d, i)?;
            let row_sets = combinations(cat.rows(), size);
            let col_sets = combinations(cat.cols(), size);
            if polys.len() != row_sets.len() * col_sets.len() {
                return Err(CatError::Parse(format!(
                    "block i={i} r={size} has {} lines, expected {}",
                    polys.len(),
                    row_sets.len() * col_sets.len()
                )));
            }
            row_sets
                .iter()
                .flat_map(|rs| col_sets.iter().map(move |cs| (rs.clone(), cs.clone())))
                .zip(polys)
                .map(|((rows, cols), poly)| Minor { rows, cols, poly })
                .collect()
        };
        set.blocks.push(GeneratorBlock { i, size, minors });
        Ok(())
    }

    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            let fields = header_fields(line)?;
            let n = field(&fields, "n").ok_or_else(|| CatError::Parse("header without n".into()))?;
            let d = field(&fields, "d").ok_or_else(|| CatError::Parse("header without d".into()))?;
            let s = set.get_or_insert_with(|| GeneratorSet::new(n, d));
            if (s.n, s.d) != (n, d) {
                return Err(CatError::Parse("headers disagree on n or d".into()));
            }
            if let Some(block) = pending.take() {
                close(s, block)?;
            }
            symbols.get_or_insert_with(|| MonomialBasis::new(n, d));
            if let (Some(i), Some(r)) = (field(&fields, "i"), field(&fields, "r")) {
                pending = Some((i, r, Vec::new()));
            }
            continue;
        }
        let (Some(s), Some((_, size, polys)), Some(sym)) = (&set, &mut pending, &symbols) else {
            return Err(CatError::Parse(format!("polynomial before a block header: {line}")));
        };
        polys.push(parse_minor(line, s.n, s.d, *size, sym)?);
    }
    let mut set = set.ok_or_else(|| CatError::Parse("missing header".into()))?;
    if let Some(block) = pending.take() {
        close(&mut set, block)?;
    }
    Ok(set)
}

fn parse_minor(
    line: &str,
    n: usize,
    d: usize,
    size: usize,
    symbols: &MonomialBasis,
) -> Result<MinorPolynomial> {
    if line == "0" {
        return Ok(MinorPolynomial::zero(n, d, size));
    }
    let bad = |what: &str| CatError::Parse(format!("{what} in {line:?}"));
    let mut terms = Vec::new();
    let mut sign = 1i64;
    let mut rest = line;
    if let Some(r) = rest.strip_prefix('-') {
        sign = -1;
        rest = r;
    }
    loop {
        let (term, tail) = match rest.find([' ']) {
            Some(pos) => (&rest[..pos], Some(&rest[pos..])),
            None => (rest, None),
        };
        let mut coeff = 1i64;
        let mut mono = Vec::new();
        for factor in term.split('*') {
            if let Some(inner) = factor.strip_prefix("Z[") {
                let (idx, power) = match inner.split_once("]^") {
                    Some((a, p)) => (a, p.parse::<usize>().map_err(|_| bad("bad exponent"))?),
                    None => (inner.strip_suffix(']').ok_or_else(|| bad("unclosed symbol"))?, 1),
                };
                let exps = idx
                    .split(',')
                    .map(|e| e.parse::<u32>().map_err(|_| bad("bad index")))
                    .collect::<Result<Vec<_>>>()?;
                let pos = symbols
                    .position(&MultiIndex::new(exps))
                    .ok_or_else(|| bad("symbol of the wrong shape"))?;
                mono.extend(std::iter::repeat_n(pos, power));
            } else {
                coeff *= factor.parse::<i64>().map_err(|_| bad("bad coefficient"))?;
            }
        }
        terms.push((mono, sign * coeff));
        let Some(tail) = tail else { break };
        let tail = tail.trim_start();
        let (op, after) = tail.split_at(1);
        sign = match op {
            "+" => 1,
            "-" => -1,
            _ => return Err(bad("expected + or -")),
        };
        rest = after.trim_start();
    }
    MinorPolynomial::from_terms(n, d, size, terms)
}
