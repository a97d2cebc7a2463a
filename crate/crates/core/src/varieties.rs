//! Membership, classification and dimension counts for secant and
//! catalecticant varieties.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::binary::{decompose_form, squarefree_classify, Decomposition, DecompositionKind, RootType};
use crate::catalecticant::{cat_rank, catalecticant_unchecked, emit_minors, jacobian_rank, GeneratorBlock, GeneratorSet, MAX_MINOR_SIZE};
use crate::forms::{binomial, graded_dim, substitute, Form};
use crate::{CatError, ExactField, ExactMatrix, Result};

/// `rank Cat_f(1, d-1; n) <= r`.
pub fn member_vr<T: ExactField>(f: &Form<T>, r: usize) -> Result<bool> {
    if r == 0 {
        return Err(CatError::Precondition("r must be at least 1".into()));
    }
    Ok(cat_rank(f, 1) <= r)
}

/// Coordinates `x = M x'` in which `f` only involves `x'_1, .., x'_r`.
///
/// Returns `(r, M, g)` with `r = rank Cat_f(1, d-1; n)`, `g` the form in
/// `r` variables, and `substitute(g.embed(n), M^-1) = f`.
pub fn essential_vars<T: ExactField>(f: &Form<T>) -> Result<(usize, ExactMatrix<T>, Form<T>)> {
    if f.is_zero() {
        return Err(CatError::ZeroForm);
    }
    let n = f.n();
    let d = f.d();
    // I_1: linear operators killing f, from the map R_1 -> S_{d-1}
    let kernel = catalecticant_unchecked(f, d - 1).body.kernel_basis();
    let r = n - kernel.len();
    let mut complement: Vec<Vec<T>> = Vec::with_capacity(r);
    let mut current: Vec<Vec<T>> = kernel.clone();
    for k in 0..n {
        if complement.len() == r {
            break;
        }
        let mut e = vec![T::zero(); n];
        e[k] = T::one();
        let mut trial = current.clone();
        trial.push(e.clone());
        let rows = trial.len();
        if ExactMatrix::new(rows, n, trial.into_iter().flatten().collect())?.rank() == rows {
            current.push(e.clone());
            complement.push(e);
        }
    }
    // columns: complement first, then the kernel directions
    let columns: Vec<Vec<T>> = complement.into_iter().chain(kernel).collect();
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for col in &columns {
            data.push(col[i].clone());
        }
    }
    let m = ExactMatrix::new(n, n, data)?;
    let g = substitute(f, &m)?.restrict(r)?;
    Ok((r, m, g))
}

/// `rank Cat_f(1, d-1; n) <= 2` and `rank Cat_f(2, d-2; n) <= 2`.
pub fn member_ps2<T: ExactField>(f: &Form<T>) -> Result<bool> {
    let d = f.d();
    if d < 2 {
        return Err(CatError::Precondition(format!(
            "PS(2) membership needs d >= 2, got {d}"
        )));
    }
    if d == 2 {
        return member_vr(f, 2);
    }
    Ok(cat_rank(f, 1) <= 2 && cat_rank(f, 2) <= 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ps2Tag {
    Zero,
    Power,
    SumOfTwo,
    TangentLine,
}

impl fmt::Display for Ps2Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ps2Tag::Zero => "zero",
            Ps2Tag::Power => "power",
            Ps2Tag::SumOfTwo => "sum_of_two",
            Ps2Tag::TangentLine => "tangent_line",
        })
    }
}

/// Which of `0`, `L^d`, `L_1^d + L_2^d`, `L_1 L_2^(d-1)` a form is.
#[derive(Clone, Debug, PartialEq)]
pub struct Ps2Class<T> {
    pub tag: Ps2Tag,
    /// Rational linear forms realizing the normal form, when they exist.
    pub witnesses: Option<Decomposition<T>>,
}

pub fn classify_ps2<T: ExactField>(f: &Form<T>) -> Result<Ps2Class<T>> {
    if !member_ps2(f)? {
        return Err(CatError::NotMember("form is not in PS(2)".into()));
    }
    if f.is_zero() {
        return Ok(Ps2Class {
            tag: Ps2Tag::Zero,
            witnesses: None,
        });
    }
    let rank = cat_rank(f, 1);
    let d = f.d();
    if d == 2 && rank == 2 {
        // every rank-2 quadric is a sum of two squares over the closure
        return Ok(Ps2Class {
            tag: Ps2Tag::SumOfTwo,
            witnesses: None,
        });
    }
    let dec = decompose_form(f)?;
    let tag = if rank == 1 {
        Ps2Tag::Power
    } else {
        match squarefree_classify(&dec.apolar_form)? {
            RootType::Squarefree => Ps2Tag::SumOfTwo,
            RootType::Repeated => Ps2Tag::TangentLine,
        }
    };
    let witnesses = (dec.kind != DecompositionKind::Certificate).then_some(dec);
    Ok(Ps2Class { tag, witnesses })
}

fn check_gor_range(d: usize, s: usize) -> Result<()> {
    if s < 2 || 2 * s > d + 2 {
        return Err(CatError::Precondition(format!(
            "need 2 <= s and 2s <= d + 2, got s={s}, d={d}"
        )));
    }
    Ok(())
}

/// `rank Cat_f(1, d-1; n) <= 2` and `rank Cat_f(s, d-s; n) <= s`.
pub fn member_gor_leq<T: ExactField>(f: &Form<T>, s: usize) -> Result<bool> {
    check_gor_range(f.d(), s)?;
    Ok(cat_rank(f, 1) <= 2 && cat_rank(f, s) <= s)
}

/// A symmetric sequence `(t_0, .., t_d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SequenceT(pub Vec<usize>);

impl SequenceT {
    pub fn entries(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for SequenceT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `T_{2,s} = (1, 2, .., s, s, .., s, .., 2, 1)`.
pub fn t2s_sequence(d: usize, s: usize) -> Result<SequenceT> {
    check_gor_range(d, s)?;
    Ok(SequenceT(
        (0..=d).map(|i| (i + 1).min(s).min(d - i + 1)).collect(),
    ))
}

/// `T_r`: entries `min(r, dim R_i, dim R_{d-i})`.
pub fn hilbert_cap(r: usize, d: usize, n: usize) -> Result<SequenceT> {
    if n == 0 {
        return Err(CatError::Precondition("n must be positive".into()));
    }
    let top = graded_dim(n, d / 2);
    if r > top {
        return Err(CatError::Precondition(format!(
            "r = {r} exceeds dim R_{} = {top}",
            d / 2
        )));
    }
    Ok(SequenceT(
        (0..=d)
            .map(|i| r.min(graded_dim(n, i)).min(graded_dim(n, d - i)))
            .collect(),
    ))
}

/// `dim V_r(1, d-1; n) = C(r+d-1, d) + r(n-r)` for `1 <= r <= n-1`.
pub fn dim_vr(r: usize, d: usize, n: usize) -> Result<usize> {
    if r == 0 || r >= n {
        return Err(CatError::Precondition(format!(
            "need 1 <= r <= n - 1, got r={r}, n={n}"
        )));
    }
    Ok(binomial(r + d - 1, d) + r * (n - r))
}

/// Rank of the `j`-th Eagon-Northcott term, `C(a, j) C(j-1, e-1)` with
/// `a = d - s + 1`, `e = s + 1`.
pub fn en_term_rank(d: usize, s: usize, j: usize) -> Result<usize> {
    let e = s + 1;
    let a = (d + 1).saturating_sub(s);
    if j < e || j > a {
        return Err(CatError::Precondition(format!(
            "term index {j} outside [{e}, {a}]"
        )));
    }
    Ok(binomial(a, j) * binomial(j - 1, e - 1))
}

/// A variety with known generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `rank Cat(1, d-1) <= r`.
    Vr(usize),
    /// The cone over the chordal variety of the Veronese.
    Ps2,
    /// `Gor_<=(T_{2,s})`.
    Gor(usize),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Vr(r) => write!(f, "vr:{r}"),
            Family::Ps2 => write!(f, "ps2"),
            Family::Gor(s) => write!(f, "gor:{s}"),
        }
    }
}

impl FromStr for Family {
    type Err = CatError;

    /// `vr:2`, `ps2`, `gor:3`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let num = |arg: Option<&str>| -> Result<usize> {
            arg.ok_or_else(|| CatError::Parse(format!("family {name} needs a parameter")))?
                .parse()
                .map_err(|_| CatError::Parse(format!("bad family parameter in {s}")))
        };
        match name {
            "vr" => Ok(Family::Vr(num(arg)?)),
            "ps2" => Ok(Family::Ps2),
            "gor" => Ok(Family::Gor(num(arg)?)),
            _ => Err(CatError::Parse(format!("unknown family {s}"))),
        }
    }
}

impl Family {
    pub fn contains<T: ExactField>(&self, f: &Form<T>) -> Result<bool> {
        match *self {
            Family::Vr(r) => member_vr(f, r),
            Family::Ps2 => member_ps2(f),
            Family::Gor(s) => member_gor_leq(f, s),
        }
    }

    /// Expected dimension of the affine variety in `S_d`.
    pub fn dimension(&self, n: usize, d: usize) -> Result<usize> {
        let ambient = graded_dim(n, d);
        let dim = match *self {
            Family::Vr(r) if r >= n => ambient,
            Family::Vr(r) => dim_vr(r, d, n)?,
            Family::Ps2 if d == 2 => 2 * n - 1,
            Family::Ps2 => 2 * n,
            Family::Gor(s) => {
                check_gor_range(d, s)?;
                2 * n.saturating_sub(2) + (2 * s).min(d + 1)
            }
        };
        Ok(dim.min(ambient))
    }

    /// Rank conditions `(i, size)`: all `size x size` minors of `Cat(i, d-i)`.
    fn conditions(&self, d: usize) -> Result<Vec<(usize, usize)>> {
        match *self {
            Family::Vr(r) => Ok(vec![(1, r + 1)]),
            Family::Ps2 if d < 2 => Err(CatError::Precondition("PS(2) needs d >= 2".into())),
            // Cat(2, d-2) is the transpose of Cat(1, d-1) or absent
            Family::Ps2 if d <= 3 => Ok(vec![(1, 3)]),
            Family::Ps2 => Ok(vec![(1, 3), (2, 3)]),
            Family::Gor(s) => {
                check_gor_range(d, s)?;
                let i = s.min(d - s);
                if i == 1 {
                    Ok(vec![(1, 3)])
                } else {
                    Ok(vec![(1, 3), (i, s + 1)])
                }
            }
        }
    }
}

/// Generators of the family's ideal in `S_d`. Conditions that hold
/// automatically (minor size beyond the matrix) give empty blocks.
pub fn family_generators(n: usize, d: usize, family: Family) -> Result<GeneratorSet> {
    let mut out = GeneratorSet::new(n, d);
    for (i, size) in family.conditions(d)? {
        let rows = graded_dim(n, i);
        let cols = graded_dim(n, d - i);
        if size > rows.min(cols) {
            out.blocks.push(GeneratorBlock {
                i,
                size,
                minors: Vec::new(),
            });
            continue;
        }
        if size > MAX_MINOR_SIZE {
            return Err(CatError::MinorSizeUnsupported(size));
        }
        out.extend(emit_minors(n, d, i, size)?)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularReport {
    pub family: Family,
    pub ambient_dim: usize,
    pub jacobian_rank: usize,
    /// `ambient_dim - jacobian_rank`.
    pub tangent_dim: usize,
    pub variety_dim: usize,
    pub singular: bool,
}

/// Scheme tangent space of the family's generators at `f`.
pub fn singular_test<T: ExactField>(f: &Form<T>, family: Family) -> Result<SingularReport> {
    let g = family_generators(f.n(), f.d(), family)?;
    singular_test_with(f, family, &g)
}

/// As [`singular_test`] with generators computed once by the caller.
pub fn singular_test_with<T: ExactField>(
    f: &Form<T>,
    family: Family,
    generators: &GeneratorSet,
) -> Result<SingularReport> {
    if !family.contains(f)? {
        return Err(CatError::NotMember(format!("form is not in {family}")));
    }
    let ambient_dim = graded_dim(f.n(), f.d());
    let jacobian_rank = jacobian_rank(generators, f)?;
    let tangent_dim = ambient_dim - jacobian_rank;
    let variety_dim = family.dimension(f.n(), f.d())?;
    Ok(SingularReport {
        family,
        ambient_dim,
        jacobian_rank,
        tangent_dim,
        variety_dim,
        singular: tangent_dim > variety_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Basis, MultiIndex, Rational};

    fn q(v: i64) -> Rational {
        Rational::from_int(v)
    }

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    fn mono(n: usize, terms: &[(&[u32], i64)]) -> Form<Rational> {
        let d = terms[0].0.iter().map(|&e| e as usize).sum();
        Form::from_coeffs(n, d, terms.iter().map(|(e, c)| (mi(e), q(*c))), Basis::Monomial)
            .unwrap()
    }

    fn two_powers() -> Form<Rational> {
        Form::power_of_linear(&[q(1), q(2), q(-1)], 4)
            .add(&Form::power_of_linear(&[q(3), q(0), q(1)], 4))
            .unwrap()
    }

    #[test]
    fn vr_membership() {
        let f = mono(3, &[(&[4, 0, 0], 1), (&[0, 4, 0], 1)]);
        assert!(member_vr(&f, 2).unwrap());
        assert!(!member_vr(&mono(3, &[(&[2, 1, 1], 1)]), 2).unwrap());
        assert!(member_vr(&Form::<Rational>::zero(3, 4), 1).unwrap());
    }

    #[test]
    fn essential_variables() {
        let f = Form::power_of_linear(&[q(1), q(1), q(0)], 4);
        let (r, m, g) = essential_vars(&f).unwrap();
        assert_eq!(r, 1);
        assert_eq!(g.n(), 1);
        assert_eq!(g.num_terms(), 1);
        let back = substitute(&g.embed(3).unwrap(), &m.inverse().unwrap()).unwrap();
        assert_eq!(back, f);

        let p = mono(3, &[(&[5, 0, 0], 1)]);
        let (r, m, g) = essential_vars(&p).unwrap();
        assert_eq!(r, 1);
        assert_eq!(m, ExactMatrix::identity(3));
        assert_eq!(g, p.restrict(1).unwrap());

        let full = mono(3, &[(&[2, 1, 1], 1)]);
        let (r, m, _) = essential_vars(&full).unwrap();
        assert_eq!(r, 3);
        assert_eq!(m, ExactMatrix::identity(3));
    }

    #[test]
    fn ps2_membership_and_classes() {
        assert!(member_ps2(&two_powers()).unwrap());
        let t = mono(3, &[(&[1, 3, 0], 1)]);
        assert!(member_ps2(&t).unwrap());
        let three = mono(3, &[(&[4, 0, 0], 1), (&[0, 4, 0], 1), (&[0, 0, 4], 1)]);
        assert!(!member_ps2(&three).unwrap());
        assert!(matches!(classify_ps2(&three), Err(CatError::NotMember(_))));

        assert_eq!(
            classify_ps2(&Form::<Rational>::zero(3, 4)).unwrap().tag,
            Ps2Tag::Zero
        );
        let s = classify_ps2(&mono(2, &[(&[4, 0], 1), (&[0, 4], 1)])).unwrap();
        assert_eq!(s.tag, Ps2Tag::SumOfTwo);
        let w = s.witnesses.unwrap();
        assert_eq!(w.components[0].l, [q(1), q(0)]);
        assert_eq!(w.components[1].l, [q(0), q(1)]);
        assert_eq!(
            classify_ps2(&mono(2, &[(&[1, 3], 1)])).unwrap().tag,
            Ps2Tag::TangentLine
        );
        assert_eq!(classify_ps2(&t).unwrap().tag, Ps2Tag::TangentLine);
        assert_eq!(classify_ps2(&two_powers()).unwrap().tag, Ps2Tag::SumOfTwo);
        let p = Form::power_of_linear(&[q(1), q(-2), q(3)], 5);
        assert_eq!(classify_ps2(&p).unwrap().tag, Ps2Tag::Power);
    }

    #[test]
    fn gor_membership() {
        let f = mono(2, &[(&[2, 3], 1)]);
        assert!(member_gor_leq(&f, 3).unwrap());
        assert!(!member_gor_leq(&f, 2).unwrap());
        assert!(member_gor_leq(&f.embed(3).unwrap(), 3).unwrap());
        assert!(member_gor_leq(&f, 1).is_err());
        assert!(member_gor_leq(&f, 4).is_err());
        // maximal s: the second condition is automatic
        let g = two_powers();
        assert_eq!(member_gor_leq(&g, 3).unwrap(), member_vr(&g, 2).unwrap());
    }

    #[test]
    fn sequences() {
        assert_eq!(t2s_sequence(5, 2).unwrap().0, vec![1, 2, 2, 2, 2, 1]);
        assert_eq!(t2s_sequence(6, 3).unwrap().0, vec![1, 2, 3, 3, 3, 2, 1]);
        assert!(t2s_sequence(4, 4).is_err());
        assert_eq!(hilbert_cap(2, 5, 3).unwrap().0, vec![1, 2, 2, 2, 2, 1]);
        assert_eq!(&hilbert_cap(4, 6, 4).unwrap().0[..2], &[1, 4]);
        assert!(hilbert_cap(7, 2, 3).is_err());
    }

    #[test]
    fn formulas() {
        assert_eq!(dim_vr(2, 4, 3).unwrap(), 7);
        for n in 2..6 {
            for d in 2..8 {
                assert_eq!(dim_vr(1, d, n).unwrap(), n);
            }
        }
        assert!(dim_vr(3, 4, 3).is_err());
        assert_eq!(en_term_rank(5, 2, 3).unwrap(), 4);
        assert_eq!(en_term_rank(5, 2, 4).unwrap(), 3);
        assert!(en_term_rank(5, 2, 2).is_err());
        assert!(en_term_rank(5, 2, 5).is_err());
    }

    #[test]
    fn family_parsing() {
        assert_eq!("vr:2".parse::<Family>().unwrap(), Family::Vr(2));
        assert_eq!("ps2".parse::<Family>().unwrap(), Family::Ps2);
        assert_eq!("gor:3".parse::<Family>().unwrap(), Family::Gor(3));
        assert!("gor".parse::<Family>().is_err());
        assert_eq!(Family::Gor(3).to_string(), "gor:3");
    }

    #[test]
    fn singular_loci() {
        let p = mono(3, &[(&[4, 0, 0], 1)]);
        let rep = singular_test(&p, Family::Ps2).unwrap();
        assert_eq!(rep.jacobian_rank, 0);
        assert_eq!(rep.tangent_dim, 15);
        assert!(rep.singular);

        let rep = singular_test(&two_powers(), Family::Ps2).unwrap();
        assert_eq!(rep.tangent_dim, 6);
        assert!(!rep.singular);

        let three = mono(3, &[(&[4, 0, 0], 1), (&[0, 4, 0], 1), (&[0, 0, 4], 1)]);
        assert!(matches!(
            singular_test(&three, Family::Ps2),
            Err(CatError::NotMember(_))
        ));
    }

    #[test]
    fn gor_family_singular_on_smaller_stratum() {
        // binary sextics: Gor_<=(T_{2,3}) is the hypersurface det Cat(3,3) = 0
        let f = mono(2, &[(&[1, 5], 1)]);
        let rep = singular_test(&f, Family::Gor(3)).unwrap();
        assert_eq!(rep.variety_dim, 6);
        assert!(rep.singular);
        let g = mono(2, &[(&[2, 4], 1)]);
        let rep = singular_test(&g, Family::Gor(3)).unwrap();
        assert_eq!(rep.tangent_dim, rep.variety_dim);
        assert!(!rep.singular);
    }
}
