//! Binary forms: apolar generators, root structure, and Waring or
//! generalized additive decompositions verified by exact re-expansion.
//!
//! A binary form `phi(y_1, y_2)` annihilates `(a x_1 + b x_2)^d` exactly when
//! `phi(a, b) = 0`, so rational roots of the apolar generator give the
//! linear forms of a decomposition directly.

mod univariate;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::apolarity::apolar_slice;
use crate::catalecticant::cat_rank;
use crate::forms::{contract, enumerate_monomials, substitute, Form, HomPoly, MonomialBasis, RPoly};
use crate::varieties::essential_vars;
use crate::{CatError, ExactField, ExactMatrix, Result};

use univariate::{has_repeated_root, rational_roots, UniPoly};

/// Root structure of a binary form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootType {
    Squarefree,
    Repeated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecompositionKind {
    Waring,
    Gad,
    Certificate,
}

/// `g * l^exponent`, with `g` a binary form in the `x` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Component<T> {
    pub g: HomPoly<T>,
    pub l: [T; 2],
    pub exponent: usize,
}

impl<T: ExactField> Component<T> {
    pub fn expand(&self) -> HomPoly<T> {
        let l = HomPoly::linear(&self.l);
        self.g.mul(&l.pow(self.exponent)).expect("binary")
    }
}

/// Passage between an `n`-variable form and its binary reduction:
/// `g = substitute(f, lift)` and `f = substitute(g, project)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Embedding<T> {
    /// `n x 2`.
    pub lift: ExactMatrix<T>,
    /// `2 x n`.
    pub project: ExactMatrix<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition<T> {
    pub kind: DecompositionKind,
    pub d: usize,
    pub components: Vec<Component<T>>,
    /// Generator of the apolar ideal in its least degree.
    pub apolar_form: RPoly<T>,
    pub root_type: RootType,
    pub embedding: Option<Embedding<T>>,
}

impl<T: ExactField> Decomposition<T> {
    /// Sum of the components as a binary form.
    pub fn expand(&self) -> Form<T> {
        let mut acc = HomPoly::zero(2, self.d);
        for c in &self.components {
            acc = acc.add(&c.expand()).expect("same degree");
        }
        Form::from_monomial(&acc)
    }
}

fn require_binary<T: ExactField>(f: &Form<T>) -> Result<()> {
    if f.n() != 2 {
        return Err(CatError::Precondition(format!(
            "binary form expected, got {} variables",
            f.n()
        )));
    }
    if f.is_zero() {
        return Err(CatError::ZeroForm);
    }
    Ok(())
}

/// Least `s >= 1` with `I_s != 0`.
pub fn min_apolar_degree<T: ExactField>(f: &Form<T>) -> Result<usize> {
    require_binary(f)?;
    let d = f.d();
    Ok((1..=d).find(|&s| cat_rank(f, s) < s + 1).unwrap_or(d + 1))
}

/// The generator of `I_s`, `s` minimal, as a primitive integral form with
/// positive leading coefficient.
pub fn apolar_generator<T: ExactField>(f: &Form<T>) -> Result<RPoly<T>> {
    let s = min_apolar_degree(f)?;
    let d = f.d();
    if 2 * s > d + 1 {
        return Err(CatError::AmbiguousStratum { s, d });
    }
    let slice = apolar_slice(f, s)?;
    if slice.dim() != 1 {
        return Err(CatError::Assertion(format!(
            "apolar slice in degree {s} has dimension {}",
            slice.dim()
        )));
    }
    normalize_primitive(&slice.basis[0])
}

fn normalize_primitive<T: ExactField>(phi: &RPoly<T>) -> Result<RPoly<T>> {
    let basis = MonomialBasis::new(phi.n(), phi.degree());
    let v: Vec<BigRational> = phi.to_vector(&basis).iter().map(T::to_big).collect();
    let ints = primitive_ints(&v);
    let out: Vec<T> = ints
        .into_iter()
        .map(|i| from_big(&BigRational::from_integer(i)))
        .collect::<Result<_>>()?;
    Ok(RPoly::from_vector(&basis, &out))
}

/// Coprime integers proportional to `v`, first nonzero entry positive.
fn primitive_ints(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

fn from_big<T: ExactField>(v: &BigRational) -> Result<T> {
    T::from_big(v).ok_or_else(|| {
        CatError::Invalid(format!("value {v} does not fit the scalar type"))
    })
}

/// `phi(t, 1)` as a univariate polynomial, plus the multiplicity of `y_2`
/// as a factor (the root at infinity).
fn dehomogenize<T: ExactField>(phi: &RPoly<T>) -> (UniPoly, usize) {
    let s = phi.degree();
    let mut c = vec![BigRational::zero(); s + 1];
    for (u, v) in phi.terms() {
        c[u.exponents()[0] as usize] = v.to_big();
    }
    let p = UniPoly::new(c);
    let deg = p.degree().unwrap_or(0);
    (p, s - deg)
}

/// Square-free versus repeated roots over the algebraic closure.
pub fn squarefree_classify<T: ExactField>(phi: &RPoly<T>) -> Result<RootType> {
    if phi.n() != 2 || phi.is_zero() {
        return Err(CatError::Precondition(
            "nonzero binary form expected".into(),
        ));
    }
    let (p, at_infinity) = dehomogenize(phi);
    if at_infinity >= 2 || has_repeated_root(&p) {
        Ok(RootType::Repeated)
    } else {
        Ok(RootType::Squarefree)
    }
}

/// Linear forms `L` (integral, primitive) with multiplicities such that
/// `phi` is a scalar times the product of the dual factors, when `phi`
/// splits over the rationals. `L = x_1` stands for the factor `y_2`.
fn rational_factors<T: ExactField>(phi: &RPoly<T>) -> Option<Vec<([BigInt; 2], usize)>> {
    let (p, at_infinity) = dehomogenize(phi);
    let mut out = Vec::new();
    if at_infinity > 0 {
        out.push(([BigInt::one(), BigInt::zero()], at_infinity));
    }
    let mut total = at_infinity;
    for (t, m) in rational_roots(&p) {
        // phi(t, 1) = 0, so phi kills (t x_1 + x_2)^d
        out.push(([t.numer().clone(), t.denom().clone()], m));
        total += m;
    }
    (total == phi.degree()).then_some(out)
}

/// Decompose a nonzero binary form through its apolar generator.
pub fn waring_decompose<T: ExactField>(f: &Form<T>) -> Result<Decomposition<T>> {
    require_binary(f)?;
    let phi = apolar_generator(f)?;
    let root_type = squarefree_classify(&phi)?;
    let d = f.d();
    let certificate = |phi: RPoly<T>| Decomposition {
        kind: DecompositionKind::Certificate,
        d,
        components: Vec::new(),
        apolar_form: phi,
        root_type,
        embedding: None,
    };
    let Some(factors) = rational_factors(&phi) else {
        return Ok(certificate(phi));
    };
    let kind = match root_type {
        RootType::Squarefree => DecompositionKind::Waring,
        RootType::Repeated => DecompositionKind::Gad,
    };
    let linear: Vec<[T; 2]> = factors
        .iter()
        .map(|(l, _)| {
            Ok([
                from_big(&BigRational::from_integer(l[0].clone()))?,
                from_big(&BigRational::from_integer(l[1].clone()))?,
            ])
        })
        .collect::<Result<_>>()?;
    // unknowns: coefficients of each G_i over the monomials of degree d_i - 1
    let target_basis = MonomialBasis::new(2, d);
    let mut columns: Vec<Vec<T>> = Vec::new();
    let mut layout: Vec<(usize, crate::MultiIndex)> = Vec::new();
    for (k, (l, (_, m))) in linear.iter().zip(&factors).enumerate() {
        let exponent = d + 1 - m;
        let power = HomPoly::linear(l).pow(exponent);
        for u in enumerate_monomials(2, m - 1) {
            let col = HomPoly::monomial(u.clone(), T::one())
                .mul(&power)
                .expect("binary");
            columns.push(col.to_vector(&target_basis));
            layout.push((k, u));
        }
    }
    let rows = target_basis.len();
    let cols = columns.len();
    let mut data = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for col in &columns {
            data.push(col[r].clone());
        }
    }
    let system = ExactMatrix::new(rows, cols, data)?;
    let rhs = f.to_monomial().to_vector(&target_basis);
    let Some(solution) = system.solve(&rhs)? else {
        return Err(CatError::Assertion(format!(
            "no decomposition along the roots of {phi}"
        )));
    };
    let mut components: Vec<Component<T>> = linear
        .iter()
        .zip(&factors)
        .map(|(l, (_, m))| Component {
            g: HomPoly::zero(2, m - 1),
            l: l.clone(),
            exponent: d + 1 - m,
        })
        .collect();
    for ((k, u), c) in layout.into_iter().zip(solution) {
        let term = HomPoly::monomial(u, c);
        components[k].g = components[k].g.add(&term).expect("same degree");
    }
    Ok(Decomposition {
        kind,
        d,
        components,
        apolar_form: phi,
        root_type,
        embedding: None,
    })
}

/// Decompose a form with at most two essential variables, recording the
/// coordinate change when `n != 2`.
pub fn decompose_form<T: ExactField>(f: &Form<T>) -> Result<Decomposition<T>> {
    if f.is_zero() {
        return Err(CatError::ZeroForm);
    }
    if f.n() == 2 {
        return waring_decompose(f);
    }
    let embedding = binary_embedding(f)?;
    let g = substitute(f, &embedding.lift)?;
    let mut dec = waring_decompose(&g)?;
    dec.embedding = Some(embedding);
    Ok(dec)
}

/// Coordinates in which `f` only involves the first two variables.
pub fn binary_embedding<T: ExactField>(f: &Form<T>) -> Result<Embedding<T>> {
    let n = f.n();
    if n == 1 {
        return Ok(Embedding {
            lift: ExactMatrix::from_rows(vec![vec![T::one(), T::zero()]])?,
            project: ExactMatrix::from_rows(vec![vec![T::one()], vec![T::zero()]])?,
        });
    }
    let (r, m, _) = essential_vars(f)?;
    if r > 2 {
        return Err(CatError::Precondition(format!(
            "form has {r} essential variables, at most 2 supported"
        )));
    }
    let inv = m.inverse()?;
    let lift_rows = (0..n).map(|i| m.row(i)[..2].to_vec()).collect();
    let project_rows = (0..2).map(|i| inv.row(i).to_vec()).collect();
    Ok(Embedding {
        lift: ExactMatrix::from_rows(lift_rows)?,
        project: ExactMatrix::from_rows(project_rows)?,
    })
}

/// Re-expand and compare exactly; certificates check `phi o g = 0`.
pub fn verify_decomposition<T: ExactField>(dec: &Decomposition<T>, f: &Form<T>) -> bool {
    let binary = match &dec.embedding {
        Some(e) => match substitute(f, &e.lift) {
            Ok(g) => {
                // the lift must lose nothing
                if substitute(&g, &e.project).as_ref() != Ok(f) {
                    return false;
                }
                g
            }
            Err(_) => return false,
        },
        None => f.clone(),
    };
    if binary.n() != 2 || binary.d() != dec.d {
        return false;
    }
    match dec.kind {
        DecompositionKind::Certificate => {
            !dec.apolar_form.is_zero()
                && contract(&dec.apolar_form, &binary).is_ok_and(|r| r.is_zero())
        }
        DecompositionKind::Waring | DecompositionKind::Gad => dec.expand() == binary,
    }
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

    fn mono(terms: &[(&[u32], i64)]) -> Form<Rational> {
        let d = terms[0].0.iter().map(|&e| e as usize).sum();
        let n = terms[0].0.len();
        Form::from_coeffs(
            n,
            d,
            terms.iter().map(|(e, c)| (mi(e), q(*c))),
            Basis::Monomial,
        )
        .unwrap()
    }

    fn rpoly(terms: &[(&[u32], i64)]) -> RPoly<Rational> {
        let deg = terms[0].0.iter().map(|&e| e as usize).sum();
        RPoly::from_terms(2, deg, terms.iter().map(|(e, c)| (mi(e), q(*c)))).unwrap()
    }

    #[test]
    fn apolar_degrees() {
        assert_eq!(min_apolar_degree(&mono(&[(&[5, 0], 1)])).unwrap(), 1);
        assert_eq!(
            min_apolar_degree(&mono(&[(&[3, 0], 1), (&[0, 3], 1)])).unwrap(),
            2
        );
        // generic quartic
        let f = mono(&[(&[4, 0], 1), (&[3, 1], 2), (&[2, 2], -1), (&[1, 3], 3), (&[0, 4], 5)]);
        assert_eq!(min_apolar_degree(&f).unwrap(), 3);
        assert_eq!(
            min_apolar_degree(&Form::<Rational>::zero(2, 3)),
            Err(CatError::ZeroForm)
        );
    }

    #[test]
    fn generators() {
        let f = mono(&[(&[3, 0], 1), (&[0, 3], 1)]);
        assert_eq!(apolar_generator(&f).unwrap(), rpoly(&[(&[1, 1], 1)]));
        let t = mono(&[(&[1, 3], 1)]);
        assert_eq!(apolar_generator(&t).unwrap(), rpoly(&[(&[2, 0], 1)]));
        let p = mono(&[(&[6, 0], 1)]);
        assert_eq!(apolar_generator(&p).unwrap(), rpoly(&[(&[0, 1], 1)]));
        let quad = mono(&[(&[2, 0], 1), (&[0, 2], 1)]);
        assert_eq!(
            apolar_generator(&quad),
            Err(CatError::AmbiguousStratum { s: 2, d: 2 })
        );
    }

    #[test]
    fn generator_is_primitive() {
        // 3 x1^4 - 12 x1 x2^3 style forms give rational kernels; check scale
        let f = mono(&[(&[3, 0], 4), (&[2, 1], 6), (&[0, 3], -2)]);
        let phi = apolar_generator(&f).unwrap();
        assert!(contract(&phi, &f).unwrap().is_zero());
        let coeffs: Vec<Rational> = phi.terms().map(|(_, c)| c.clone()).collect();
        assert!(coeffs.iter().all(|c| c.is_integer()));
        let lead = phi.terms().last().unwrap().1.clone();
        assert!(lead.is_positive());
    }

    #[test]
    fn root_classes() {
        assert_eq!(
            squarefree_classify(&rpoly(&[(&[1, 1], 1)])).unwrap(),
            RootType::Squarefree
        );
        assert_eq!(
            squarefree_classify(&rpoly(&[(&[2, 0], 1)])).unwrap(),
            RootType::Repeated
        );
        assert_eq!(
            squarefree_classify(&rpoly(&[(&[0, 2], 1)])).unwrap(),
            RootType::Repeated
        );
        assert_eq!(
            squarefree_classify(&rpoly(&[(&[2, 1], 1), (&[0, 3], -1)])).unwrap(),
            RootType::Squarefree
        );
        // irrational but distinct roots
        assert_eq!(
            squarefree_classify(&rpoly(&[(&[2, 0], 1), (&[0, 2], -2)])).unwrap(),
            RootType::Squarefree
        );
    }

    #[test]
    fn sum_of_cubes() {
        let f = mono(&[(&[3, 0], 1), (&[0, 3], 1)]);
        let dec = waring_decompose(&f).unwrap();
        assert_eq!(dec.kind, DecompositionKind::Waring);
        assert_eq!(dec.components.len(), 2);
        assert_eq!(dec.components[0].l, [q(1), q(0)]);
        assert_eq!(dec.components[1].l, [q(0), q(1)]);
        for c in &dec.components {
            assert_eq!(c.g, HomPoly::constant(2, q(1)));
            assert_eq!(c.exponent, 3);
        }
        assert!(verify_decomposition(&dec, &f));
    }

    #[test]
    fn power_is_single_component() {
        let f = Form::power_of_linear(&[q(2), q(-3)], 5);
        let dec = waring_decompose(&f).unwrap();
        assert_eq!(dec.kind, DecompositionKind::Waring);
        assert_eq!(dec.components.len(), 1);
        assert!(verify_decomposition(&dec, &f));
    }

    #[test]
    fn gad_of_tangent_cubic() {
        let f = mono(&[(&[2, 1], 1)]);
        let dec = waring_decompose(&f).unwrap();
        assert_eq!(dec.kind, DecompositionKind::Gad);
        assert_eq!(dec.components.len(), 1);
        let c = &dec.components[0];
        assert_eq!(c.l, [q(1), q(0)]);
        assert_eq!(c.exponent, 2);
        assert_eq!(c.g, HomPoly::var(2, 1));
        assert!(verify_decomposition(&dec, &f));
    }

    #[test]
    fn irrational_roots_give_certificate() {
        // (x1 + r x2)^4 + (x1 - r x2)^4 with r^2 = 2, halved
        let f = mono(&[(&[4, 0], 1), (&[2, 2], 12), (&[0, 4], 4)]);
        let dec = waring_decompose(&f).unwrap();
        assert_eq!(dec.kind, DecompositionKind::Certificate);
        assert_eq!(dec.root_type, RootType::Squarefree);
        assert_eq!(dec.apolar_form, rpoly(&[(&[2, 0], 2), (&[0, 2], -1)]));
        assert!(dec.components.is_empty());
        assert!(verify_decomposition(&dec, &f));
    }

    #[test]
    fn perturbation_is_caught() {
        let f = mono(&[(&[3, 0], 1), (&[0, 3], 1)]);
        let mut dec = waring_decompose(&f).unwrap();
        dec.components[0].g = HomPoly::constant(2, q(2));
        assert!(!verify_decomposition(&dec, &f));
    }

    #[test]
    fn three_variable_reduction() {
        // (x1 + x2)^4 + (x2 - x3)^4 has two essential variables
        let f = Form::power_of_linear(&[q(1), q(1), q(0)], 4)
            .add(&Form::power_of_linear(&[q(0), q(1), q(-1)], 4))
            .unwrap();
        let dec = decompose_form(&f).unwrap();
        assert_eq!(dec.kind, DecompositionKind::Waring);
        assert_eq!(dec.components.len(), 2);
        assert!(verify_decomposition(&dec, &f));
        let e = dec.embedding.as_ref().unwrap();
        assert_eq!((e.lift.rows(), e.lift.cols()), (3, 2));
        assert_eq!((e.project.rows(), e.project.cols()), (2, 3));
    }
}
