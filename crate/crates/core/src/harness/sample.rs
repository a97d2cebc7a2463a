//! Seeded constructions of forms in the families studied here.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::rng::SplitMix64;
use crate::apolarity::hilbert_sequence;
use crate::catalecticant::cat_rank;
use crate::forms::{enumerate_monomials, substitute, Form, HomPoly};
use crate::varieties::t2s_sequence;
use crate::{CatError, ExactField, ExactMatrix, Result};

const MAX_ATTEMPTS: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleFamily {
    /// `L^d`.
    Power,
    /// `L_1^d + .. + L_r^d` with pairwise nonproportional `L_k`.
    Ps(usize),
    /// `L_1 L_2^(d-1)`.
    Tangent,
    /// `G_1 L_1^(d-d_1+1) + G_2 L_2^(d-d_2+1)`, `d_1 + d_2 = s`, moved off
    /// the coordinate plane and retried until `H(A_f) = T_{2,s}`.
    Gor(usize),
    /// Dense random coefficients.
    Generic,
    /// A dense form in exactly `r` essential variables.
    Vr(usize),
}

impl fmt::Display for SampleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampleFamily::Power => write!(f, "power"),
            SampleFamily::Ps(r) => write!(f, "ps:{r}"),
            SampleFamily::Tangent => write!(f, "tangent"),
            SampleFamily::Gor(s) => write!(f, "gor:{s}"),
            SampleFamily::Generic => write!(f, "generic"),
            SampleFamily::Vr(r) => write!(f, "vr:{r}"),
        }
    }
}

impl FromStr for SampleFamily {
    type Err = CatError;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (s, None),
        };
        let num = || -> Result<usize> {
            arg.ok_or_else(|| CatError::Parse(format!("family {name} needs a parameter")))?
                .parse()
                .map_err(|_| CatError::Parse(format!("bad family parameter in {s}")))
        };
        match name {
            "power" => Ok(SampleFamily::Power),
            "ps" => Ok(SampleFamily::Ps(num()?)),
            "tangent" => Ok(SampleFamily::Tangent),
            "gor" => Ok(SampleFamily::Gor(num()?)),
            "generic" => Ok(SampleFamily::Generic),
            "vr" => Ok(SampleFamily::Vr(num()?)),
            _ => Err(CatError::Parse(format!("unknown sample family {s}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub family: SampleFamily,
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub coeff_bound: i64,
}

impl SampleSpec {
    pub fn new(family: SampleFamily, n: usize, d: usize, seed: u64) -> Self {
        Self {
            family,
            n,
            d,
            seed,
            coeff_bound: 10,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(CatError::Precondition(msg));
        if self.n == 0 || self.d == 0 {
            return bad("n and d must be positive".into());
        }
        if self.coeff_bound < 1 {
            return bad("coefficient bound must be positive".into());
        }
        match self.family {
            SampleFamily::Ps(0) | SampleFamily::Vr(0) => bad("r must be positive".into()),
            SampleFamily::Ps(r) if self.n == 1 && r > 1 => {
                bad("distinct linear forms need n >= 2".into())
            }
            SampleFamily::Tangent if self.n < 2 => bad("tangent family needs n >= 2".into()),
            SampleFamily::Tangent if self.d < 2 => bad("tangent family needs d >= 2".into()),
            SampleFamily::Gor(s) if self.n < 2 || s < 2 || 2 * s > self.d + 2 => bad(format!(
                "gor:{s} needs n >= 2 and 2 <= s with 2s <= d + 2"
            )),
            SampleFamily::Vr(r) if r > self.n => bad(format!("vr:{r} needs r <= n")),
            _ => Ok(()),
        }
    }
}

/// Deterministic sample for `spec`.
pub fn sample<T: ExactField>(spec: &SampleSpec) -> Result<Form<T>> {
    spec.validate()?;
    let mut rng = SplitMix64::new(spec.seed);
    let (n, d, b) = (spec.n, spec.d, spec.coeff_bound);
    for _ in 0..MAX_ATTEMPTS {
        let candidate = match spec.family {
            SampleFamily::Power => Some(Form::power_of_linear(&linear(&mut rng, n, b), d)),
            SampleFamily::Ps(r) => {
                let ls = distinct_linears(&mut rng, n, r, b);
                independent_enough(&ls, n).then(|| sum_of_powers(&ls, d))
            }
            SampleFamily::Tangent => {
                let ls = distinct_linears(&mut rng, n, 2, b);
                Some(tangent(&ls[0], &ls[1], d))
            }
            SampleFamily::Gor(s) => gor(&mut rng, n, d, s, b)?,
            SampleFamily::Generic => Some(dense(&mut rng, n, d, b)),
            SampleFamily::Vr(r) => {
                let g = dense::<T>(&mut rng, r, d, b).embed(n)?;
                let f = substitute(&g, &unimodular(&mut rng, n))?;
                (cat_rank(&f, 1) == r).then_some(f)
            }
        };
        if let Some(f) = candidate {
            if !f.is_zero() {
                return Ok(f);
            }
        }
    }
    Err(CatError::Invalid(format!(
        "no {} sample found after {MAX_ATTEMPTS} attempts",
        spec.family
    )))
}

fn int<T: ExactField>(rng: &mut SplitMix64, b: i64) -> T {
    T::from_int(rng.range(-b, b))
}

/// Random nonzero linear form.
pub fn linear<T: ExactField>(rng: &mut SplitMix64, n: usize, b: i64) -> Vec<T> {
    loop {
        let l: Vec<T> = (0..n).map(|_| int(rng, b)).collect();
        if l.iter().any(|c| !c.is_zero()) {
            return l;
        }
    }
}

fn proportional<T: ExactField>(a: &[T], b: &[T]) -> bool {
    (0..a.len()).all(|i| {
        (i + 1..a.len()).all(|j| a[i].clone() * b[j].clone() == a[j].clone() * b[i].clone())
    })
}

/// `r` pairwise nonproportional linear forms.
pub fn distinct_linears<T: ExactField>(rng: &mut SplitMix64, n: usize, r: usize, b: i64) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = Vec::with_capacity(r);
    while out.len() < r {
        let l = linear(rng, n, b);
        if out.iter().all(|m| !proportional(m, &l)) {
            out.push(l);
        }
    }
    out
}

/// The span of the forms has dimension `min(r, n)`.
fn independent_enough<T: ExactField>(ls: &[Vec<T>], n: usize) -> bool {
    let m = ExactMatrix::new(ls.len(), n, ls.iter().flatten().cloned().collect())
        .expect("rows of length n");
    m.rank() == ls.len().min(n)
}

fn sum_of_powers<T: ExactField>(ls: &[Vec<T>], d: usize) -> Form<T> {
    let n = ls[0].len();
    ls.iter().fold(Form::zero(n, d), |acc, l| {
        acc.add(&Form::power_of_linear(l, d)).expect("same shape")
    })
}

fn tangent<T: ExactField>(l1: &[T], l2: &[T], d: usize) -> Form<T> {
    let p = HomPoly::linear(l1)
        .mul(&HomPoly::linear(l2).pow(d - 1))
        .expect("same variable count");
    Form::from_monomial(&p)
}

/// Dense form with integer divided-basis coefficients.
fn dense<T: ExactField>(rng: &mut SplitMix64, n: usize, d: usize, b: i64) -> Form<T> {
    let terms: Vec<_> = enumerate_monomials(n, d)
        .into_iter()
        .map(|w| (w, int(rng, b)))
        .collect();
    Form::from_divided(n, d, terms).expect("degree-d monomials")
}

/// Integer matrix of determinant 1, a product of elementary row operations.
pub fn unimodular<T: ExactField>(rng: &mut SplitMix64, n: usize) -> ExactMatrix<T> {
    let mut m = ExactMatrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..2 * n {
        let i = rng.range_usize(0, n - 1);
        let mut j = rng.range_usize(0, n - 2);
        if j >= i {
            j += 1;
        }
        let c: T = T::from_int(if rng.below(2) == 0 { -1 } else { 1 });
        for k in 0..n {
            let v = m.get(i, k).clone() + c.clone() * m.get(j, k).clone();
            m.set(i, k, v);
        }
    }
    m
}

fn gor<T: ExactField>(
    rng: &mut SplitMix64,
    n: usize,
    d: usize,
    s: usize,
    b: i64,
) -> Result<Option<Form<T>>> {
    let d1 = rng.range_usize(1, s - 1);
    let blocks = [d1, s - d1];
    let ls = distinct_linears::<T>(rng, 2, 2, b);
    let mut acc = HomPoly::zero(2, d);
    for (l, &m) in ls.iter().zip(&blocks) {
        let g = dense::<T>(rng, 2, m - 1, b).to_monomial();
        let term = g.mul(&HomPoly::linear(l).pow(d - m + 1))?;
        acc = acc.add(&term)?;
    }
    let binary = Form::from_monomial(&acc);
    if binary.is_zero() {
        return Ok(None);
    }
    let f = substitute(&binary.embed(n)?, &unimodular(rng, n))?;
    let target = t2s_sequence(d, s)?;
    Ok((hilbert_sequence(&f)?.0 == target.0).then_some(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::varieties::{member_gor_leq, member_ps2};
    use crate::Rational;

    fn spec(family: SampleFamily, n: usize, d: usize, seed: u64) -> SampleSpec {
        SampleSpec::new(family, n, d, seed)
    }

    #[test]
    fn power_has_rank_one() {
        let f: Form<Rational> = sample(&spec(SampleFamily::Power, 3, 4, 1)).unwrap();
        assert_eq!(cat_rank(&f, 1), 1);
    }

    #[test]
    fn families_satisfy_their_predicates() {
        for seed in 0..10 {
            let f: Form<Rational> = sample(&spec(SampleFamily::Ps(2), 3, 5, seed)).unwrap();
            assert!(member_ps2(&f).unwrap());
            let t: Form<Rational> = sample(&spec(SampleFamily::Tangent, 4, 4, seed)).unwrap();
            assert!(member_ps2(&t).unwrap());
            let g: Form<Rational> = sample(&spec(SampleFamily::Gor(3), 3, 6, seed)).unwrap();
            assert!(member_gor_leq(&g, 3).unwrap());
            let v: Form<Rational> = sample(&spec(SampleFamily::Vr(2), 4, 4, seed)).unwrap();
            assert_eq!(cat_rank(&v, 1), 2);
        }
    }

    #[test]
    fn deterministic() {
        let s = spec(SampleFamily::Generic, 3, 4, 42);
        let a: Form<Rational> = sample(&s).unwrap();
        let b: Form<Rational> = sample(&s).unwrap();
        assert_eq!(a, b);
        let c: Form<Rational> = sample(&spec(SampleFamily::Generic, 3, 4, 43)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn impossible_specs() {
        assert!(sample::<Rational>(&spec(SampleFamily::Tangent, 1, 4, 0)).is_err());
        assert!(sample::<Rational>(&spec(SampleFamily::Gor(3), 3, 3, 0)).is_err());
        assert!(sample::<Rational>(&spec(SampleFamily::Vr(4), 3, 4, 0)).is_err());
        assert!(sample::<Rational>(&spec(SampleFamily::Ps(0), 3, 4, 0)).is_err());
    }

    #[test]
    fn unimodular_has_unit_determinant() {
        let mut rng = SplitMix64::new(5);
        for n in 1..5 {
            let m: ExactMatrix<Rational> = unimodular(&mut rng, n);
            assert_eq!(m.determinant().unwrap(), Rational::from_int(1));
        }
    }

    #[test]
    fn family_names() {
        for name in ["power", "ps:3", "tangent", "gor:2", "generic", "vr:2"] {
            let f: SampleFamily = name.parse().unwrap();
            assert_eq!(f.to_string(), name);
        }
        assert!("ps".parse::<SampleFamily>().is_err());
    }
}
