//! Dense univariate polynomials over `BigRational`, enough to split binary
//! forms into rational linear factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct UniPoly {
    c: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Self { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.c.last().expect("nonzero polynomial")
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn div_rem(&self, other: &Self) -> (Self, Self) {
        let dd = other.degree().expect("division by zero polynomial");
        let mut rem = self.c.clone();
        let mut quot = vec![BigRational::zero(); self.c.len().saturating_sub(dd)];
        let lead = other.lead();
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let factor = rem.last().expect("nonempty") / lead;
            for (j, c) in other.c.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &factor * c;
            }
            quot[k] = factor;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    fn monic(&self) -> Self {
        let lead = self.lead().clone();
        Self::new(self.c.iter().map(|c| c / &lead).collect())
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Scaled to coprime integer coefficients.
    fn primitive(&self) -> Vec<BigInt> {
        let lcm = self
            .c
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .c
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        ints.into_iter().map(|v| v / &g).collect()
    }

    fn neg(&self) -> Self {
        Self::new(self.c.iter().map(|c| -c).collect())
    }
}

fn sign(v: &BigRational) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    while !chain.last().expect("nonempty").is_zero() {
        let k = chain.len();
        let (_, r) = chain[k - 2].div_rem(&chain[k - 1]);
        chain.push(r.neg());
    }
    chain.pop();
    chain
}

fn variations(chain: &[UniPoly], x: &BigRational) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|p| sign(&p.eval(x)))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// The rational with the smallest denominator in `[lo, hi]`.
fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    if !lo.is_positive() && !hi.is_negative() {
        return BigRational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    if lo.is_integer() {
        return lo.clone();
    }
    let fl = lo.floor();
    let up = &fl + BigRational::one();
    if up <= *hi {
        return up;
    }
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

/// Distinct rational roots of `p` with multiplicities, ascending.
pub(crate) fn rational_roots(p: &UniPoly) -> Vec<(BigRational, usize)> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let g = p.gcd(&p.derivative());
    let (sqfree, _) = p.div_rem(&g);
    let ints = sqfree.primitive();
    let sq = UniPoly::new(ints.iter().cloned().map(BigRational::from_integer).collect());
    let lead = BigRational::from_integer(ints.last().expect("nonzero").abs());
    // any two rationals with denominators dividing the leading coefficient
    // are at least 1/lead^2 apart
    let width = (&lead * &lead).recip();
    let bound = {
        let top = sq.lead().abs();
        let m = sq.c[..sq.c.len() - 1]
            .iter()
            .map(|c| c.abs() / &top)
            .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
        m + BigRational::from_integer(BigInt::from(2))
    };
    let chain = sturm_chain(&sq);
    let mut found = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let count = variations(&chain, &lo) - variations(&chain, &hi);
        if count == 0 {
            continue;
        }
        if &hi - &lo < width {
            let cand = simplest_between(&lo, &hi);
            if sq.eval(&cand).is_zero() && !found.contains(&cand) {
                found.push(cand);
            }
            continue;
        }
        let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    found.sort();
    found
        .into_iter()
        .map(|t| {
            let lin = UniPoly::new(vec![-t.clone(), BigRational::one()]);
            let mut q = p.clone();
            let mut m = 0;
            loop {
                let (quot, rem) = q.div_rem(&lin);
                if !rem.is_zero() {
                    break;
                }
                q = quot;
                m += 1;
            }
            (t, m)
        })
        .collect()
}

/// Whether `p` has a repeated complex root.
pub(crate) fn has_repeated_root(p: &UniPoly) -> bool {
    p.gcd(&p.derivative()).degree().is_some_and(|d| d > 0)
}
