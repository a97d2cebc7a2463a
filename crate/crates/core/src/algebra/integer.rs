//! Integer elimination for rank tests.
//!
//! Scaling a row by a nonzero constant leaves the rank alone, so rational
//! rows are brought to a common denominator and the elimination runs over
//! `BigInt`, where Bareiss division is exact and no gcds are taken.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::ExactField;

/// `values` scaled by the lcm of their denominators, and that lcm.
pub(crate) fn clear_denominators<T: ExactField>(values: &[T]) -> (Vec<BigInt>, BigInt) {
    let big: Vec<_> = values.iter().map(|v| v.to_big()).collect();
    let lcm = big
        .iter()
        .filter(|v| !v.is_zero())
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scaled = big
        .into_iter()
        .map(|v| {
            if v.is_zero() {
                BigInt::zero()
            } else {
                v.numer() * (&lcm / v.denom())
            }
        })
        .collect();
    (scaled, lcm)
}

/// Rank of a row-major integer matrix; `a` is overwritten.
pub(crate) fn integer_rank(a: &mut [BigInt], rows: usize, cols: usize) -> usize {
    let mut prev = BigInt::one();
    let mut rank = 0;
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
        }
        let pivot = a[rank * cols + c].clone();
        let (head, tail) = a.split_at_mut((rank + 1) * cols);
        let pivot_row = &head[rank * cols..];
        for row in tail.chunks_mut(cols) {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                if factor.is_zero() || pivot_row[j].is_zero() {
                    if row[j].is_zero() {
                        continue;
                    }
                    row[j] = &pivot * &row[j] / &prev;
                } else {
                    row[j] = (&pivot * &row[j] - &factor * &pivot_row[j]) / &prev;
                }
            }
        }
        prev = pivot;
        rank += 1;
    }
    rank
}
