use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, Num, Signed};

/// A field with exact arithmetic.
///
/// Rank and kernel decisions test entries for exact zero, so floating
/// point types deliberately do not implement this.
pub trait ExactField:
    Clone + Debug + Display + PartialEq + Num + Signed + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self;

    fn from_usize(v: usize) -> Self {
        Self::from_int(i64::try_from(v).expect("usize fits in i64"))
    }

    /// `Some(v)` when the value is an integer fitting in `i64`.
    fn to_int(&self) -> Option<i64>;

    /// The same value as an arbitrary-precision rational.
    fn to_big(&self) -> BigRational;

    /// `None` when the value does not fit the backing integer type.
    fn from_big(v: &BigRational) -> Option<Self>;
}

impl<I> ExactField for Ratio<I>
where
    I: Clone
        + Integer
        + Signed
        + FromPrimitive
        + num_traits::ToPrimitive
        + Debug
        + Display
        + Send
        + Sync
        + Into<BigInt>
        + TryFrom<BigInt>
        + 'static,
{
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(I::from_i64(v).expect("integer fits the backing type"))
    }

    fn to_int(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    fn to_big(&self) -> BigRational {
        BigRational::new_raw(self.numer().clone().into(), self.denom().clone().into())
    }

    fn from_big(v: &BigRational) -> Option<Self> {
        let n = I::try_from(v.numer().clone()).ok()?;
        let d = I::try_from(v.denom().clone()).ok()?;
        Some(Ratio::new_raw(n, d))
    }
}
