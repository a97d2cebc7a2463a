//! Exact dense linear algebra.

mod integer;
mod matrix;

pub(crate) use integer::{clear_denominators, integer_rank};
pub use matrix::{ExactMatrix, Rref};
