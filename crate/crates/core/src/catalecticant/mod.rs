//! Numeric and generic catalecticant matrices and their minors.

mod matrix;
mod minors;

pub use matrix::{build_cat, build_generic_cat, CatalecticantMatrix, SymbolicCatalecticant};
pub use minors::{
    combinations, differentiate_minor, emit_minors, evaluate_minor, jacobian_matrix,
    jacobian_rank, GeneratorBlock, GeneratorSet, Minor, MinorPolynomial, MAX_MINOR_SIZE,
};

pub(crate) use matrix::{cat_rank, catalecticant_unchecked};
