//! Exact catalecticant toolkit.
//!
//! Homogeneous forms are stored in the divided-power basis
//! `X^(U) = x^U / U!`, on which the differential action of
//! `R = k[y_1, .., y_n]` is a plain exponent shift. Everything in this
//! crate is exact: linear algebra runs over an [`ExactField`], which in
//! practice means [`Rational`] (arbitrary precision) or one of the
//! fixed-width rational aliases below for small experiments.
//!
//! Module map:
//!
//! * [`algebra`]: dense exact matrices, Bareiss rank and determinant, kernels.
//! * [`forms`]: multi-indices, forms, polynomials in `R`, contraction, substitution.
//! * [`catalecticant`]: numeric and symbolic catalecticants, minor generators, Jacobians.
//! * [`apolarity`]: apolar ideal slices, Hilbert sequences, tangent spaces.
//! * [`varieties`]: membership tests, classification, dimension formulas, singular loci.
//! * [`binary`]: binary forms, apolar generators, Waring and generalized additive decompositions.
//! * [`harness`]: seeded samplers, property suites, file formats.

pub mod algebra;
pub mod apolarity;
pub mod binary;
pub mod catalecticant;
mod error;
pub mod forms;
pub mod harness;
mod scalar;
pub mod varieties;

pub use error::{CatError, Result};
pub use scalar::ExactField;

pub use algebra::ExactMatrix;
pub use apolarity::{GradedSubspace, HilbertSequence};
pub use binary::{Decomposition, DecompositionKind};
pub use catalecticant::{CatalecticantMatrix, GeneratorSet, MinorPolynomial};
pub use forms::{Basis, Form, HomPoly, MultiIndex, RPoly};
pub use varieties::{Family, Ps2Class, Ps2Tag, SequenceT};

/// Arbitrary-precision rationals; the default scalar everywhere.
pub type Rational = num_rational::BigRational;

/// Rationals over `i64`. Fast, but overflow panics, so only for tiny inputs.
pub type Rational64 = num_rational::Ratio<i64>;

/// Rationals over `i128`.
pub type Rational128 = num_rational::Ratio<i128>;

pub type RationalMatrix = ExactMatrix<Rational>;
pub type RationalForm = Form<Rational>;
pub type RationalPoly = RPoly<Rational>;
