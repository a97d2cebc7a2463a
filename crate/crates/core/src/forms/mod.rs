//! Multi-indices, the divided-power basis, and the differential action.

mod form;
mod multi_index;
mod poly;

pub use form::{contract, substitute, Basis, Form};
pub use multi_index::{binomial, enumerate_monomials, graded_dim, MonomialBasis, MultiIndex};
pub use poly::{HomPoly, RPoly};
