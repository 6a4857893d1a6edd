//! Exact arithmetic over the rationals and a few small extensions of it.
//!
//! Everything downstream (root data, matrix Lie algebras, slices, invariant
//! polynomials) is built on [`Rat`], [`RatMatrix`] and [`Poly`]. There is no
//! floating point anywhere in the crate.

mod matrix;
mod poly;
mod ring;
mod tower;

pub use matrix::{
    char_poly, det_generic, exterior_trace, lift_matrix, nullspace, principal_minor_sum, Echelon, RatMatrix,
};
pub use poly::{poly_eval, MultiPoly, Poly};
pub use ring::{elementary_symmetric, rat, rat_to_string, ri, Rat, Ring, Scalar};
pub use tower::Tower;
