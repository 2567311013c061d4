//! Exact arithmetic: rationals, quadratic extensions, matrices, polynomials.

pub mod cyclotomic;
pub mod hnf;
pub mod matrix;
pub mod poly;
pub mod quad;
pub mod rat;

pub use matrix::{IntMatrix, Matrix, RatMatrix};
pub use poly::{char_poly, IntPoly, Poly, RatPoly};
pub use quad::QuadElem;
pub use rat::Rat;
