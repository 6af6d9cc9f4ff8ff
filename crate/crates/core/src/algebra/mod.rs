//! Polynomials and matrices over GF(2^m).

mod matrix;
mod poly;

pub use matrix::Matrix;
pub use poly::Poly;
