//! Dense complex matrices, matrix-coefficient polynomials and block solves.

mod block;
mod json;
mod matrix;
mod poly;
mod sum;

pub use block::{block_norm, BlockMatrix, BlockSolution, REFUSE_CONDITION, RESIDUAL_CONSTANT, WARN_CONDITION};
pub use json::{MatrixJson, PolyJson};
pub use matrix::{CMatrix, PREDICATE_TOL};
pub use poly::MatPoly;
pub use sum::MatrixAccumulator;

use num_complex::Complex64;

pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `2πi`.
pub fn two_pi_i() -> Complex64 {
    Complex64::new(0.0, 2.0 * std::f64::consts::PI)
}
