//! Linear algebra over GF(2): dense bit-packed matrices for small operators
//! and a sparse column reducer for boundary matrices.

mod bitvec;
mod matrix;
pub mod sparse;

pub use bitvec::BitVec;
pub use matrix::Z2Matrix;
