//! Dense bit-packed linear algebra over F_2.
//!
//! Bit `i` of a vector is stored in word `i / 64` at bit position `i % 64`.
//! Matrices are row-major; elimination is plain Gaussian elimination with
//! word-wide xor and first-row pivot selection.

mod bitvec;
mod echelon;
mod matrix;

pub use bitvec::BitVector;
pub use echelon::Echelon;
pub use matrix::{BitMatrix, Solution};
