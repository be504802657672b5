//! Exact field arithmetic and exact linear algebra.

mod matrix;
mod scalar;

pub use matrix::{axpy_row, rank, rank_of_rows, rref, Echelon, ExactMatrix, Rref, SparseRow};
pub use scalar::{field_op, is_prime, Field, FieldOp, Scalar, DEFAULT_PRIME};
