//! Exact linear algebra over ℚ and 𝔽_p.

mod echelon;
mod matrix;
mod scalar;
mod solve;

pub use echelon::{quotient_basis, Echelon, Quotient, SparseRow};
pub use matrix::{vec_to_strings, DenseMatrix};
pub use scalar::{is_prime, Field, Scalar, MAX_MODULUS};
pub use solve::{solve_affine, AffineSolutionSet, LinearSystem};

/// Exact vector equality helper used by validators.
pub(crate) fn all_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}
