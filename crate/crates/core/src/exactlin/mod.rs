//! Exact dense linear algebra over the rationals and prime fields.

mod field;
mod matrix;

pub use field::{is_prime, Field, FieldSpec, PrimeField, Rationals};
pub use matrix::{quotient_basis, Matrix, Quotient, Solution, Subspace};
