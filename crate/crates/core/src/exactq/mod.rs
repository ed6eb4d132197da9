//! Exact rational scalars, vectors and matrices, and the linear-algebra
//! kernel (rank, row reduction, kernels, Hermite normal form) used by every
//! other module.

mod hnf;
mod matrix;
mod rational;

pub use hnf::{hnf, integer_kernel, Hermite, IntMatrix};
pub use matrix::{canonical_basis, same_span, span_rank, RatMatrix};
pub use rational::{
    common_denominator, dot, format_rational, format_vec, frac, from_int, is_zero_vec,
    leading_sign, parse_rational, parse_vec, primitive, primitive_integer, rat, round_half_up,
    to_rational_vec, Rational,
};

/// Rank of `m` over the rationals.
pub fn rank(m: &RatMatrix) -> usize {
    m.rank()
}

/// Basis of the left kernel `{x : xᵀ m = 0}` in reduced echelon form.
pub fn left_kernel_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    m.left_kernel_basis()
}

/// A solution of `m x = b` (free variables zero), or `None`.
pub fn solve(m: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    m.solve(b)
}
