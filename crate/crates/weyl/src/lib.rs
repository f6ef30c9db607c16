//! Exact arithmetic for linear differential operators with polynomial
//! coefficients.
//!
//! The ring is generated by `x` and the derivation `D` subject to
//! `Dx = xD + 1`; every element has a canonical form with all `x` powers
//! to the left of all `D` powers. The crate provides:
//!
//! - exact coefficient fields (arbitrary-precision rationals, prime
//!   fields) in [`field`];
//! - dense polynomial arithmetic with subquadratic kernels, Taylor
//!   shifts, and falling-factorial transforms in [`poly`];
//! - Hermite evaluation and interpolation on cached subproduct trees in
//!   [`hermite`];
//! - exact dense and block-diagonal matrices with Strassen
//!   multiplication in [`matrix`];
//! - canonical operators, the naive rewrite oracle, evaluation matrices
//!   at monomial and exponential-polynomial bases, fast reflection, and
//!   the multiplication dispatcher in [`op`], [`evalmat`], [`reflect`],
//!   and [`mul`];
//! - a deterministic sampler for reproducible verification in
//!   [`sample`].

pub mod error;
pub mod evalmat;
pub mod field;
pub mod hermite;
pub mod matrix;
pub mod mul;
mod ntt;
pub mod op;
pub mod poly;
pub mod reflect;
pub mod sample;
pub mod text;

pub use error::{Result, WeylError};
pub use evalmat::{
    block_eval_matrix, eval_matrix, eval_matrix_padded, operator_from_block_eval_matrix,
    operator_from_eval_matrix, truncated_conjugates, BlockEvalPlan, EvalMatrix,
};
pub use field::{Factorials, FieldDescriptor, FieldElement};
pub use hermite::{hermite_evaluate, hermite_interpolate, HermitePlan, HermiteSpec, HermiteValues};
pub use matrix::{block_mul, mat_mul, mat_mul_with_threshold, BlockDiagonalMatrix, Matrix};
pub use mul::MulOptions;
pub use op::DiffOperator;
pub use poly::{falling_to_values, values_to_falling, MulKernel, Polynomial};
pub use sample::Sampler;
