//! Evaluation of the doubly-periodic Barnes zeta function
//! `zeta(s, a, b, c) = sum_{m,n in Z} (a + i b m + c n)^(-s)`
//! on the whole complex `s`-plane, its values at positive integers, and its
//! `s`-derivative at non-positive integers.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod barnes;
pub mod error;
pub mod oracles;
pub mod quadrature;
pub mod specfun;

pub use barnes::{
    deriv_at_neg_int, deriv_at_zero, direct_sum, eval, reduce_parameters, value_at_int, EvalResult,
    Method, ReducedParams, TorusParams,
};
pub use error::{Error, Result};
pub use num_complex::Complex64;
