//! The doubly-periodic Barnes zeta function
//! `zeta(s, a, b, c) = sum_{m,n} (a + i b m + c n)^(-s)`.

mod continuation;
mod derivative;
mod direct;
mod integers;
mod params;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use continuation::{
    eval, eval_integral_lt1, eval_parts_chain, eval_with, Route, CHAIN_POLE_GAP, INTEGER_SNAP,
    LT1_GAP,
};
pub use derivative::{
    deriv_at_neg_int, deriv_at_neg_one_closed, deriv_at_neg_two_closed, deriv_at_zero,
    deriv_at_zero_forms, integral_i, integral_j, DerivZeroForms,
};
pub use direct::{direct_sum, direct_sum_raw, DIRECT_SUM_MARGIN};
pub use integers::{log_ratio_tracked, value_at_int, LOG_RATIO_TOL};
pub use params::{reduce_parameters, reduce_parameters_with, ReducedParams, TorusParams};

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    DirectSum,
    IntegralLt1,
    PartsChain,
    ClosedInteger,
    ClosedS1,
    ZeroNonpositive,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::DirectSum => "direct_sum",
            Method::IntegralLt1 => "integral_lt1",
            Method::PartsChain => "parts_chain",
            Method::ClosedInteger => "closed_integer",
            Method::ClosedS1 => "closed_s1",
            Method::ZeroNonpositive => "zero_nonpositive",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalResult {
    pub value: Complex64,
    pub method: Method,
    pub abs_err: f64,
}
