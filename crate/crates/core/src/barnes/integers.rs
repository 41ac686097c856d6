//! Values at positive integers from the log-derivatives of theta1.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::params::ReducedParams;
use super::{EvalResult, Method};
use crate::error::{Error, Result};
use crate::specfun::{log_theta1_deriv, theta1};

/// Allowed distance between the tracked logarithm and `-i pi`.
pub const LOG_RATIO_TOL: f64 = 1e-10;

/// Largest phase step accepted while tracking `arg theta1` along a path.
const MAX_PHASE_STEP: f64 = 0.5;

/// `zeta(n)` for a positive integer `n`.
///
/// For `n >= 2` this is
/// `(-1)^(n+1) (pi/c)^n / (n-1)! * (ln theta1)^(n)(pi A)`.
/// For `n = 1` it is `(pi/c) (ln theta1)'(pi A) - L / c` with
/// `L = ln[theta1(pi (1 + A)) / theta1(pi A)]` taken continuously in `y`;
/// the tracked `L` must equal `-i pi`.
pub fn value_at_int(n: u32, rp: &ReducedParams) -> Result<EvalResult> {
    if n == 0 {
        return Err(Error::InvalidParameter("value_at_int needs n >= 1".into()));
    }
    let z = PI * rp.a_over_c();
    let d = log_theta1_deriv(n as usize, z, rp.ctx())?;
    let scale = PI / rp.c();
    if n == 1 {
        let tracked = log_ratio_tracked(rp)?;
        let exact = Complex64::new(0.0, -PI);
        let diff = (tracked - exact).norm();
        if diff > LOG_RATIO_TOL {
            return Err(Error::Inconsistent {
                what: "value_at_int(1) log ratio",
                diff,
            });
        }
        let value = scale * d - exact / rp.c();
        return Ok(EvalResult {
            value,
            method: Method::ClosedS1,
            abs_err: 16.0 * f64::EPSILON * (scale * d.norm() + PI / rp.c()),
        });
    }
    let mut coef = scale.powi(n as i32);
    for k in 1..n {
        coef /= k as f64;
    }
    if n.is_multiple_of(2) {
        coef = -coef;
    }
    let value = coef * d;
    Ok(EvalResult {
        value,
        method: Method::ClosedInteger,
        abs_err: 16.0 * f64::EPSILON * n as f64 * value.norm(),
    })
}

/// `ln theta1(pi (y + A))` from `y = 0` to `y = 1`, continued along the path
/// by accumulating phase increments of `theta1`.
pub fn log_ratio_tracked(rp: &ReducedParams) -> Result<Complex64> {
    let ctx = rp.ctx();
    let at = |y: f64| theta1(PI * (Complex64::new(y, 0.0) + rp.a_over_c()), ctx);
    let start = at(0.0)?;
    let end = at(1.0)?;

    let mut phase: f64 = 0.0;
    let mut y: f64 = 0.0;
    let mut prev = start;
    let mut step: f64 = 1.0 / 64.0;
    while y < 1.0 {
        let next_y = (y + step).min(1.0);
        let next = at(next_y)?;
        let delta = (next / prev).arg();
        if delta.abs() > MAX_PHASE_STEP && step > 1e-12 {
            step *= 0.5;
            continue;
        }
        phase += delta;
        prev = next;
        y = next_y;
        step = (step * 2.0).min(1.0 / 64.0);
    }
    Ok(Complex64::new((end.norm() / start.norm()).ln(), phase))
}
