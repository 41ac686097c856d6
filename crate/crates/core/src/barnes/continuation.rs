//! Analytic continuation through the Hurwitz-zeta / log-theta integral.
//!
//! With `g(y) = ln theta1(pi (y + A))` the function is
//! `sin(pi s)/pi * c^(-s) * (I0(s) + H(s))`, where
//! `I0 = int_0^1 y^(-s) g'(y) dy` carries the endpoint singularity and
//! `H = int_0^1 zeta_H(s, y + 1) g'(y) dy` is regular for `s != 1`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::direct::direct_sum;
use super::integers::value_at_int;
use super::params::ReducedParams;
use super::{EvalResult, Method};
use crate::error::{Error, Result};
use crate::quadrature::{try_integrate, try_integrate_endpoint_power, QuadResult};
use crate::specfun::{hurwitz_zeta_with, log_theta1_deriv};

/// Distance below which `s` is treated as an integer.
pub const INTEGER_SNAP: f64 = 1e-9;
/// `Re s < 1 - LT1_GAP` is served by the direct integral.
pub const LT1_GAP: f64 = 1e-3;
/// Required distance of `s` from the poles `1, ..., n_parts` of the chain.
pub const CHAIN_POLE_GAP: f64 = 1e-6;

/// Evaluation route selected by [`eval_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Route {
    #[default]
    Auto,
    DirectSum,
    Integral,
    Parts,
}

/// `j`-th derivative of `g(y) = ln theta1(pi (y + A))`.
pub(crate) fn g_deriv(rp: &ReducedParams, j: usize, y: f64) -> Result<Complex64> {
    let z = PI * (Complex64::new(y, 0.0) + rp.a_over_c());
    Ok(PI.powi(j as i32) * log_theta1_deriv(j, z, rp.ctx())?)
}

fn taylor_at_zero(rp: &ReducedParams, first: usize, count: usize) -> Result<Vec<Complex64>> {
    (first..first + count)
        .map(|j| g_deriv(rp, j, 0.0))
        .collect()
}

fn prefactor(s: Complex64, c: f64) -> Complex64 {
    (PI * s).sin() / PI * (-s * c.ln()).exp()
}

/// Quadrature tolerance for the bracket once multiplied by the prefactor.
fn inner_tol(tol: f64, prefactor: Complex64) -> f64 {
    let p = prefactor.norm();
    if p > 0.0 {
        (tol / p).min(1e-3)
    } else {
        tol.min(1e-3)
    }
}

/// `int_0^1 zeta_H(s, y+1) g'(y) dy`
fn regular_part(s: Complex64, rp: &ReducedParams, tol: f64) -> Result<QuadResult> {
    let trunc = *rp.trunc();
    try_integrate(
        |y| Ok(hurwitz_zeta_with(s, y + 1.0, &trunc)? * g_deriv(rp, 1, y)?),
        0.0,
        1.0,
        tol,
    )
}

fn assemble(p: Complex64, parts: &[QuadResult], method: Method) -> EvalResult {
    let bracket: Complex64 = parts.iter().map(|q| q.value).sum();
    let quad_err: f64 = parts.iter().map(|q| q.abs_err).sum();
    let spread: f64 = parts.iter().map(|q| q.value.norm()).sum();
    EvalResult {
        value: p * bracket,
        method,
        abs_err: p.norm() * (quad_err + 8.0 * f64::EPSILON * spread),
    }
}

/// Continued value for `Re s < 1`:
/// `sin(pi s)/pi c^(-s) int_0^1 zeta_H(s, y) d/dy ln theta1(pi (y + A)) dy`,
/// with `zeta_H(s, y) = y^(-s) + zeta_H(s, y+1)` split off so that the
/// `y^(-s)` endpoint behaviour is integrated on a graded mesh.
pub fn eval_integral_lt1(s: Complex64, rp: &ReducedParams, tol: f64) -> Result<EvalResult> {
    check_tol(tol)?;
    if !(s.re < 1.0) {
        return Err(Error::Domain {
            what: "eval_integral_lt1",
            detail: format!("needs Re s < 1, got s = {s}"),
        });
    }
    let p = prefactor(s, rp.c());
    let qtol = 0.5 * inner_tol(tol, p);
    let taylor = taylor_at_zero(rp, 1, 4)?;
    let singular = try_integrate_endpoint_power(-s, |y| g_deriv(rp, 1, y), &taylor, qtol)?;
    let regular = regular_part(s, rp, qtol)?;
    Ok(assemble(p, &[singular, regular], Method::IntegralLt1))
}

/// Continuation to `Re s < n_parts + 1` by repeated partial integration of
/// `I0`: with `T_j = int_0^1 y^(j-s) g^(j+1)(y) dy`,
/// `T_j = (g^(j+1)(1) - T_{j+1}) / (j + 1 - s)` and `I0 = T_0`.
pub fn eval_parts_chain(
    s: Complex64,
    rp: &ReducedParams,
    n_parts: usize,
    tol: f64,
) -> Result<EvalResult> {
    check_tol(tol)?;
    if n_parts == 0 {
        return Err(Error::InvalidParameter(
            "parts chain needs at least one partial integration".into(),
        ));
    }
    if !(s.re < n_parts as f64 + 1.0) {
        return Err(Error::Domain {
            what: "eval_parts_chain",
            detail: format!(
                "{n_parts} partial integrations reach Re s < {}, got s = {s}",
                n_parts + 1
            ),
        });
    }
    for k in 1..=n_parts {
        if (s - k as f64).norm() < CHAIN_POLE_GAP {
            if k == 1 {
                return Err(Error::PoleAtOne { re: s.re, im: s.im });
            }
            return Err(Error::Domain {
                what: "eval_parts_chain",
                detail: format!("s = {s} is at the integer {k}; use value_at_int"),
            });
        }
    }

    let p = prefactor(s, rp.c());
    let qtol = 0.5 * inner_tol(tol, p);
    let order = n_parts + 1;
    let taylor = taylor_at_zero(rp, order, 4)?;
    let beta = Complex64::new(n_parts as f64, 0.0) - s;
    let last = try_integrate_endpoint_power(beta, |y| g_deriv(rp, order, y), &taylor, qtol)?;

    let mut t = last.value;
    let mut t_err = last.abs_err;
    let mut spread = last.value.norm();
    for j in (0..n_parts).rev() {
        let boundary = g_deriv(rp, j + 1, 1.0)?;
        let den = (j + 1) as f64 - s;
        t = (boundary - t) / den;
        t_err /= den.norm();
        spread = (boundary.norm() + spread) / den.norm();
    }
    let chained = QuadResult {
        value: t,
        abs_err: t_err + 8.0 * f64::EPSILON * spread,
        evaluations: last.evaluations,
    };
    let regular = regular_part(s, rp, qtol)?;
    Ok(assemble(p, &[chained, regular], Method::PartsChain))
}

/// Evaluates the continued function anywhere in the plane.
///
/// Dispatch: within [`INTEGER_SNAP`] of a non-positive integer the value is
/// exactly zero; near a positive integer the closed forms are used;
/// `Re s < 1 - LT1_GAP` goes through [`eval_integral_lt1`], everything else
/// through [`eval_parts_chain`] with `max(floor(Re s), 1)` partial
/// integrations, the fewest for which `y^(n_parts - s)` is integrable.
pub fn eval(s: Complex64, rp: &ReducedParams, tol: f64) -> Result<EvalResult> {
    eval_with(s, rp, tol, Route::Auto)
}

pub fn eval_with(s: Complex64, rp: &ReducedParams, tol: f64, route: Route) -> Result<EvalResult> {
    check_tol(tol)?;
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::Domain {
            what: "eval",
            detail: "s must be finite".into(),
        });
    }
    match route {
        Route::Auto => {}
        Route::DirectSum => return direct_sum(s, rp, tol),
        Route::Integral => return eval_integral_lt1(s, rp, tol),
        Route::Parts => return eval_parts_chain(s, rp, parts_for(s), tol),
    }

    let nearest = s.re.round();
    if (s - nearest).norm() < INTEGER_SNAP {
        if nearest <= 0.0 {
            return Ok(EvalResult {
                value: Complex64::new(0.0, 0.0),
                method: Method::ZeroNonpositive,
                abs_err: 0.0,
            });
        }
        return value_at_int(nearest as u32, rp);
    }
    if s.re < 1.0 - LT1_GAP {
        eval_integral_lt1(s, rp, tol)
    } else {
        eval_parts_chain(s, rp, parts_for(s), tol)
    }
}

/// Every partial integration costs more than an order of magnitude in
/// accuracy, so the chain is kept as short as possible.
fn parts_for(s: Complex64) -> usize {
    s.re.floor().max(1.0) as usize
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )))
    }
}
