//! The defining lattice sum, summed over `n` first and then over `m`.
//!
//! For each row `m` the sum over `n` of `(alpha + n)^(-s)`, with
//! `alpha = (a + i b m) / c`, is taken directly for `|n| <= N` and completed
//! with Euler-Maclaurin tails in closed form. The row sums decay like
//! `exp(-2 pi |Im alpha|)`, so the outer sum is cut with a geometric tail
//! estimate. For `Re s > 2` this is the absolutely convergent sum; for
//! `1 < Re s <= 2` it is the iterated sum, which continues it analytically.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::params::{ReducedParams, TorusParams};
use super::{EvalResult, Method};
use crate::error::{Error, Result};
use crate::specfun::{bernoulli_f64, SeriesTruncation};

/// Required distance of `Re s` above 1.
pub const DIRECT_SUM_MARGIN: f64 = 0.1;

const MAX_CORRECTIONS: usize = 60;

pub fn direct_sum(s: Complex64, rp: &ReducedParams, tol: f64) -> Result<EvalResult> {
    direct_sum_raw(s, &rp.torus(), tol, rp.trunc())
}

/// Direct sum with `a` used as given, without reduction.
pub fn direct_sum_raw(
    s: Complex64,
    p: &TorusParams,
    tol: f64,
    trunc: &SeriesTruncation,
) -> Result<EvalResult> {
    p.validate()?;
    if !(s.re > 1.0 + DIRECT_SUM_MARGIN) || !s.im.is_finite() {
        return Err(Error::Domain {
            what: "direct_sum",
            detail: format!("needs Re s > {}, got s = {s}", 1.0 + DIRECT_SUM_MARGIN),
        });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }

    let scale = (-s * p.c.ln()).exp();
    let ratio = (-2.0 * PI * p.b / p.c).exp();
    let center = -(p.a.im / p.b).floor() as i64;
    let row = |m: i64| -> RowSum {
        let alpha = Complex64::new(p.a.re, p.a.im + p.b * m as f64) / p.c;
        let mut r = row_sum(alpha, s);
        r.value *= scale;
        r.err *= scale.norm();
        r
    };

    let first = row(center);
    let mut value = first.value;
    let mut err = first.err;
    for offset in 1..=trunc.max_terms as i64 {
        let up = row(center + offset);
        let down = row(center - offset);
        value += up.value + down.value;
        err += up.err + down.err;
        let pair = up.value.norm() + down.value.norm();
        // Row sums decay at least like ratio^offset, up to a polynomial factor.
        let growth = ((offset + 1) as f64 / offset as f64).powf((s.re - 1.0).max(0.0));
        let r = ratio * growth;
        if r < 1.0 {
            let tail = 2.0 * pair * r / (1.0 - r);
            let noise = up.err + down.err;
            if offset >= 2 && (tail < 0.25 * tol || pair <= noise) {
                return Ok(EvalResult {
                    value,
                    method: Method::DirectSum,
                    abs_err: err + tail.max(noise),
                });
            }
        }
    }
    Err(Error::SeriesBudget {
        what: "direct_sum",
        max_terms: trunc.max_terms,
    })
}

struct RowSum {
    value: Complex64,
    err: f64,
}

/// `sum_{n in Z} (alpha + n)^(-s)` with principal-branch powers.
fn row_sum(alpha: Complex64, s: Complex64) -> RowSum {
    let alpha = alpha - alpha.re.round();
    let w_min = (s.norm() + 50.0) / (4.0 * PI);
    let cut = (w_min + 1.0).ceil().max(12.0) as i64;

    let mut value = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    for n in -cut..=cut {
        let t = (-s * (alpha + n as f64).ln()).exp();
        value += t;
        magnitude += t.norm();
    }

    // sum_{n >= M} (alpha + n)^(-s) and sum_{n >= M} (alpha - n)^(-s)
    let start = (cut + 1) as f64;
    let (right, right_err) = em_tail(alpha + start, s, 1.0);
    let (left, left_err) = em_tail(alpha - start, s, -1.0);
    value += right + left;
    magnitude += right.norm() + left.norm();
    RowSum {
        value,
        err: right_err + left_err + 4.0 * f64::EPSILON * magnitude,
    }
}

/// Euler-Maclaurin tail starting at `base = alpha +- M` going in direction
/// `dir`: integral, half endpoint term and Bernoulli corrections.
fn em_tail(base: Complex64, s: Complex64, dir: f64) -> (Complex64, f64) {
    let ln_base = base.ln();
    let pow = (-s * ln_base).exp();
    // integral: dir * base^(1-s) / (s-1)
    let mut total = dir * pow * base / (s - 1.0) + 0.5 * pow;
    let mut rising = s;
    let mut power = pow / base;
    let mut last = f64::INFINITY;
    for j in 1..=MAX_CORRECTIONS {
        let b = bernoulli_f64(2 * j) / factorial(2 * j);
        // -B_2j/(2j)! f^(2j-1)(M) for f(x) = (alpha + dir x)^(-s)
        let term = dir * b * rising * power;
        total += term;
        let mag = term.norm();
        if mag < 1e-17 * total.norm() || mag == 0.0 {
            return (total, mag);
        }
        if mag > last {
            return (total, mag);
        }
        last = mag;
        rising *= (s + (2 * j - 1) as f64) * (s + (2 * j) as f64);
        power /= base * base;
    }
    (total, last)
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}
