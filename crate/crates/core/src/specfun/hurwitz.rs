//! Hurwitz zeta function by Euler-Maclaurin summation.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::bernoulli::bernoulli_f64;
use super::series::SeriesTruncation;
use crate::error::{Error, Result};

/// Radius around `s = 1` inside which evaluation is refused.
pub const POLE_EXCLUSION: f64 = 1e-6;

/// Largest number of Euler-Maclaurin correction terms tried per shift.
const MAX_CORRECTIONS: usize = 60;

/// `zeta_H(s, y) = sum_{n>=0} (n+y)^(-s)` continued to `s != 1`, for `0 < y <= 2`.
pub fn hurwitz_zeta(s: Complex64, y: f64) -> Result<Complex64> {
    hurwitz_zeta_with(s, y, &SeriesTruncation::default())
}

pub fn hurwitz_zeta_with(s: Complex64, y: f64, trunc: &SeriesTruncation) -> Result<Complex64> {
    if !(y > 0.0 && y <= 2.0) {
        return Err(Error::Domain {
            what: "hurwitz_zeta",
            detail: format!("shift y = {y} not in (0, 2]"),
        });
    }
    if !(s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::Domain {
            what: "hurwitz_zeta",
            detail: "non-finite s".into(),
        });
    }
    if (s - 1.0).norm() < POLE_EXCLUSION {
        return Err(Error::PoleAtOne { re: s.re, im: s.im });
    }

    // The correction series terminates at non-positive integers, so no
    // direct terms are needed there.
    let terminating = s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round();
    let mut shift = if terminating {
        0
    } else {
        // Consecutive corrections shrink by about |s|^2 / (4 pi^2 w^2), and the
        // smallest correction is roughly exp(-2 pi w) relative; w = 7 puts that
        // below rounding. A larger w only adds cancellation in the head sum.
        let w_min = ((s.norm() + 50.0) / (4.0 * PI))
            .max(0.5 * s.norm())
            .max(7.0);
        (w_min - y).ceil().max(0.0) as usize
    };

    for _ in 0..8 {
        if let Some(v) = euler_maclaurin(s, y, shift, trunc.tol, terminating) {
            return Ok(v);
        }
        shift += 4 + shift / 2;
    }
    Err(Error::SeriesBudget {
        what: "hurwitz_zeta",
        max_terms: MAX_CORRECTIONS,
    })
}

/// One Euler-Maclaurin evaluation with `shift` leading terms summed
/// directly; `None` if the asymptotic correction series starts to diverge
/// before reaching `tol`. A terminating series is always summed to the end.
fn euler_maclaurin(
    s: Complex64,
    y: f64,
    shift: usize,
    tol: f64,
    terminating: bool,
) -> Option<Complex64> {
    let mut head = Complex64::new(0.0, 0.0);
    let mut scale: f64 = 0.0;
    for k in 0..shift {
        let t = pow_real(k as f64 + y, -s);
        scale = scale.max(t.norm());
        head += t;
    }
    let w = shift as f64 + y;
    let w_pow = pow_real(w, -s);
    let tail = w_pow * w / (s - 1.0);
    scale = scale.max(tail.norm());
    let mut total = head + tail + 0.5 * w_pow;
    // Corrections below the rounding error of the largest summand carry no
    // information.
    let floor = 4.0 * f64::EPSILON * scale;

    // rising = s (s+1) ... (s+2j-2), power = w^(-s-2j+1)
    let mut rising = s;
    let mut power = w_pow / w;
    let max_j = if terminating {
        (1.0 - s.re) as usize / 2 + 2
    } else {
        MAX_CORRECTIONS
    };
    let four_pi2_w2 = 4.0 * PI * PI * w * w;
    for j in 1..=max_j {
        let b = bernoulli_f64(2 * j) / factorial(2 * j);
        let term = rising * power * b;
        total += term;
        let mag = term.norm();
        if mag == 0.0 || mag < (tol * total.norm()).max(floor) {
            return Some(total);
        }
        // Consecutive corrections differ by about
        // (s+2j-1)(s+2j) / (4 pi^2 w^2); past 1 the series diverges.
        let growth = ((s + (2 * j - 1) as f64) * (s + (2 * j) as f64)).norm() / four_pi2_w2;
        if !terminating && growth >= 1.0 {
            return None;
        }
        rising *= (s + (2 * j - 1) as f64) * (s + (2 * j) as f64);
        power /= w * w;
    }
    None
}

fn pow_real(x: f64, e: Complex64) -> Complex64 {
    (e * x.ln()).exp()
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}
