//! `d/ds zeta(s)` at `s = 0, -1, -2, ...` through the Fourier series of
//! `ln theta1`, which reduces everything to the integrals
//! `I_n(A) = int_0^1 y^n ln(2 sin pi (y + A)) dy` and
//! `J_{k,l}(A) = int_0^1 y^k cos(2 pi l (y + A)) dy`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::params::ReducedParams;
use crate::error::{Error, Result};
use crate::specfun::{
    bernoulli_f64, binomial, log_dedekind_eta, log_theta1_fourier, polylog_with, SeriesTruncation,
    DEFAULT_RADIUS_MARGIN,
};

/// Agreement required between the two expressions for `zeta'(0)`.
pub const DERIV_ZERO_CONSISTENCY: f64 = 1e-10;

/// Both expressions for `zeta'(0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivZeroForms {
    /// `-ln theta1(pi A) + ln(q)/6 + ln eta(i b/c) + pi i (1/2 - A)`
    pub closed: Complex64,
    /// `-ln theta1(pi A) + i pi/2 + ln(q)/6 + ln eta(i b/c) + I_0(A)`
    pub via_integral: Complex64,
}

pub fn deriv_at_zero_forms(rp: &ReducedParams) -> Result<DerivZeroForms> {
    let ctx = rp.ctx();
    let a = rp.a_over_c();
    let log_theta = log_theta1_fourier(PI * a, ctx)?;
    let constant = ctx.q().ln() / 6.0 + log_dedekind_eta(ctx)?;
    let i = Complex64::i();
    let closed = -log_theta + constant + PI * i * (0.5 - a);
    let via_integral = -log_theta + i * PI / 2.0 + constant + integral_i_with(0, a, rp.trunc())?;
    Ok(DerivZeroForms {
        closed,
        via_integral,
    })
}

/// `zeta'(0)`; both expressions are evaluated and must agree.
pub fn deriv_at_zero(rp: &ReducedParams) -> Result<Complex64> {
    let forms = deriv_at_zero_forms(rp)?;
    let diff = (forms.closed - forms.via_integral).norm();
    if diff > DERIV_ZERO_CONSISTENCY * forms.closed.norm().max(1.0) {
        return Err(Error::Inconsistent {
            what: "deriv_at_zero",
            diff,
        });
    }
    Ok(forms.closed)
}

/// `zeta'(-n)` for `n >= 1`:
///
/// `i pi (-1)^n c^n B_{n+1}/(n+1) + (-1)^n c^n/(n+1)
///   sum_k C(n+1,k) (n-k+1) B_k [I_{n-k}(A) - 2 sum_l q^2l/(1-q^2l) J_{n-k,l}(A)/l]`.
///
/// The sum over `l` stops once its tail is below `tol`.
pub fn deriv_at_neg_int(n: u32, rp: &ReducedParams, tol: f64) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "deriv_at_neg_int needs n >= 1; use deriv_at_zero".into(),
        ));
    }
    let n = n as usize;
    let a = rp.a_over_c();
    let trunc = SeriesTruncation::new(tol, rp.trunc().max_terms)?;
    let weights: Vec<f64> = (0..=n)
        .map(|k| binomial(n + 1, k) * (n - k + 1) as f64 * bernoulli_f64(k))
        .collect();

    let mut bracket = Complex64::new(0.0, 0.0);
    for (k, &w) in weights.iter().enumerate() {
        if w != 0.0 {
            bracket += w * integral_i_with(n - k, a, rp.trunc())?;
        }
    }
    let q = rp.q();
    let total_weight: f64 = weights.iter().map(|w| w.abs()).sum();
    let series = trunc.sum("deriv_at_neg_int", |m| {
        let l = m as u32;
        let q2l = q.powi(2 * l as i32);
        let lambert = q2l / (1.0 - q2l) / l as f64;
        let term: Complex64 = weights
            .iter()
            .enumerate()
            .filter(|(_, w)| **w != 0.0)
            .map(|(k, &w)| w * integral_j(n - k, l, a))
            .sum();
        let majorant = lambert * total_weight * (2.0 * PI * l as f64 * a.im).cosh();
        (term * lambert, majorant)
    })?;
    bracket -= 2.0 * series;

    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let scale = sign * rp.c().powi(n as i32) / (n + 1) as f64;
    let b_next = bernoulli_f64(n + 1);
    Ok(Complex64::i() * PI * scale * b_next + scale * bracket)
}

/// Explicit form of `zeta'(-1)`:
/// `c/(2 pi i) Li_2(e^(2 pi i A)) + c/pi sum_l q^2l/(1-q^2l) sin(2 pi l A)/l^2`.
pub fn deriv_at_neg_one_closed(rp: &ReducedParams) -> Result<Complex64> {
    let a = rp.a_over_c();
    let c = rp.c();
    let li = polylog_with(2, unit_exp(a), rp.trunc(), DEFAULT_RADIUS_MARGIN)?;
    let series = lambert_series(rp, "deriv_at_neg_one_closed", 2, |x| x.sin())?;
    Ok(c / (2.0 * PI * Complex64::i()) * li + c / PI * series)
}

/// Explicit form of `zeta'(-2)`:
/// `-c^2/(2 pi^2) Li_3(e^(2 pi i A)) - c^2/pi^2 sum_l q^2l/(1-q^2l) cos(2 pi l A)/l^3`.
pub fn deriv_at_neg_two_closed(rp: &ReducedParams) -> Result<Complex64> {
    let a = rp.a_over_c();
    let c2 = rp.c() * rp.c();
    let li = polylog_with(3, unit_exp(a), rp.trunc(), DEFAULT_RADIUS_MARGIN)?;
    let series = lambert_series(rp, "deriv_at_neg_two_closed", 3, |x| x.cos())?;
    Ok(-c2 / (2.0 * PI * PI) * li - c2 / (PI * PI) * series)
}

/// `sum_l q^2l/(1-q^2l) trig(2 pi l A) / l^power`
fn lambert_series(
    rp: &ReducedParams,
    what: &'static str,
    power: i32,
    trig: impl Fn(Complex64) -> Complex64,
) -> Result<Complex64> {
    let a = rp.a_over_c();
    let q = rp.q();
    rp.trunc().sum(what, |m| {
        let l = m as f64;
        let q2l = q.powi(2 * m as i32);
        let w = q2l / (1.0 - q2l) / l.powi(power);
        let x = 2.0 * PI * l * a;
        (w * trig(x), w * x.im.cosh())
    })
}

fn unit_exp(a: Complex64) -> Complex64 {
    (2.0 * PI * Complex64::i() * a).exp()
}

/// `I_n(A) = int_0^1 y^n ln(2 sin pi (y + A)) dy` in closed form:
///
/// `-i pi n / (2 (n+1)(n+2)) - i pi A/(n+1) + (-A)^(n+1)/(n+1)
///   sum_{k=1}^{n+1} C(n+1,k) (-1)^k sum_{l=1}^{k} k!/(k-l)! (i/(2 pi A))^l
///   (sum_{j=1}^{k-l} C(k-l,j) A^(-j)) Li_{l+1}(e^(2 pi i A))`.
pub fn integral_i(n: usize, a: Complex64) -> Result<Complex64> {
    integral_i_with(n, a, &SeriesTruncation::default())
}

fn integral_i_with(n: usize, a: Complex64, trunc: &SeriesTruncation) -> Result<Complex64> {
    if !(a.im > 0.0) {
        return Err(Error::Domain {
            what: "integral_i",
            detail: format!("needs Im A > 0, got A = {a}"),
        });
    }
    let i = Complex64::i();
    let nf = n as f64;
    let z = unit_exp(a);
    let inv = a.inv();

    // Li_{l+1}(z) for l = 1..n, since the l = k term carries an empty sum.
    let polylogs: Vec<Complex64> = (1..=n)
        .map(|l| polylog_with(l as u32 + 1, z, trunc, DEFAULT_RADIUS_MARGIN))
        .collect::<Result<_>>()?;
    // inner[m] = sum_{j=1}^{m} C(m,j) A^-j = (1 + 1/A)^m - 1, summed termwise.
    let inner =
        |m: usize| -> Complex64 { (1..=m).map(|j| binomial(m, j) * inv.powi(j as i32)).sum() };
    let ratio = i / (2.0 * PI * a);

    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..=n + 1 {
        let mut part = Complex64::new(0.0, 0.0);
        let mut falling = 1.0;
        for l in 1..k {
            falling *= (k - l + 1) as f64;
            part += falling * ratio.powi(l as i32) * inner(k - l) * polylogs[l - 1];
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += binomial(n + 1, k) * sign * part;
    }
    let lead = (-a).powi(n as i32 + 1) / (nf + 1.0);
    Ok(-i * PI * nf / (2.0 * (nf + 1.0) * (nf + 2.0)) - i * PI * a / (nf + 1.0) + lead * sum)
}

/// `J_{k,l}(A) = int_0^1 y^k cos(2 pi l (y + A)) dy` by exact evaluation of
/// the antiderivatives of `x^k cos x` and `x^k sin x` on `[0, 2 pi l]`.
pub fn integral_j(k: usize, l: u32, a: Complex64) -> Complex64 {
    let big_k = 2.0 * PI * l as f64;
    let phi = big_k * a;
    let mut fact_k = 1.0;
    for m in 2..=k {
        fact_k *= m as f64;
    }

    // k!/(k-m)! K^(k-m), accumulated for m = 0..k.
    let mut cos_part = 0.0;
    let mut sin_part = 0.0;
    let mut falling = 1.0;
    for m in 0..=k {
        if m > 0 {
            falling *= (k - m + 1) as f64;
        }
        let t = falling * big_k.powi((k - m) as i32);
        let sign = if (m / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if m % 2 == 0 {
            sin_part += sign * t;
        } else {
            cos_part += sign * t;
        }
    }
    // Lower-limit contributions at x = 0.
    if k.is_multiple_of(2) {
        let sign = if (k / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
        sin_part -= sign * fact_k;
    } else {
        let sign = if ((k - 1) / 2).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        cos_part -= sign * fact_k;
    }
    (phi.cos() * cos_part + phi.sin() * sin_part) / big_k.powi(k as i32 + 1)
}
