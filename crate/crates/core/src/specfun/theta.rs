//! First Jacobi theta function with real nome `q = exp(i pi tau)`,
//! `tau` purely imaginary, together with its logarithm, its logarithmic
//! derivatives and the Dedekind eta function.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::series::SeriesTruncation;
use crate::error::{Error, Result};

/// Distance to a zero of theta1 below which log-derivatives are refused.
pub const LATTICE_EXCLUSION: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaContext {
    q: f64,
    tau: Complex64,
    trunc: SeriesTruncation,
}

impl ThetaContext {
    /// Context for `tau = i * ratio`, i.e. `q = exp(-pi * ratio)`.
    pub fn from_ratio(ratio: f64, trunc: SeriesTruncation) -> Result<Self> {
        if !(ratio > 0.0 && ratio.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "modular ratio must be positive, got {ratio}"
            )));
        }
        let q = (-PI * ratio).exp();
        if q <= 0.0 || q >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "nome exp(-pi * {ratio}) is not representable in (0, 1)"
            )));
        }
        Ok(Self {
            q,
            tau: Complex64::new(0.0, ratio),
            trunc,
        })
    }

    /// Context for a nome `0 < q < 1`.
    pub fn from_nome(q: f64, trunc: SeriesTruncation) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::InvalidParameter(format!("nome {q} not in (0, 1)")));
        }
        Ok(Self {
            q,
            tau: Complex64::new(0.0, -q.ln() / PI),
            trunc,
        })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn trunc(&self) -> &SeriesTruncation {
        &self.trunc
    }

    /// `pi * Im tau`, the height of the strip between rows of zeros.
    pub fn strip_height(&self) -> f64 {
        PI * self.tau.im
    }

    /// `q^(2n) / (1 - q^(2n))`
    fn lambert_weight(&self, n: usize) -> f64 {
        let q2n = self.q.powi(2 * n as i32);
        q2n / (1.0 - q2n)
    }
}

/// Product representation
/// `2 q^(1/4) sin z prod_{n>=1} (1 - 2 q^(2n) cos 2z + q^(4n)) (1 - q^(2n))`.
pub fn theta1(z: Complex64, ctx: &ThetaContext) -> Result<Complex64> {
    let q = ctx.q;
    let q2 = q * q;
    let cos2z = (2.0 * z).cos();
    let mut prod = 2.0 * q.powf(0.25) * z.sin();
    let mut q2n = 1.0;
    let tol = ctx.trunc.tol;
    for _ in 1..=ctx.trunc.max_terms {
        q2n *= q2;
        let factor = (1.0 - 2.0 * q2n * cos2z + q2n * q2n) * (1.0 - q2n);
        prod *= factor;
        // |factor - 1| <= q^(2n) (2|cos 2z| + 2) for the remaining factors.
        let deviation = q2n * (2.0 * cos2z.norm() + 2.0);
        if deviation < tol && deviation * q2 / (1.0 - q2) < tol {
            return Ok(prod);
        }
    }
    Err(Error::SeriesBudget {
        what: "theta1",
        max_terms: ctx.trunc.max_terms,
    })
}

/// `ln eta(tau) = i pi tau / 12 + sum_n ln(1 - q^(2n))`.
pub fn log_dedekind_eta(ctx: &ThetaContext) -> Result<Complex64> {
    let q2 = ctx.q * ctx.q;
    let sum = ctx.trunc.sum("dedekind_eta", |n| {
        let q2n = q2.powi(n as i32);
        let t = (-q2n).ln_1p();
        (Complex64::new(t, 0.0), q2n / (1.0 - q2n))
    })?;
    Ok(Complex64::i() * PI * ctx.tau / 12.0 + sum)
}

/// `eta(tau) = exp(i pi tau / 12) prod_n (1 - q^(2n))`.
pub fn dedekind_eta(ctx: &ThetaContext) -> Result<Complex64> {
    Ok(log_dedekind_eta(ctx)?.exp())
}

/// Fourier form of `ln theta1(z)` valid for `0 < Im z < pi Im tau`:
/// `ln(q)/6 + ln eta(tau) + ln(2 sin z) - 2 sum_n q^(2n)/(1-q^(2n)) cos(2nz)/n`,
/// with the principal branch of `ln(2 sin z)`.
pub fn log_theta1_fourier(z: Complex64, ctx: &ThetaContext) -> Result<Complex64> {
    let upper = ctx.strip_height();
    if !(z.im > 0.0 && z.im < upper) {
        return Err(Error::StripViolation { im: z.im, upper });
    }
    let series = ctx.trunc.sum("log_theta1_fourier", |n| {
        let k = 2.0 * n as f64;
        let w = ctx.lambert_weight(n) / n as f64;
        ((k * z).cos() * w, w * (k * z.im).cosh())
    })?;
    Ok(ctx.q.ln() / 6.0 + log_dedekind_eta(ctx)? + (2.0 * z.sin()).ln() - 2.0 * series)
}

/// `d^j/dz^j ln theta1(z)` for `j >= 1`.
///
/// `z` is first moved by quasi-periodicity into the strip
/// `|Im z| <= pi Im tau / 2`, where
/// `cot z + 4 sum_n q^(2n)/(1-q^(2n)) sin 2nz` converges at least like `q^n`;
/// the cotangent is differentiated through `cot' = -1 - cot^2`.
pub fn log_theta1_deriv(j: usize, z: Complex64, ctx: &ThetaContext) -> Result<Complex64> {
    if j == 0 {
        return Err(Error::InvalidParameter(
            "log_theta1_deriv needs a derivative order j >= 1".into(),
        ));
    }
    let height = ctx.strip_height();
    let rows = (z.im / height).round();
    let mut w = z - Complex64::new(0.0, rows * height);
    w.re -= PI * (w.re / PI).round();
    let distance = w.norm();
    if distance < LATTICE_EXCLUSION {
        return Err(Error::LatticeZero { distance });
    }

    let cot_part = cot_derivative(j - 1, w);
    let order = (j - 1) as i32;
    let series = ctx.trunc.sum("log_theta1_deriv", |n| {
        let k = 2.0 * n as f64;
        let scale = ctx.lambert_weight(n) * k.powi(order);
        let t = shifted_sin(k * w, j - 1) * scale;
        (t, scale * (k * w.im).cosh())
    })?;
    let mut value = cot_part + 4.0 * series;
    if j == 1 {
        // theta1(w + k pi tau) = (-1)^k exp(-i (2 k w + pi k^2 tau)) theta1(w)
        value -= Complex64::new(0.0, 2.0 * rows);
    }
    Ok(value)
}

/// `sin(x + m pi / 2)` without rounding in the phase.
fn shifted_sin(x: Complex64, m: usize) -> Complex64 {
    match m % 4 {
        0 => x.sin(),
        1 => x.cos(),
        2 => -x.sin(),
        _ => -x.cos(),
    }
}

/// `d^m/dz^m cot z` as a polynomial in `cot z`.
fn cot_derivative(m: usize, z: Complex64) -> Complex64 {
    // coeffs[i] multiplies cot^i; start from P_0(x) = x.
    let mut coeffs = vec![0.0, 1.0];
    for _ in 0..m {
        // P_{k+1}(x) = P_k'(x) * (-1 - x^2)
        let mut next = vec![0.0; coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate().skip(1) {
            let d = c * i as f64;
            next[i - 1] -= d;
            next[i + 1] -= d;
        }
        coeffs = next;
    }
    let x = z.cos() / z.sin();
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ctx_q(q: f64) -> ThetaContext {
        ThetaContext::from_nome(q, SeriesTruncation::default()).unwrap()
    }

    #[test]
    fn context_invariants() {
        let ctx = ThetaContext::from_ratio(0.7, SeriesTruncation::default()).unwrap();
        assert!((ctx.q() - (-PI * ctx.tau().im).exp()).abs() < 1e-16);
        assert_eq!(ctx.tau().re, 0.0);
        assert!(ThetaContext::from_ratio(-1.0, SeriesTruncation::default()).is_err());
        assert!(ThetaContext::from_ratio(1e6, SeriesTruncation::default()).is_err());
        assert!(ThetaContext::from_nome(1.0, SeriesTruncation::default()).is_err());
        let back = ctx_q(ctx.q());
        assert!((back.tau().im - 0.7).abs() < 1e-14);
    }

    #[test]
    fn theta1_zero_and_half_period() {
        let ctx = ctx_q(0.2);
        assert_eq!(theta1(c(0.0, 0.0), &ctx).unwrap(), c(0.0, 0.0));
        let z = c(0.3, 0.1);
        let a = theta1(z, &ctx).unwrap();
        let b = theta1(z + PI, &ctx).unwrap();
        assert!((a + b).norm() < 1e-14 * a.norm());
    }

    #[test]
    fn theta1_small_nome() {
        let q: f64 = 1e-6;
        let ctx = ctx_q(q);
        let v = theta1(c(1.0, 0.0), &ctx).unwrap();
        let leading = 2.0 * q.powf(0.25) * 1f64.sin();
        assert!((v.re - leading).abs() < 1e-10 * leading);
    }

    #[test]
    fn deriv_vanishes_at_quarter_period() {
        let ctx = ctx_q(0.3);
        let v = log_theta1_deriv(1, c(PI / 2.0, 0.0), &ctx).unwrap();
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn deriv_refuses_zeros() {
        let ctx = ctx_q(0.3);
        let zero = c(PI, 0.0) + PI * ctx.tau();
        assert!(matches!(
            log_theta1_deriv(2, zero, &ctx),
            Err(Error::LatticeZero { .. })
        ));
        assert!(log_theta1_deriv(0, c(0.5, 0.1), &ctx).is_err());
    }

    #[test]
    fn fourier_strip_is_enforced() {
        let ctx = ctx_q(0.3);
        let top = ctx.strip_height();
        assert!(log_theta1_fourier(c(0.5, 0.0), &ctx).is_err());
        assert!(log_theta1_fourier(c(0.5, top), &ctx).is_err());
        assert!(log_theta1_fourier(c(0.5, -0.1), &ctx).is_err());
        assert!(log_theta1_fourier(c(0.5, top / 2.0), &ctx).is_ok());
    }

    #[test]
    fn cot_derivative_low_orders() {
        let z = c(0.6, 0.1);
        let cot = z.cos() / z.sin();
        let csc2 = 1.0 / (z.sin() * z.sin());
        assert!((cot_derivative(0, z) - cot).norm() < 1e-15);
        assert!((cot_derivative(1, z) + csc2).norm() < 1e-14);
        assert!((cot_derivative(2, z) - 2.0 * csc2 * cot).norm() < 1e-13);
    }
}
