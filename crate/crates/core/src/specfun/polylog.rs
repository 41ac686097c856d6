use num_complex::Complex64;

use super::series::SeriesTruncation;
use crate::error::{Error, Result};

/// Default distance kept from the unit circle.
pub const DEFAULT_RADIUS_MARGIN: f64 = 1e-6;

/// `Li_n(z) = sum_{k>=1} z^k / k^n` for `n >= 1` and `|z| < 1`.
pub fn polylog(n: u32, z: Complex64) -> Result<Complex64> {
    polylog_with(n, z, &SeriesTruncation::default(), DEFAULT_RADIUS_MARGIN)
}

pub fn polylog_with(
    n: u32,
    z: Complex64,
    trunc: &SeriesTruncation,
    margin: f64,
) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "polylog order must be positive".into(),
        ));
    }
    let r = z.norm();
    if !(r < 1.0 - margin) {
        return Err(Error::Radius { modulus: r, margin });
    }
    if r == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let order = n as i32;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut power = Complex64::new(1.0, 0.0);
    let mut r_pow = 1.0;
    for k in 1..=trunc.max_terms {
        power *= z;
        r_pow *= r;
        let kf = k as f64;
        sum += power / kf.powi(order);
        // Remaining terms are bounded by |z|^(k+1) / ((k+1)^n (1-|z|)).
        let tail = r_pow * r / ((kf + 1.0).powi(order) * (1.0 - r));
        if tail < trunc.tol * sum.norm().max(f64::MIN_POSITIVE) {
            return Ok(sum);
        }
    }
    Err(Error::SeriesBudget {
        what: "polylog",
        max_terms: trunc.max_terms,
    })
}
