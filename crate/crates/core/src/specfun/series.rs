use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Truncation policy shared by every infinite sum and product in the crate.
///
/// A series stops once the majorant of the current term and the geometric
/// tail bound built from consecutive majorants both drop below
/// `tol * max(1, |partial sum|)`. Running past `max_terms` is an error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesTruncation {
    pub tol: f64,
    pub max_terms: usize,
}

impl SeriesTruncation {
    pub const DEFAULT_TOL: f64 = 1e-17;
    pub const DEFAULT_MAX_TERMS: usize = 200_000;

    pub fn new(tol: f64, max_terms: usize) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "series tolerance must be positive, got {tol}"
            )));
        }
        if max_terms == 0 {
            return Err(Error::InvalidParameter(
                "series term cap must be at least 1".into(),
            ));
        }
        Ok(Self { tol, max_terms })
    }

    /// Same policy with a different term cap.
    pub fn with_max_terms(self, max_terms: usize) -> Result<Self> {
        Self::new(self.tol, max_terms)
    }

    /// Sums `term(n)` for `n = 1, 2, ...`. The closure returns the term and
    /// an upper bound on its modulus; the bounds must eventually decay at
    /// least geometrically.
    pub(crate) fn sum<F>(&self, what: &'static str, mut term: F) -> Result<Complex64>
    where
        F: FnMut(usize) -> (Complex64, f64),
    {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut prev_bound = f64::INFINITY;
        for n in 1..=self.max_terms {
            let (t, bound) = term(n);
            sum += t;
            if bound == 0.0 {
                return Ok(sum);
            }
            let target = self.tol * sum.norm().max(1.0);
            let ratio = bound / prev_bound;
            if bound < target && ratio < 1.0 && bound * ratio / (1.0 - ratio) < target {
                return Ok(sum);
            }
            prev_bound = bound;
        }
        Err(Error::SeriesBudget {
            what,
            max_terms: self.max_terms,
        })
    }
}

impl Default for SeriesTruncation {
    fn default() -> Self {
        Self {
            tol: Self::DEFAULT_TOL,
            max_terms: Self::DEFAULT_MAX_TERMS,
        }
    }
}
