use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("a = {re}{im:+}i lies on the period lattice")]
    LatticePoint { re: f64, im: f64 },

    #[error("reduced a = {re}{im:+}i lies on the boundary of the fundamental rectangle")]
    Boundary { re: f64, im: f64 },

    #[error("{what}: argument outside the domain ({detail})")]
    Domain { what: &'static str, detail: String },

    #[error("hurwitz zeta: s = {re}{im:+}i is inside the exclusion radius of the pole at s = 1")]
    PoleAtOne { re: f64, im: f64 },

    #[error("log theta1: Im z = {im} outside the strip (0, {upper})")]
    StripViolation { im: f64, upper: f64 },

    #[error("z is within {distance:e} of a zero of theta1")]
    LatticeZero { distance: f64 },

    #[error("polylog: |z| = {modulus} is not below 1 - {margin}")]
    Radius { modulus: f64, margin: f64 },

    #[error("{what}: series did not reach tolerance within {max_terms} terms")]
    SeriesBudget {
        what: &'static str,
        max_terms: usize,
    },

    #[error("quadrature: tolerance {tol:e} not reached within {evaluations} evaluations (estimate {abs_err:e})")]
    NonConvergence {
        tol: f64,
        abs_err: f64,
        evaluations: usize,
    },

    #[error("quadrature: integrand returned a non-finite value at x = {x}")]
    NonFinite { x: f64 },

    #[error("{what}: two evaluation routes disagree by {diff:e}")]
    Inconsistent { what: &'static str, diff: f64 },
}

impl Error {
    /// Errors caused by the caller's parameters rather than by the numerics.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_)
                | Error::LatticePoint { .. }
                | Error::Boundary { .. }
                | Error::Domain { .. }
                | Error::PoleAtOne { .. }
                | Error::StripViolation { .. }
                | Error::LatticeZero { .. }
                | Error::Radius { .. }
        )
    }
}
