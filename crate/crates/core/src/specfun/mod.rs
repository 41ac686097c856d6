//! Special functions consumed by the continuation formulas.

mod bernoulli;
mod hurwitz;
mod polylog;
mod series;
mod theta;

pub use bernoulli::{
    bernoulli_f64, bernoulli_number, bernoulli_numbers, bernoulli_poly, binomial, binomial_exact,
};
pub use hurwitz::{hurwitz_zeta, hurwitz_zeta_with, POLE_EXCLUSION};
pub use polylog::{polylog, polylog_with, DEFAULT_RADIUS_MARGIN};
pub use series::SeriesTruncation;
pub use theta::{
    dedekind_eta, log_dedekind_eta, log_theta1_deriv, log_theta1_fourier, theta1, ThetaContext,
    LATTICE_EXCLUSION,
};
