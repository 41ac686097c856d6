//! Brute-force references and the verification suite.
//!
//! Everything here is computed independently of the closed forms in
//! [`crate::barnes`]: integrals by quadrature, derivatives by finite
//! differences, series by direct summation.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::barnes::{
    deriv_at_neg_int, deriv_at_neg_one_closed, deriv_at_neg_two_closed, deriv_at_zero,
    deriv_at_zero_forms, direct_sum, eval, eval_integral_lt1, eval_parts_chain, integral_i,
    integral_j, log_ratio_tracked, reduce_parameters, value_at_int, ReducedParams, TorusParams,
};
use crate::error::{Error, Result};
use crate::quadrature::try_integrate;
use crate::specfun::{
    bernoulli_number, bernoulli_poly, binomial_exact, hurwitz_zeta, log_theta1_deriv,
    log_theta1_fourier, polylog, theta1,
};

/// Tolerance requested from the evaluator inside the suite.
const EVAL_TOL: f64 = 1e-12;
/// Tolerance for the quadrature oracles.
const QUAD_TOL: f64 = 1e-14;
/// Step of the central differences in `s`.
pub const FD_STEP: f64 = 1e-4;

/// One comparison between two routes to the same quantity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub name: String,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_diff: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl OracleReport {
    pub fn compare(
        name: impl Into<String>,
        lhs: Complex64,
        rhs: Complex64,
        tolerance: f64,
    ) -> Self {
        let abs_diff = (lhs - rhs).norm();
        Self {
            name: name.into(),
            lhs,
            rhs,
            abs_diff,
            tolerance,
            passed: abs_diff <= tolerance,
            note: None,
        }
    }

    fn errored(name: impl Into<String>, tolerance: f64, err: &Error) -> Self {
        Self {
            name: name.into(),
            lhs: Complex64::new(0.0, 0.0),
            rhs: Complex64::new(0.0, 0.0),
            abs_diff: f64::MAX,
            tolerance,
            passed: false,
            note: Some(err.to_string()),
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Tolerances of the suite, one per class of comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceProfile {
    /// Closed form against quadrature or another closed form.
    pub identity: f64,
    /// Trigonometric integrals against quadrature.
    pub trig: f64,
    /// Two continuation formulas against each other.
    pub representation: f64,
    /// Added to the lattice sum's own error estimate.
    pub lattice_extra: f64,
    /// Integer values against the lattice sum.
    pub closed_int: f64,
    /// Central differences in `s`.
    pub finite_difference: f64,
    /// Richardson-extrapolated differences and limits.
    pub richardson: f64,
    /// Limit `s -> 1`.
    pub s1_limit: f64,
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        Self {
            identity: 1e-10,
            trig: 1e-12,
            representation: 1e-8,
            lattice_extra: 1e-8,
            closed_int: 1e-6,
            finite_difference: 1e-5,
            richardson: 1e-6,
            s1_limit: 1e-4,
        }
    }
}

impl ToleranceProfile {
    /// The same tolerance for every class.
    pub fn uniform(tol: f64) -> Self {
        Self {
            identity: tol,
            trig: tol,
            representation: tol,
            lattice_extra: tol,
            closed_int: tol,
            finite_difference: tol,
            richardson: tol,
            s1_limit: tol,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [
            self.identity,
            self.trig,
            self.representation,
            self.lattice_extra,
            self.closed_int,
            self.finite_difference,
            self.richardson,
            self.s1_limit,
        ];
        if all.iter().all(|t| *t > 0.0 && t.is_finite()) {
            Ok(())
        } else {
            Err(Error::InvalidParameter(
                "every tolerance in the profile must be positive and finite".into(),
            ))
        }
    }
}

/// `a in {0.3+0.4i, 0.5+0.5i, 0.1+0.9i}`, `b in {0.5, 1, 2}`, `c in {1, 1.7}`.
pub fn default_grid() -> Vec<TorusParams> {
    let mut grid = Vec::new();
    for a in [
        Complex64::new(0.3, 0.4),
        Complex64::new(0.5, 0.5),
        Complex64::new(0.1, 0.9),
    ] {
        for b in [0.5, 1.0, 2.0] {
            for c in [1.0, 1.7] {
                grid.push(TorusParams { a, b, c });
            }
        }
    }
    grid
}

/// `int_0^1 y^n ln(2 sin pi (y + A)) dy` by quadrature.
///
/// The logarithm is continued along `y` through
/// `ln(2 sin z) = i (pi/2 - z) + ln(1 - e^(2 i z))`, whose last term stays
/// on the principal branch because `|e^(2 i z)| < 1` for `Im z > 0`.
pub fn quad_i(n: usize, a: Complex64, tol: f64) -> Result<Complex64> {
    if !(a.im > 0.0) {
        return Err(Error::Domain {
            what: "quad_i",
            detail: format!("needs Im A > 0, got A = {a}"),
        });
    }
    let i = Complex64::i();
    let f = |y: f64| {
        let z = PI * (y + a);
        let log = i * (PI / 2.0 - z) + (1.0 - (2.0 * i * z).exp()).ln();
        Ok(y.powi(n as i32) * log)
    };
    Ok(try_integrate(f, 0.0, 1.0, tol)?.value)
}

/// `int_0^1 y^k cos(2 pi l (y + A)) dy` by quadrature.
pub fn quad_j(k: usize, l: u32, a: Complex64, tol: f64) -> Result<Complex64> {
    if l == 0 {
        return Err(Error::InvalidParameter("quad_j needs l >= 1".into()));
    }
    let f = |y: f64| Ok(y.powi(k as i32) * (2.0 * PI * l as f64 * (y + a)).cos());
    Ok(try_integrate(f, 0.0, 1.0, tol)?.value)
}

/// `(zeta(s0 + h) - zeta(s0 - h)) / 2h`.
pub fn numeric_s_derivative(s0: Complex64, rp: &ReducedParams, h: f64) -> Result<Complex64> {
    if !(h > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "step must be positive, got {h}"
        )));
    }
    let up = eval(s0 + h, rp, EVAL_TOL)?.value;
    let down = eval(s0 - h, rp, EVAL_TOL)?.value;
    Ok((up - down) / (2.0 * h))
}

/// Central differences at steps `coarse` and `fine`, combined to cancel the
/// `h^2` error term.
pub fn richardson_s_derivative(
    s0: Complex64,
    rp: &ReducedParams,
    coarse: f64,
    fine: f64,
) -> Result<Complex64> {
    let dc = numeric_s_derivative(s0, rp, coarse)?;
    let df = numeric_s_derivative(s0, rp, fine)?;
    let r = (coarse / fine).powi(2);
    Ok((r * df - dc) / (r - 1.0))
}

/// Limit of `zeta(s0 + eps e^(i theta))` as `eps -> 0`, extrapolated by a
/// quadratic through `eps = 1e-2, 10^-2.5, 1e-3`.
pub fn directional_limit(s0: Complex64, theta: f64, rp: &ReducedParams) -> Result<Complex64> {
    let dir = Complex64::from_polar(1.0, theta);
    let steps = [1e-2, 10f64.powf(-2.5), 1e-3];
    let mut limit = Complex64::new(0.0, 0.0);
    for (i, &e) in steps.iter().enumerate() {
        // Lagrange weight of node i at eps = 0.
        let w: f64 = steps
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, &x)| x / (x - e))
            .product();
        limit += w * eval(s0 + e * dir, rp, EVAL_TOL)?.value;
    }
    Ok(limit)
}

struct Case {
    lhs: Complex64,
    rhs: Complex64,
    tol: f64,
    label: String,
}

impl Case {
    fn new(label: impl Into<String>, lhs: Complex64, rhs: Complex64, tol: f64) -> Self {
        Self {
            lhs,
            rhs,
            tol,
            label: label.into(),
        }
    }

    fn relative(label: impl Into<String>, lhs: Complex64, rhs: Complex64, tol: f64) -> Self {
        Self::new(label, lhs, rhs, tol * rhs.norm().max(f64::MIN_POSITIVE))
    }
}

/// Reports the case with the largest `diff / tol`.
fn worst_case(name: &str, cases: Result<Vec<Case>>, fallback_tol: f64) -> OracleReport {
    let cases = match cases {
        Ok(c) if !c.is_empty() => c,
        Ok(_) => {
            return OracleReport::errored(
                name,
                fallback_tol,
                &Error::InvalidParameter("no cases".into()),
            )
        }
        Err(e) => return OracleReport::errored(name, fallback_tol, &e),
    };
    let mut worst = &cases[0];
    let mut worst_ratio = f64::NEG_INFINITY;
    let mut passed = true;
    for case in &cases {
        let diff = (case.lhs - case.rhs).norm();
        passed &= diff <= case.tol;
        let ratio = diff / case.tol;
        if ratio > worst_ratio || ratio.is_nan() {
            worst_ratio = ratio;
            worst = case;
        }
    }
    let mut report = OracleReport::compare(name, worst.lhs, worst.rhs, worst.tol);
    report.passed = passed && report.passed;
    report.with_note(format!("worst of {}: {}", cases.len(), worst.label))
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

type PointCheck = fn(&TorusParams, &ReducedParams, &ToleranceProfile) -> (Result<Vec<Case>>, f64);

/// Checks run for every parameter point, in report order.
const POINT_CHECKS: &[(&str, PointCheck)] = &[
    ("periodicity_exact", check_periodicity),
    ("zeros_via_integral", check_zeros),
    ("representation_integral_vs_parts", check_representation),
    ("continuation_vs_lattice_sum", check_lattice_sum),
    ("closed_integer_vs_lattice_sum", check_closed_integers),
    ("closed_s2_vs_parts_limit", check_s2_limit),
    ("s1_directional_limit", check_s1_limit),
    ("log_ratio_minus_i_pi", check_log_ratio),
    ("deriv_zero_two_forms", check_deriv_zero_forms),
    ("deriv_vs_finite_difference", check_deriv_fd),
    ("deriv_neg2_vs_richardson", check_deriv_richardson),
    ("deriv_explicit_vs_general", check_deriv_explicit),
    ("integral_i_vs_quadrature", check_integral_i),
    ("integral_j_vs_quadrature", check_integral_j),
    ("fourier_log_theta_vs_product", check_fourier),
    ("log_theta_derivative_two_forms", check_eq36),
    ("theta_quasi_periodicity", check_quasi_periodicity),
];

type GlobalCheck = fn(&ToleranceProfile) -> (Result<Vec<Case>>, f64);

/// Parameter-independent checks, run once after the per-point ones.
const GLOBAL_CHECKS: &[(&str, GlobalCheck)] = &[
    ("bernoulli_recurrence_exact", check_bernoulli),
    ("hurwitz_shift", check_hurwitz_shift),
    ("hurwitz_nonpositive_integers", check_hurwitz_bernoulli),
    ("polylog_truncation", check_polylog),
];

/// Names of all reports produced for a suite run on one valid point.
pub fn invariant_names() -> Vec<&'static str> {
    POINT_CHECKS
        .iter()
        .map(|(n, _)| *n)
        .chain(GLOBAL_CHECKS.iter().map(|(n, _)| *n))
        .collect()
}

/// Runs every check on every point; failures are reported, not raised.
///
/// Points that reduce onto the edge of the fundamental rectangle are outside
/// the continuation's hypotheses; for those only the boundary rejection of
/// the reduction is checked.
pub fn run_verification_suite(
    points: &[TorusParams],
    profile: &ToleranceProfile,
) -> Result<Vec<OracleReport>> {
    profile.validate()?;
    if points.is_empty() {
        return Err(Error::InvalidParameter(
            "verification needs at least one parameter point".into(),
        ));
    }
    let mut reports = Vec::new();
    for (index, p) in points.iter().enumerate() {
        let tag = format!("p{index}");
        match reduce_parameters(p) {
            Ok(rp) => {
                for (name, check) in POINT_CHECKS {
                    let (cases, tol) = check(p, &rp, profile);
                    reports.push(worst_case(&format!("{tag}.{name}"), cases, tol));
                }
            }
            Err(Error::Boundary { re, im }) => {
                let report = OracleReport::compare(
                    format!("{tag}.boundary_rejected"),
                    c(re, im),
                    c(re, im),
                    f64::MIN_POSITIVE,
                )
                .with_note("a reduces onto the rectangle boundary; reduction refuses it");
                reports.push(report);
            }
            Err(e) => reports.push(OracleReport::errored(
                format!("{tag}.reduction"),
                f64::MIN_POSITIVE,
                &e,
            )),
        }
    }
    for (name, check) in GLOBAL_CHECKS {
        let (cases, tol) = check(profile);
        reports.push(worst_case(name, cases, tol));
    }
    Ok(reports)
}

fn check_periodicity(
    p: &TorusParams,
    rp: &ReducedParams,
    _: &ToleranceProfile,
) -> (Result<Vec<Case>>, f64) {
    let tol = f64::MIN_POSITIVE;
    let run = || -> Result<Vec<Case>> {
        let s_values = [c(0.5, 0.3), c(2.5, -0.4)];
        let base: Vec<Complex64> = s_values
            .iter()
            .map(|&s| eval(s, rp, EVAL_TOL).map(|r| r.value))
            .collect::<Result<_>>()?;
        let mut cases = Vec::new();
        for m in -2..=2 {
            for n in -2..=2 {
                let shifted = TorusParams {
                    a: p.a + c(m as f64 * p.c, n as f64 * p.b),
                    ..*p
                };
                let rq = reduce_parameters(&shifted)?;
                for (s, b) in s_values.iter().zip(&base) {
                    let v = eval(*s, &rq, EVAL_TOL)?.value;
                    // Bitwise comparison: any difference fails.
                    let same = v.re.to_bits() == b.re.to_bits() && v.im.to_bits() == b.im.to_bits();
                    let rhs = if same { v } else { v + c(1.0, 0.0) };
                    cases.push(Case::new(format!("m={m} n={n} s={s}"), v, rhs, tol));
                }
            }
        }
        Ok(cases)
    };
    (run(), tol)
}

fn check_zeros(
    _: &TorusParams,
    rp: &ReducedParams,
    t: &ToleranceProfile,
) -> (Result<Vec<Case>>, f64) {
    let run = || -> Result<Vec<Case>> {
        let mut cases = Vec::new();
        for n in 0..=5 {
            let s = c(-(n as f64), 0.0);
            let dispatched = eval(s, rp, EVAL_TOL)?.value;
            if dispatched != c(0.0, 0.0) {
                cases.push(Case::new(
                    format!("dispatch n={n}"),
                    dispatched,
                    c(0.0, 0.0),
                    f64::MIN_POSITIVE,
                ));
            }
            let forced = eval_integral_lt1(s, rp, EVAL_TOL)?.value;
            cases.push(Case::new(
                format!("integral n={n}"),
                forced,
                c(0.0, 0.0),
                t.identity,
            ));
        }
        Ok(cases)
    };
    (run(), t.identity)
}

fn check_representation(
    _: &TorusParams,
    rp: &ReducedParams,
    t: &ToleranceProfile,
) -> (Result<Vec<Case>>, f64) {
    let run = || -> Result<Vec<Case>> {
        let grid = [
            c(-3.0, 0.0),
            c(-2.5, 2.0),
            c(-1.2, -1.0),
            c(-0.4, 0.0),
            c(0.3, 0.5),
            c(0.6, 2.0),
            c(0.9, -2.0),
        ];
        grid.iter()
            .map(|&s| {
                let lt1 = eval_integral_lt1(s, rp, EVAL_TOL)?.value;
                let parts = eval_parts_chain(s, rp, 2, EVAL_TOL)?.value;
                Ok(Case::new(format!("s={s}"), lt1, parts, t.representation))
            })
            .collect()
    };
    (run(), t.representation)
}

fn check_lattice_sum(
    _: &TorusParams,
    rp: &ReducedParams,
    t: &ToleranceProfile,
) -> (Result<Vec<Case>>, f64) {
    let run = || -> Result<Vec<Case>> {
        let grid = [
            c(2.2, 0.0),
            c(2.7, 1.3),
            c(3.5, -2.0),
            c(4.2, 0.6),
            c(5.0, 2.0),
        ];
        grid.iter()
            .map(|&s| {
                let continued = eval(s, rp, EVAL_TOL)?.value;
                let direct = direct_sum(s, rp, EVAL_TOL)?;
                Ok(Case::new(
                    format!("s={s}"),
                    continued,
                    direct.value,
                    direct.abs_err + t.lattice_extra,
                ))
            })
            .collect()
    };
    (run(), t.lattice_extra)
}

fn check_closed_integers(
    _: &TorusParams,
    rp: &ReducedParams,
    t: &ToleranceProfile,
) -> (Result<Vec<Case>>, f64) {
    let run = || -> Result<Vec<Case>> {
        (2..=6u32)
            .map(|n| {
                let closed = value_at_int(n, rp)?.value;
                let direct = direct_sum(c(n as f64, 0.0), rp, EVAL_TOL)?.value;
                Ok(Case::new(format!("n={n}"), closed, direct, t.closed_int))
            })
            .collect()
    };
    (run(), t.closed_int)
}

fn check_s2_limit(
    _: &TorusParams,
    rp: &ReducedParams,
    t: &ToleranceProfile,
) -> (Result<Vec<Case>>, f64) {
    let run = || -> Result<Vec<Case>> {
        let closed = value_at_int(2, rp)?.value;
        // Symmetric differences cancel the linear term; combine two radii.
        let sym = |eps: f64| -> Result<Complex64> {
            let up = eval_parts_chain(c(2.0 + eps, 0.0), rp, 3, EVAL_TOL)?.value;
            let down = eval_parts_chain(c(2.0 - eps, 0.0), rp, 3, EVAL_TOL)?.value;
            Ok(0.5 * (up + down))
        };
        let (coarse, fine) = (sym(1e-2)?, sym(1e-3)?);
        let limit = (100.0 * fine - coarse) / 99.0;
        Ok(vec![Case::new("s->2", limit, closed, t.richardson)])
    };
    (run(), t.richardson)
}

fn check_s1_limit(
    _: &TorusParams,
    rp: &ReducedParams,
    t: &ToleranceProfile,
) -> (Result<Vec<Case>>, f64) {
    let run = || -> Result<Vec<Case>> {
        let closed = value_at_int(1, rp)?.value;
        [0.0, PI / 2.0, PI]
            .iter()
            .map(|&theta| {
                let limit = directional_limit(c(1.0, 0.0), theta, rp)?;
                Ok(Case::new(
                    format!("theta={theta:.4}"),
                    limit,
                    closed,
                    t.s1_limit,
                ))
            })
            .collect()
    };
    (run(), t.s1_limit)
}

fn check_log_ratio(
    _: &TorusParams,
    rp: &ReducedParams,
    t: &ToleranceProfile,
) -> (Result<Vec<Case>>, f64) {
    let run = || -> Result<Vec<Case>> {
        let tracked = log_ratio_tracked(rp)?;
        Ok(vec![Case::new(
            "y: 0 -> 1",
            tracked,
            c(0.0, -PI),
            t.identity,
        )])
    };
    (run(), t.identity)
}

fn check_deriv_zero_forms(
    _: &TorusParams,
    rp: &ReducedParams,
    t: &ToleranceProfile,
) -> (Result<Vec<Case>>, f64) {
    let run = || -> Result<Vec<Case>> {
        let forms = deriv_at_zero_forms(rp)?;
        Ok(vec![Case::new(
            "closed vs I_0",
            forms.closed,
            forms.via_integral,
            t.identity,
        )])
    };
    (run(), t.identity)
}

fn check_deriv_fd(
    _: &TorusParams,
    rp: &ReducedParams,
    t: &ToleranceProfile,
) -> (Result<Vec<Case>>, f64) {
    let run = || -> Result<Vec<Case>> {
        let mut cases = Vec::new();
        let fd0 = numeric_s_derivative(c(0.0, 0.0), rp, FD_STEP)?;
        cases.push(Case::new(
            "s=0",
            deriv_at_zero(rp)?,
            fd0,
            t.finite_difference,
        ));
        for n in 1..=3u32 {
            let closed = deriv_at_neg_int(n, rp, 1e-15)?;
            let fd = numeric_s_derivative(c(-(n as f64), 0.0), rp, FD_STEP)?;
            cases.push(Case::new(
                format!("s=-{n}"),
                closed,
                fd,
                t.finite_difference,
            ));
        }
        Ok(cases)
    };
    (run(), t.finite_difference)
}

fn check_deriv_richardson(
    _: &TorusParams,
    rp: &ReducedParams,
    t: &ToleranceProfile,
) -> (Result<Vec<Case>>, f64) {
    let run = || -> Result<Vec<Case>> {
        let closed = deriv_at_neg_int(2, rp, 1e-15)?;
        let extrapolated = richardson_s_derivative(c(-2.0, 0.0), rp, 1e-3, 1e-4)?;
        Ok(vec![Case::new("s=-2", closed, extrapolated, t.richardson)])
    };
    (run(), t.richardson)
}

fn check_deriv_explicit(
    _: &TorusParams,
    rp: &ReducedParams,
    t: &ToleranceProfile,
) -> (Result<Vec<Case>>, f64) {
    let run = || -> Result<Vec<Case>> {
        Ok(vec![
            Case::new(
                "n=1",
                deriv_at_neg_one_closed(rp)?,
                deriv_at_neg_int(1, rp, 1e-15)?,
                t.identity,
            ),
            Case::new(
                "n=2",
                deriv_at_neg_two_closed(rp)?,
                deriv_at_neg_int(2, rp, 1e-15)?,
                t.identity,
            ),
        ])
    };
    (run(), t.identity)
}

fn check_integral_i(
    _: &TorusParams,
    rp: &ReducedParams,
    t: &ToleranceProfile,
) -> (Result<Vec<Case>>, f64) {
    let run = || -> Result<Vec<Case>> {
        let a = rp.a_over_c();
        (0..=5)
            .map(|n| {
                Ok(Case::new(
                    format!("n={n}"),
                    integral_i(n, a)?,
                    quad_i(n, a, QUAD_TOL)?,
                    t.identity,
                ))
            })
            .collect()
    };
    (run(), t.identity)
}

fn check_integral_j(
    _: &TorusParams,
    rp: &ReducedParams,
    t: &ToleranceProfile,
) -> (Result<Vec<Case>>, f64) {
    let run = || -> Result<Vec<Case>> {
        let a = rp.a_over_c();
        let mut cases = Vec::new();
        for k in 0..=6 {
            for l in 1..=4 {
                let scale = (2.0 * PI * l as f64 * a.im).cosh();
                cases.push(Case::new(
                    format!("k={k} l={l}"),
                    integral_j(k, l, a),
                    quad_j(k, l, a, QUAD_TOL)?,
                    t.trig * scale,
                ));
            }
        }
        Ok(cases)
    };
    (run(), t.trig)
}

/// Points `x + i h f` across the strip `0 < Im z < h`.
fn strip_points(rp: &ReducedParams) -> Vec<Complex64> {
    let h = rp.ctx().strip_height();
    let mut z = Vec::new();
    for x in [0.3, 1.2, 2.5] {
        for f in [0.2, 0.5, 0.8] {
            z.push(c(x, f * h));
        }
    }
    z.push(PI * rp.a_over_c());
    z
}

fn check_fourier(
    _: &TorusParams,
    rp: &ReducedParams,
    t: &ToleranceProfile,
) -> (Result<Vec<Case>>, f64) {
    let run = || -> Result<Vec<Case>> {
        strip_points(rp)
            .into_iter()
            .map(|z| {
                let fourier = log_theta1_fourier(z, rp.ctx())?.exp();
                let product = theta1(z, rp.ctx())?;
                Ok(Case::relative(
                    format!("z={z}"),
                    fourier,
                    product,
                    t.identity,
                ))
            })
            .collect()
    };
    (run(), t.identity)
}

fn check_eq36(
    _: &TorusParams,
    rp: &ReducedParams,
    t: &ToleranceProfile,
) -> (Result<Vec<Case>>, f64) {
    let run = || -> Result<Vec<Case>> {
        let q = rp.q();
        strip_points(rp)
            .into_iter()
            .map(|z| {
                let s2 = (2.0 * z).sin();
                let c2 = (2.0 * z).cos();
                let mut sum = c(0.0, 0.0);
                for n in 1..=100_000 {
                    let q2n = q.powi(2 * n);
                    let term = q2n * s2 / (1.0 - 2.0 * q2n * c2 + q2n * q2n);
                    sum += term;
                    if term.norm() < 1e-18 * sum.norm().max(1e-300) {
                        break;
                    }
                }
                let product_form = z.cos() / z.sin() + 4.0 * sum;
                let series_form = log_theta1_deriv(1, z, rp.ctx())?;
                Ok(Case::new(
                    format!("z={z}"),
                    series_form,
                    product_form,
                    t.trig * product_form.norm().max(1.0),
                ))
            })
            .collect()
    };
    (run(), t.trig)
}

fn check_quasi_periodicity(
    _: &TorusParams,
    rp: &ReducedParams,
    t: &ToleranceProfile,
) -> (Result<Vec<Case>>, f64) {
    let run = || -> Result<Vec<Case>> {
        let ctx = rp.ctx();
        let tau = ctx.tau();
        let mut cases = Vec::new();
        for z in [c(0.3, 0.1), c(1.1, -0.4), PI * rp.a_over_c()] {
            let base = theta1(z, ctx)?;
            for m in -1..=1 {
                for n in -1..=1 {
                    let (mf, nf) = (m as f64, n as f64);
                    let shifted = theta1(z + (mf + nf * tau) * PI, ctx)?;
                    let sign = if (m + n) % 2 == 0 { 1.0 } else { -1.0 };
                    let factor =
                        sign * (-Complex64::i() * (2.0 * nf * z + PI * nf * nf * tau)).exp();
                    cases.push(Case::relative(
                        format!("z={z} m={m} n={n}"),
                        shifted,
                        factor * base,
                        t.identity,
                    ));
                }
            }
        }
        Ok(cases)
    };
    (run(), t.identity)
}

fn check_bernoulli(_: &ToleranceProfile) -> (Result<Vec<Case>>, f64) {
    let tol = f64::MIN_POSITIVE;
    let run = || -> Result<Vec<Case>> {
        let mut cases = Vec::new();
        for n in 1..=20usize {
            let mut sum = BigRational::zero();
            for k in 0..=n {
                sum += BigRational::from_integer(binomial_exact(n + 1, k)) * bernoulli_number(k);
            }
            let lhs = if sum.is_zero() {
                c(0.0, 0.0)
            } else {
                c(1.0, 0.0)
            };
            cases.push(Case::new(format!("n={n}"), lhs, c(0.0, 0.0), tol));
        }
        Ok(cases)
    };
    (run(), tol)
}

fn check_hurwitz_shift(t: &ToleranceProfile) -> (Result<Vec<Case>>, f64) {
    let run = || -> Result<Vec<Case>> {
        let mut cases = Vec::new();
        for re in [-4.0, -2.5, -1.0, 0.5, 2.0, 3.5] {
            for im in [0.0, 1.5] {
                let s = c(re, im);
                for k in 1..=9 {
                    let y = k as f64 / 10.0;
                    let lhs = hurwitz_zeta(s, y)?;
                    let rhs = (-s * y.ln()).exp() + hurwitz_zeta(s, y + 1.0)?;
                    cases.push(Case::new(format!("s={s} y={y}"), lhs, rhs, t.identity));
                }
            }
        }
        Ok(cases)
    };
    (run(), t.identity)
}

fn check_hurwitz_bernoulli(t: &ToleranceProfile) -> (Result<Vec<Case>>, f64) {
    let run = || -> Result<Vec<Case>> {
        let mut cases = Vec::new();
        for n in 0..=8usize {
            for y in [0.1, 0.35, 0.7, 1.0] {
                let lhs = hurwitz_zeta(c(-(n as f64), 0.0), y)?;
                let rhs = -bernoulli_poly(n + 1, c(y, 0.0)) / (n + 1) as f64;
                cases.push(Case::new(format!("n={n} y={y}"), lhs, rhs, t.trig));
            }
        }
        Ok(cases)
    };
    (run(), t.trig)
}

fn check_polylog(t: &ToleranceProfile) -> (Result<Vec<Case>>, f64) {
    let run = || -> Result<Vec<Case>> {
        let mut cases = Vec::new();
        for z in [
            Complex64::from_polar(0.9, 0.7),
            Complex64::from_polar(0.5, -2.0),
        ] {
            let log = -(1.0 - z).ln();
            cases.push(Case::new(
                format!("n=1 z={z:.3}"),
                polylog(1, z)?,
                log,
                t.trig,
            ));
            // Smallest terms first, so the rounding differs from a forward sum.
            let terms = 400_000u32;
            for n in [2u32, 3, 5] {
                let mut direct = c(0.0, 0.0);
                for k in (1..=terms).rev() {
                    let zk = (k as f64 * z.ln()).exp();
                    direct += zk / (k as f64).powi(n as i32);
                }
                cases.push(Case::new(
                    format!("n={n} z={z:.3}"),
                    polylog(n, z)?,
                    direct,
                    t.trig,
                ));
            }
        }
        Ok(cases)
    };
    (run(), t.trig)
}
