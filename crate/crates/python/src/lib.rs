//! Python module `torus_zeta`.

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use torus_zeta_core::barnes::{deriv_at_neg_int, deriv_at_zero, eval_with, Route};
use torus_zeta_core::oracles::{
    default_grid, run_verification_suite, OracleReport, ToleranceProfile,
};
use torus_zeta_core::{
    reduce_parameters, value_at_int as closed_value, Complex64, Error, ReducedParams, TorusParams,
};

fn py_err(e: Error) -> PyErr {
    if e.is_domain() {
        PyValueError::new_err(e.to_string())
    } else {
        PyArithmeticError::new_err(e.to_string())
    }
}

fn reduce(a: Complex64, b: f64, c: f64) -> PyResult<ReducedParams> {
    reduce_parameters(&TorusParams { a, b, c }).map_err(py_err)
}

fn route(method: &str) -> PyResult<Route> {
    match method {
        "auto" => Ok(Route::Auto),
        "direct-sum" => Ok(Route::DirectSum),
        "integral" => Ok(Route::Integral),
        "parts" => Ok(Route::Parts),
        other => Err(PyValueError::new_err(format!(
            "unknown method {other:?}; expected auto, direct-sum, integral or parts"
        ))),
    }
}

/// `zeta(s, a, b, c)` as `(value, method, abs_err)`.
#[pyfunction]
#[pyo3(signature = (s, a, b, c, tol = 1e-10, method = "auto"))]
pub fn zeta(
    s: Complex64,
    a: Complex64,
    b: f64,
    c: f64,
    tol: f64,
    method: &str,
) -> PyResult<(Complex64, &'static str, f64)> {
    let rp = reduce(a, b, c)?;
    let r = eval_with(s, &rp, tol, route(method)?).map_err(py_err)?;
    Ok((r.value, r.method.as_str(), r.abs_err))
}

/// `d/ds zeta(s, a, b, c)` at `s = -n`.
#[pyfunction]
#[pyo3(signature = (n, a, b, c, tol = 1e-10))]
pub fn deriv(n: u32, a: Complex64, b: f64, c: f64, tol: f64) -> PyResult<Complex64> {
    let rp = reduce(a, b, c)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(PyValueError::new_err(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if n == 0 {
        deriv_at_zero(&rp).map_err(py_err)
    } else {
        deriv_at_neg_int(n, &rp, tol).map_err(py_err)
    }
}

/// Closed-form value at a positive integer.
#[pyfunction]
pub fn value_at_int(n: u32, a: Complex64, b: f64, c: f64) -> PyResult<Complex64> {
    let rp = reduce(a, b, c)?;
    closed_value(n, &rp).map(|r| r.value).map_err(py_err)
}

#[pyclass(frozen, get_all, module = "torus_zeta")]
pub struct Report {
    name: String,
    lhs: Complex64,
    rhs: Complex64,
    abs_diff: f64,
    tolerance: f64,
    passed: bool,
}

#[pymethods]
impl Report {
    fn __repr__(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        format!(
            "<{verdict} {}: {:e} <= {:e}>",
            self.name, self.abs_diff, self.tolerance
        )
    }
}

impl From<OracleReport> for Report {
    fn from(r: OracleReport) -> Self {
        Self {
            name: r.name,
            lhs: r.lhs,
            rhs: r.rhs,
            abs_diff: r.abs_diff,
            tolerance: r.tolerance,
            passed: r.passed,
        }
    }
}

/// Runs the verification suite on one point, or on the default grid when
/// no point is given. `tol` replaces every tolerance of the default profile.
#[pyfunction]
#[pyo3(signature = (a = None, b = None, c = None, tol = None))]
pub fn verify(
    py: Python<'_>,
    a: Option<Complex64>,
    b: Option<f64>,
    c: Option<f64>,
    tol: Option<f64>,
) -> PyResult<Vec<Report>> {
    let points = match (a, b, c) {
        (Some(a), Some(b), Some(c)) => vec![TorusParams { a, b, c }],
        (None, None, None) => default_grid(),
        _ => return Err(PyValueError::new_err("give all of a, b, c or none of them")),
    };
    let profile = tol.map(ToleranceProfile::uniform).unwrap_or_default();
    let reports = py
        .detach(|| run_verification_suite(&points, &profile))
        .map_err(py_err)?;
    Ok(reports.into_iter().map(Report::from).collect())
}

#[pymodule]
pub fn torus_zeta(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(zeta, m)?)?;
    m.add_function(wrap_pyfunction!(deriv, m)?)?;
    m.add_function(wrap_pyfunction!(value_at_int, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_class::<Report>()?;
    Ok(())
}
