use std::f64::consts::PI;

use num_complex::Complex64;
use torus_zeta_core::quadrature::{integrate, integrate_01, integrate_endpoint_power, RULE_SIZE};
use torus_zeta_core::Error;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

type Integrand = Box<dyn Fn(f64) -> Complex64>;

/// Integrands on [0, 1] with known integrals.
fn battery() -> Vec<(&'static str, Integrand, Complex64)> {
    let i = c(0.0, 1.0);
    let e = std::f64::consts::E;
    vec![
        ("one", Box::new(|_| c(1.0, 0.0)), c(1.0, 0.0)),
        ("y^5", Box::new(|y| c(y.powi(5), 0.0)), c(1.0 / 6.0, 0.0)),
        ("y^12", Box::new(|y| c(y.powi(12), 0.0)), c(1.0 / 13.0, 0.0)),
        ("y^3 - iy", Box::new(|y| c(y.powi(3), -y)), c(0.25, -0.5)),
        ("exp(y)", Box::new(|y| c(y.exp(), 0.0)), c(e - 1.0, 0.0)),
        (
            "exp(-20y)",
            Box::new(|y| c((-20.0 * y).exp(), 0.0)),
            c((1.0 - (-20f64).exp()) / 20.0, 0.0),
        ),
        (
            "exp(2 pi i y)",
            Box::new(move |y| (2.0 * PI * i * y).exp()),
            c(0.0, 0.0),
        ),
        (
            "exp(7iy)",
            Box::new(move |y| (7.0 * i * y).exp()),
            ((7.0 * i).exp() - 1.0) / (7.0 * i),
        ),
        (
            "cos(40y)",
            Box::new(|y| c((40.0 * y).cos(), 0.0)),
            c((40f64).sin() / 40.0, 0.0),
        ),
        (
            "sin(100y)",
            Box::new(|y| c((100.0 * y).sin(), 0.0)),
            c((1.0 - (100f64).cos()) / 100.0, 0.0),
        ),
        (
            "y cos(2 pi y)",
            Box::new(|y| c(y * (2.0 * PI * y).cos(), 0.0)),
            c(0.0, 0.0),
        ),
        (
            "y^2 cos(2 pi y)",
            Box::new(|y| c(y * y * (2.0 * PI * y).cos(), 0.0)),
            c(1.0 / (2.0 * PI * PI), 0.0),
        ),
        ("y exp(y)", Box::new(|y| c(y * y.exp(), 0.0)), c(1.0, 0.0)),
        (
            "y^2 exp(3iy)",
            Box::new(move |y| y * y * (3.0 * i * y).exp()),
            {
                // antiderivative exp(3iy) (y^2/(3i) + 2y/9 - 2/(27i))
                let k = 3.0 * i;
                let at =
                    |y: f64| (k * y).exp() * (y * y / k - 2.0 * y / (k * k) + 2.0 / (k * k * k));
                at(1.0) - at(0.0)
            },
        ),
        (
            "1/(1+y^2)",
            Box::new(|y| c(1.0 / (1.0 + y * y), 0.0)),
            c(PI / 4.0, 0.0),
        ),
        (
            "1/(y+0.01)",
            Box::new(|y| c(1.0 / (y + 0.01), 0.0)),
            c((101f64).ln(), 0.0),
        ),
        ("sqrt(y)", Box::new(|y| c(y.sqrt(), 0.0)), c(2.0 / 3.0, 0.0)),
        (
            "ln(y + 1)",
            Box::new(|y| c((y + 1.0).ln(), 0.0)),
            c(2.0 * 2f64.ln() - 1.0, 0.0),
        ),
        (
            "exp((1+5i) y)",
            Box::new(move |y| ((1.0 + 5.0 * i) * y).exp()),
            ((1.0 + 5.0 * i).exp() - 1.0) / (1.0 + 5.0 * i),
        ),
        (
            "y^4 sin(9y) + i exp(-y)",
            Box::new(move |y| c(y.powi(4) * (9.0 * y).sin(), (-y).exp())),
            {
                // repeated integration by parts for y^4 sin(ky)
                let k = 9.0f64;
                let f = |y: f64| {
                    let (s, co) = ((k * y).sin(), (k * y).cos());
                    -y.powi(4) * co / k
                        + 4.0 * y.powi(3) * s / k.powi(2)
                        + 12.0 * y * y * co / k.powi(3)
                        - 24.0 * y * s / k.powi(4)
                        - 24.0 * co / k.powi(5)
                };
                c(f(1.0) - f(0.0), 1.0 - (-1f64).exp())
            },
        ),
    ]
}

#[test]
fn documented_examples() {
    let r = integrate_01(|_| c(1.0, 0.0), 1e-12).unwrap();
    assert!((r.value - c(1.0, 0.0)).norm() < 1e-15);
    assert!(r.abs_err <= 50.0 * f64::EPSILON);
    assert!(r.evaluations >= RULE_SIZE);

    let r = integrate_01(|y| (c(0.0, 2.0 * PI) * y).exp(), 1e-12).unwrap();
    assert!(r.value.norm() < 1e-12);

    let r = integrate_01(|y| c(y.powi(3), -y), 1e-12).unwrap();
    assert!((r.value - c(0.25, -0.5)).norm() < 1e-14);
}

#[test]
fn error_estimate_bounds_true_error() {
    let cases = battery();
    assert_eq!(cases.len(), 20);
    for (name, f, exact) in cases {
        for tol in [1e-6, 1e-10, 1e-13] {
            let r = integrate_01(&f, tol).unwrap();
            let err = (r.value - exact).norm();
            assert!(r.abs_err >= 0.0);
            assert!(
                err <= r.abs_err.max(1e-15),
                "{name} tol={tol}: error {err:e} > estimate {:e}",
                r.abs_err
            );
            assert!(
                r.abs_err <= tol.max(1e-14),
                "{name}: estimate {:e} above tol {tol:e}",
                r.abs_err
            );
        }
    }
}

#[test]
fn bitwise_determinism() {
    for (_, f, _) in battery() {
        let a = integrate_01(&f, 1e-11).unwrap();
        let b = integrate_01(&f, 1e-11).unwrap();
        assert_eq!(a.value.re.to_bits(), b.value.re.to_bits());
        assert_eq!(a.value.im.to_bits(), b.value.im.to_bits());
        assert_eq!(a.evaluations, b.evaluations);
    }
}

#[test]
fn arbitrary_interval() {
    let r = integrate(|x| c(x.sin(), 0.0), 0.0, PI, 1e-12).unwrap();
    assert!((r.value - c(2.0, 0.0)).norm() < 1e-12);
}

#[test]
fn endpoint_power_singularity() {
    // int_0^1 y^(-1/2) e^y dy = 2 * sum_k 1 / (k! (2k + 1))
    let beta = c(-0.5, 0.0);
    let taylor: Vec<Complex64> = (0..8).map(|_| c(1.0, 0.0)).collect();
    let r = integrate_endpoint_power(beta, |y| c(y.exp(), 0.0), &taylor, 1e-12).unwrap();
    let mut exact = 0.0;
    let mut fact = 1.0;
    for k in 0..30 {
        if k > 0 {
            fact *= k as f64;
        }
        exact += 2.0 / (fact * (2 * k + 1) as f64);
    }
    assert!((r.value.re - exact).abs() < 1e-11, "{} vs {exact}", r.value);
}

#[test]
fn failures_are_typed() {
    assert!(matches!(
        integrate_01(|y| c(1.0 / y, 0.0), 1e-10),
        Err(Error::NonFinite { .. })
    ));
    assert!(matches!(
        integrate_01(|_| c(1.0, 0.0), 0.0),
        Err(Error::InvalidParameter(_))
    ));
}
