use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use torus_zeta_core::specfun::{
    bernoulli_number, bernoulli_poly, dedekind_eta, hurwitz_zeta, log_dedekind_eta,
    log_theta1_deriv, log_theta1_fourier, polylog, theta1, SeriesTruncation, ThetaContext,
};
use torus_zeta_core::Error;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ctx(q: f64) -> ThetaContext {
    ThetaContext::from_nome(q, SeriesTruncation::default()).unwrap()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Logs agree up to a multiple of `2 pi i`.
fn same_log(x: Complex64, y: Complex64) -> f64 {
    let d = x - y;
    let turns = (d.im / (2.0 * PI)).round();
    (d - c(0.0, 2.0 * PI * turns)).norm()
}

#[test]
fn bernoulli_examples() {
    assert_eq!(bernoulli_number(0), BigRational::one());
    assert_eq!(bernoulli_number(1), rat(-1, 2));
    assert_eq!(bernoulli_number(3), BigRational::zero());
    assert_eq!(bernoulli_number(12), rat(-691, 2730));
}

#[test]
fn bernoulli_polynomial_examples() {
    assert_eq!(bernoulli_poly(0, c(3.7, -1.2)), c(1.0, 0.0));
    assert!((bernoulli_poly(1, c(0.75, 0.0)) - c(0.25, 0.0)).norm() < 1e-15);
    assert!((bernoulli_poly(2, c(0.5, 0.0)) - c(-1.0 / 12.0, 0.0)).norm() < 1e-15);
}

#[test]
fn hurwitz_examples() {
    let basel = hurwitz_zeta(c(2.0, 0.0), 1.0).unwrap();
    assert!((basel - c(PI * PI / 6.0, 0.0)).norm() < 1e-13);

    let v = hurwitz_zeta(c(-3.0, 0.0), 0.7).unwrap();
    let expected = -bernoulli_poly(4, c(0.7, 0.0)) / 4.0;
    assert!((v - expected).norm() < 1e-14);

    let v = hurwitz_zeta(c(0.0, 0.0), 0.25).unwrap();
    assert!((v - c(0.25, 0.0)).norm() < 1e-14);
}

#[test]
fn hurwitz_against_direct_sum() {
    // Re s = 3: a long sum plus the integral tail is accurate to ~1e-13.
    let s = c(3.0, 0.8);
    let y = 0.37;
    let n = 200_000;
    let mut direct = c(0.0, 0.0);
    for k in (0..n).rev() {
        direct += (c(k as f64 + y, 0.0)).powc(-s);
    }
    let w = n as f64 + y;
    direct += c(w, 0.0).powc(c(1.0, 0.0) - s) / (s - 1.0) + 0.5 * c(w, 0.0).powc(-s);
    let v = hurwitz_zeta(s, y).unwrap();
    assert!((v - direct).norm() < 1e-12, "{v} vs {direct}");
}

#[test]
fn hurwitz_refuses_the_pole() {
    assert!(matches!(
        hurwitz_zeta(c(1.0, 0.0), 0.5),
        Err(Error::PoleAtOne { .. })
    ));
}

#[test]
fn theta1_examples() {
    let k = ctx(0.2);
    assert_eq!(theta1(c(0.0, 0.0), &k).unwrap().norm(), 0.0);

    let z = c(0.3, 0.1);
    let shifted = theta1(z + PI, &k).unwrap();
    assert!((shifted + theta1(z, &k).unwrap()).norm() < 1e-14);

    let q = 1e-6;
    let v = theta1(c(1.0, 0.0), &ctx(q)).unwrap();
    let lead = 2.0 * q.powf(0.25) * 1f64.sin();
    assert!((v.re - lead).abs() / lead < 1e-10 && v.im.abs() < 1e-20);
}

#[test]
fn log_theta_fourier_examples() {
    let k = ctx((-PI).exp());
    let z = c(0.5, 0.2);
    let lhs = log_theta1_fourier(z, &k).unwrap().exp();
    let rhs = theta1(z, &k).unwrap();
    assert!((lhs - rhs).norm() < 1e-12);

    // Sum of logarithms of the product factors.
    let q: f64 = 0.4;
    let z = c(1.0, 0.3);
    let mut product_log = (2.0 * q.powf(0.25) * z.sin()).ln();
    let mut n = 1;
    loop {
        let q2n = q.powi(2 * n);
        let f = c(1.0, 0.0) - 2.0 * q2n * (2.0 * z).cos() + q2n * q2n;
        product_log += f.ln() + (1.0 - q2n).ln();
        if q2n < 1e-20 {
            break;
        }
        n += 1;
    }
    let v = log_theta1_fourier(z, &ctx(q)).unwrap();
    assert!(same_log(v, product_log) < 1e-12);

    // Tiny nome: only the leading terms survive.
    let k = ctx(1e-12);
    let z = c(0.8, 0.5);
    let v = log_theta1_fourier(z, &k).unwrap();
    let limit = (2.0 * z.sin()).ln() + k.q().ln() / 6.0 + c(0.0, PI) * k.tau() / 12.0;
    assert!(same_log(v, limit) < 1e-10);
}

#[test]
fn log_theta_fourier_refuses_outside_strip() {
    let k = ctx(0.3);
    assert!(matches!(
        log_theta1_fourier(c(0.5, -0.1), &k),
        Err(Error::StripViolation { .. })
    ));
    let top = k.strip_height();
    assert!(matches!(
        log_theta1_fourier(c(0.5, top + 0.1), &k),
        Err(Error::StripViolation { .. })
    ));
}

#[test]
fn log_derivative_examples() {
    let v = log_theta1_deriv(1, c(PI / 2.0, 0.0), &ctx(0.3)).unwrap();
    assert!(v.norm() < 1e-15);

    let q: f64 = 0.5;
    let z = c(0.7, 0.2);
    let mut second = z.cos() / z.sin();
    for n in 1..200 {
        let q2n = q.powi(2 * n);
        let den = c(1.0, 0.0) - 2.0 * q2n * (2.0 * z).cos() + q2n * q2n;
        second += 4.0 * q2n * (2.0 * z).sin() / den;
    }
    let v = log_theta1_deriv(1, z, &ctx(q)).unwrap();
    assert!((v - second).norm() < 1e-12);
}

#[test]
fn log_derivatives_by_finite_differences() {
    let k = ctx(0.4);
    let z = c(0.6, 0.1);
    let h = 1e-5;
    for j in 2..=5 {
        let up = log_theta1_deriv(j - 1, z + h, &k).unwrap();
        let down = log_theta1_deriv(j - 1, z - h, &k).unwrap();
        let fd = (up - down) / (2.0 * h);
        let v = log_theta1_deriv(j, z, &k).unwrap();
        assert!(
            (v - fd).norm() < 1e-6 * v.norm().max(1.0),
            "j={j}: {v} vs {fd}"
        );
    }
}

#[test]
fn log_derivative_refuses_zeros() {
    let k = ctx(0.3);
    let zero = c(PI, 0.0) + k.tau() * PI;
    assert!(matches!(
        log_theta1_deriv(1, zero, &k),
        Err(Error::LatticeZero { .. })
    ));
}

#[test]
fn eta_examples() {
    let k = ctx(1e-30);
    let lead = (c(0.0, PI) * k.tau() / 12.0).exp();
    assert!((dedekind_eta(&k).unwrap() - lead).norm() < 1e-15 * lead.norm());

    let q: f64 = 0.5;
    let k = ctx(q);
    let mut expected = c(0.0, PI) * k.tau() / 12.0;
    for n in 1..400 {
        expected += (1.0 - q.powi(2 * n)).ln();
    }
    assert!((log_dedekind_eta(&k).unwrap() - expected).norm() < 1e-12);

    let q: f64 = 0.7;
    let k = ctx(q);
    let mut g = 1.0;
    for n in 1..2000 {
        g *= 1.0 - q.powi(2 * n);
    }
    let expected = (c(0.0, PI) * k.tau() / 12.0).exp() * g;
    assert!((dedekind_eta(&k).unwrap() - expected).norm() < 1e-12);
}

#[test]
fn polylog_examples() {
    for n in 1..=6 {
        assert_eq!(polylog(n, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
    }
    let v = polylog(1, c(0.5, 0.0)).unwrap();
    assert!((v - c(2f64.ln(), 0.0)).norm() < 1e-15);
    assert!(matches!(polylog(2, c(1.0, 0.0)), Err(Error::Radius { .. })));
}

#[test]
fn polylog_derivative_ladder() {
    // d/dy Li_{n+1}(e^{2 pi i y}) = 2 pi i Li_n(e^{2 pi i y})
    let y = c(0.1, 0.3);
    let h = 1e-5;
    let at = |n: u32, y: Complex64| polylog(n, (c(0.0, 2.0 * PI) * y).exp()).unwrap();
    for n in 1..=2 {
        let fd = (at(n + 1, y + h) - at(n + 1, y - h)) / (2.0 * h);
        let rhs = c(0.0, 2.0 * PI) * at(n, y);
        assert!((fd - rhs).norm() < 1e-6, "n={n}: {fd} vs {rhs}");
    }
}

#[test]
fn fourier_log_across_the_strip() {
    for q in [0.05, 0.3, 0.7] {
        let k = ctx(q);
        let top = k.strip_height();
        for i in 1..8 {
            for r in 0..6 {
                let z = c(-1.0 + 0.5 * r as f64, top * i as f64 / 8.0);
                let log = log_theta1_fourier(z, &k).unwrap();
                let t = theta1(z, &k).unwrap();
                assert!((log.exp() - t).norm() <= 1e-10 * t.norm(), "q={q} z={z}");

                let h = 1e-5;
                let up = log_theta1_fourier(z + h, &k).unwrap();
                let down = log_theta1_fourier(z - h, &k).unwrap();
                // The principal branch may jump by 2 pi i between the two samples.
                let mut step = up - down;
                step.im -= 2.0 * PI * (step.im / (2.0 * PI)).round();
                let fd = step / (2.0 * h);
                let d = log_theta1_deriv(1, z, &k).unwrap();
                assert!((fd - d).norm() < 1e-6, "q={q} z={z}");
            }
        }
    }
}
