use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use torus_zeta_core::barnes::{eval_integral_lt1, eval_parts_chain, eval_with, Route};
use torus_zeta_core::quadrature::integrate_01;
use torus_zeta_core::specfun::{
    bernoulli_poly, hurwitz_zeta, theta1, SeriesTruncation, ThetaContext,
};
use torus_zeta_core::{eval, reduce_parameters, TorusParams};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A point strictly inside the rectangle, on a grid of thousandths.
fn inner_point() -> impl Strategy<Value = TorusParams> {
    (
        1u32..999,
        1u32..999,
        prop::sample::select(vec![0.5, 1.0, 1.7, 2.0]),
        prop::sample::select(vec![1.0, 1.7]),
    )
        .prop_map(|(u, v, b, cc)| TorusParams {
            a: c(u as f64 / 1000.0 * cc, v as f64 / 1000.0 * b),
            b,
            c: cc,
        })
        .prop_filter("away from the edges", |p| {
            let (x, y) = (p.a.re / p.c, p.a.im / p.b);
            x > 0.01 && x < 0.99 && y > 0.01 && y < 0.99
        })
}

fn s_value() -> impl Strategy<Value = Complex64> {
    (-3.0..4.5f64, -2.0..2.0f64)
        .prop_map(|(re, im)| c(re, im))
        .prop_filter("away from integers", |s| {
            (s.re - s.re.round()).abs() > 0.05 || s.im.abs() > 0.05
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn periodicity_is_bitwise(p in inner_point(), m in -2i32..=2, n in -2i32..=2, s in s_value()) {
        let rp = reduce_parameters(&p).unwrap();
        let shifted = TorusParams { a: p.a + c(m as f64 * p.c, n as f64 * p.b), ..p };
        let rq = reduce_parameters(&shifted).unwrap();
        prop_assert_eq!(rp, rq);
        let x = eval(s, &rp, 1e-12).unwrap().value;
        let y = eval(s, &rq, 1e-12).unwrap().value;
        prop_assert_eq!(x.re.to_bits(), y.re.to_bits());
        prop_assert_eq!(x.im.to_bits(), y.im.to_bits());
    }

    #[test]
    fn conjugate_parameters_conjugate_values(p in inner_point(), s in s_value()) {
        // m -> -m in the lattice sum: zeta(conj s, conj a) = conj zeta(s, a).
        let rp = reduce_parameters(&p).unwrap();
        let mirrored = TorusParams { a: p.a.conj() + c(0.0, p.b), ..p };
        let rq = reduce_parameters(&mirrored).unwrap();
        let x = eval(s, &rp, 1e-12).unwrap();
        let y = eval(s.conj(), &rq, 1e-12).unwrap();
        let tol = 1e-9 * x.value.norm().max(1.0) + x.abs_err + y.abs_err;
        prop_assert!((x.value.conj() - y.value).norm() <= tol, "{} vs {}", x.value, y.value);
    }

    #[test]
    fn representations_agree_below_one(p in inner_point(), re in -3.0..0.9f64, im in -2.0..2.0f64) {
        let s = c(re, im);
        prop_assume!((re - re.round()).abs() > 0.02 || im.abs() > 0.02);
        let rp = reduce_parameters(&p).unwrap();
        let a = eval_integral_lt1(s, &rp, 1e-12).unwrap().value;
        let b = eval_parts_chain(s, &rp, 2, 1e-12).unwrap().value;
        prop_assert!((a - b).norm() < 1e-8, "{} vs {}", a, b);
    }

    #[test]
    fn zeros_through_the_integral(p in inner_point(), n in 0u32..=5) {
        let rp = reduce_parameters(&p).unwrap();
        let v = eval_with(c(-(n as f64), 0.0), &rp, 1e-12, Route::Integral).unwrap().value;
        prop_assert!(v.norm() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hurwitz_shift(re in -6.0..6.0f64, im in -8.0..8.0f64, y in 0.05..1.0f64) {
        let s = c(re, im);
        prop_assume!((s - 1.0).norm() > 0.1);
        let lhs = hurwitz_zeta(s, y).unwrap();
        let rhs = c(y, 0.0).powc(-s) + hurwitz_zeta(s, y + 1.0).unwrap();
        let scale = lhs.norm().max(c(y, 0.0).powc(-s).norm()).max(1.0);
        prop_assert!((lhs - rhs).norm() <= 1e-10 * scale, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn bernoulli_difference(n in 1usize..=20, x in -2.0..2.0f64) {
        let lhs = bernoulli_poly(n, c(x + 1.0, 0.0)) - bernoulli_poly(n, c(x, 0.0));
        let rhs = n as f64 * x.powi(n as i32 - 1);
        let scale = 3f64.powi(n as i32) * n as f64;
        prop_assert!((lhs.re - rhs).abs() <= 1e-13 * scale && lhs.im == 0.0);
    }

    #[test]
    fn theta_quasi_periods(q in 0.05..0.6f64, re in -2.0..2.0f64, im in -0.5..0.5f64) {
        let k = ThetaContext::from_nome(q, SeriesTruncation::default()).unwrap();
        let z = c(re, im);
        let t = theta1(z, &k).unwrap();
        let by_pi = theta1(z + PI, &k).unwrap();
        prop_assert!((by_pi + t).norm() <= 1e-12 * t.norm().max(1.0));
        let by_tau = theta1(z + PI * k.tau(), &k).unwrap();
        let expected = -t * (c(0.0, -2.0) * z).exp() / q;
        prop_assert!((by_tau - expected).norm() <= 1e-10 * expected.norm().max(1.0));
    }

    #[test]
    fn quadrature_is_linear(
        coef in prop::collection::vec(-3.0..3.0f64, 4),
        freq in 0.0..30.0f64,
        alpha in (-0.5..0.5f64, -0.5..0.5f64),
        beta in (-0.5..0.5f64, -0.5..0.5f64),
    ) {
        let tol = 1e-10;
        let (al, be) = (c(alpha.0, alpha.1), c(beta.0, beta.1));
        let f = |y: f64| c(coef[0] + coef[1] * y, coef[2] * y * y) * (c(0.0, freq) * y).exp();
        let g = |y: f64| c((coef[3] * y).exp(), (freq * y).sin());
        let combined = integrate_01(|y| al * f(y) + be * g(y), tol).unwrap().value;
        let parts = al * integrate_01(f, tol).unwrap().value + be * integrate_01(g, tol).unwrap().value;
        prop_assert!((combined - parts).norm() < 2.0 * tol);
    }
}
