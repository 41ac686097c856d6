//! Bernoulli numbers from the recurrence `sum_{k=0}^{n} C(n+1,k) B_k = 0`,
//! `B_0 = 1`, which fixes `B_1 = -1/2`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Size of the cached floating-point table.
const F64_TABLE: usize = 256;

/// Exact binomial coefficient.
pub fn binomial_exact(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Binomial coefficient as a float; exact for every value used here.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc.round()
}

/// `B_0, ..., B_n` as exact rationals.
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut table: Vec<BigRational> = Vec::with_capacity(n + 1);
    table.push(BigRational::one());
    for m in 1..=n {
        let mut acc = BigRational::zero();
        for (k, bk) in table.iter().enumerate() {
            if bk.is_zero() {
                continue;
            }
            acc += BigRational::from_integer(binomial_exact(m + 1, k)) * bk;
        }
        table.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    table
}

/// `B_k` as an exact rational.
pub fn bernoulli_number(k: usize) -> BigRational {
    if k >= 3 && k % 2 == 1 {
        return BigRational::zero();
    }
    bernoulli_numbers(k).pop().unwrap_or_else(BigRational::one)
}

fn f64_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        bernoulli_numbers(F64_TABLE - 1)
            .iter()
            .map(|b| b.to_f64().unwrap_or(f64::NAN))
            .collect()
    })
}

/// `B_k` rounded to double precision.
pub fn bernoulli_f64(k: usize) -> f64 {
    match f64_table().get(k) {
        Some(&b) => b,
        None => bernoulli_number(k).to_f64().unwrap_or(f64::NAN),
    }
}

/// Bernoulli polynomial `B_n(x) = sum_k C(n,k) B_k x^(n-k)`.
pub fn bernoulli_poly(n: usize, x: Complex64) -> Complex64 {
    // Horner in x, highest power of x pairs with B_0.
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..=n {
        acc = acc * x + binomial(n, k) * bernoulli_f64(k);
    }
    acc
}
