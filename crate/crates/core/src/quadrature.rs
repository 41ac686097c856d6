//! Adaptive Gauss-Kronrod (10/21) integration of complex-valued integrands
//! on bounded intervals, plus a graded-mesh rule for integrable power
//! singularities at the left endpoint.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default evaluation budget before declaring non-convergence.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Generations without progress after which a panel is considered noise.
pub const STALL_LIMIT: u8 = 3;

#[allow(clippy::excessive_precision)]
const KRONROD_NODES: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const KRONROD_WEIGHTS: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Gauss weights for the odd-indexed Kronrod nodes.
#[allow(clippy::excessive_precision)]
const GAUSS_WEIGHTS: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Points of the Gauss-Kronrod rule applied to each panel.
pub const RULE_SIZE: usize = 21;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: Complex64,
    pub abs_err: f64,
    pub evaluations: usize,
}

impl QuadResult {
    fn zero() -> Self {
        Self {
            value: Complex64::new(0.0, 0.0),
            abs_err: 0.0,
            evaluations: 0,
        }
    }

    fn absorb(&mut self, other: QuadResult) {
        self.value += other.value;
        self.abs_err += other.abs_err;
        self.evaluations += other.evaluations;
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: Complex64,
    err: f64,
    magnitude: f64,
    /// Unscaled `|kronrod - gauss|`.
    raw: f64,
    /// Consecutive bisections that did not reduce the error estimate.
    stalls: u8,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn sample<F>(f: &F, x: f64) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let v = f(x)?;
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { x })
    }
}

/// One 21-point Kronrod panel with the embedded 10-point Gauss estimate.
fn gauss_kronrod<F>(f: &F, lo: f64, hi: f64) -> Result<Panel>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let f_center = sample(f, center)?;
    let mut kronrod = f_center * KRONROD_WEIGHTS[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    let mut values = [Complex64::new(0.0, 0.0); RULE_SIZE];
    values[10] = f_center;
    for i in 0..10 {
        let dx = half * KRONROD_NODES[i];
        let left = sample(f, center - dx)?;
        let right = sample(f, center + dx)?;
        values[i] = left;
        values[20 - i] = right;
        kronrod += (left + right) * KRONROD_WEIGHTS[i];
        if i % 2 == 1 {
            gauss += (left + right) * GAUSS_WEIGHTS[i / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut res_abs = f_center.norm() * KRONROD_WEIGHTS[10];
    let mut res_asc = (f_center - mean).norm() * KRONROD_WEIGHTS[10];
    for i in 0..10 {
        let w = KRONROD_WEIGHTS[i];
        res_abs += w * (values[i].norm() + values[20 - i].norm());
        res_asc += w * ((values[i] - mean).norm() + (values[20 - i] - mean).norm());
    }
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let raw = ((kronrod - gauss) * half).norm();
    let mut err = raw;
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    Ok(Panel {
        lo,
        hi,
        value: kronrod * half,
        err: err.max(floor),
        magnitude: res_abs,
        raw,
        stalls: 0,
    })
}

/// Integrates `f` over `[0, 1]` to absolute tolerance `tol`.
pub fn integrate_01<F>(f: F, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    integrate(f, 0.0, 1.0, tol)
}

/// Integrates `f` over `[lo, hi]` to absolute tolerance `tol`.
pub fn integrate<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    integrate_with_budget(f, lo, hi, tol, DEFAULT_BUDGET)
}

/// Globally adaptive bisection: the panel with the largest error estimate
/// is split until the summed estimate meets `tol`. Requests below the
/// rounding floor of the integrand (about `50 eps` times `int |f|`) are met
/// at that floor and reported through `abs_err`. A panel whose Gauss-Kronrod
/// difference has not dropped over [`STALL_LIMIT`] bisections while its
/// value stays put is dominated by noise in `f`; it is settled at that level, so `abs_err` can
/// then exceed `tol`.
pub fn integrate_with_budget<F>(
    f: F,
    lo: f64,
    hi: f64,
    tol: f64,
    budget: usize,
) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    try_integrate_with_budget(|x| Ok(f(x)), lo, hi, tol, budget)
}

/// [`integrate`] for integrands that can fail; the first error aborts.
pub fn try_integrate<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<Complex64>,
{
    try_integrate_with_budget(f, lo, hi, tol, DEFAULT_BUDGET)
}

pub fn try_integrate_with_budget<F>(
    f: F,
    lo: f64,
    hi: f64,
    tol: f64,
    budget: usize,
) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if !(tol > 0.0) || tol.is_nan() {
        return Err(Error::InvalidParameter(format!(
            "quadrature tolerance must be positive, got {tol}"
        )));
    }
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::InvalidParameter(
            "infinite integration bounds".into(),
        ));
    }
    if lo == hi {
        return Ok(QuadResult::zero());
    }

    let first = gauss_kronrod(&f, lo, hi)?;
    let mut evaluations = RULE_SIZE;
    // Error of the panels still being refined, and of those settled at noise.
    let mut active_err = first.err;
    let mut settled_err = 0.0;
    let mut magnitude = first.magnitude;
    let mut heap = BinaryHeap::new();
    let mut settled = Vec::new();
    heap.push(first);

    loop {
        let floor = 50.0 * f64::EPSILON * magnitude;
        let total_err = active_err + settled_err;
        if total_err <= tol.max(floor) {
            break;
        }
        if settled_err > 0.0 && active_err <= 0.05 * settled_err {
            // Further refinement cannot get below the noise already settled.
            break;
        }
        if evaluations + 2 * RULE_SIZE > budget {
            return Err(Error::NonConvergence {
                tol,
                abs_err: total_err,
                evaluations,
            });
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // Panel can no longer be split in double precision.
            heap.push(worst);
            return Err(Error::NonConvergence {
                tol,
                abs_err: total_err,
                evaluations,
            });
        }
        let mut left = gauss_kronrod(&f, worst.lo, mid)?;
        let mut right = gauss_kronrod(&f, mid, worst.hi)?;
        evaluations += 2 * RULE_SIZE;
        magnitude += left.magnitude + right.magnitude - worst.magnitude;

        let moved = (worst.value - left.value - right.value).norm();
        // On a resolved panel both the estimate and the Gauss-Kronrod
        // difference collapse by orders of magnitude per bisection; under
        // noise they stay put or merely halve. Noise also leaves the value
        // where it was: within a tiny fraction of the panel's content, or
        // within its own error estimate when that is already small relative
        // to the content. An unresolved oscillation fails both.
        let no_progress =
            left.err + right.err >= 0.5 * worst.err || left.raw + right.raw >= 0.5 * worst.raw;
        let content = left.magnitude + right.magnitude;
        let steady =
            moved <= 1e-5 * content || (moved <= 2.0 * worst.err && worst.err <= 1e-3 * content);
        let stalled = no_progress && steady;
        let stalls = if stalled { worst.stalls + 1 } else { 0 };
        left.stalls = stalls;
        right.stalls = stalls;
        active_err -= worst.err;
        if stalls >= STALL_LIMIT {
            settled_err += left.err + right.err;
            settled.push(left);
            settled.push(right);
        } else {
            active_err += left.err + right.err;
            heap.push(left);
            heap.push(right);
        }
    }

    let mut panels = heap.into_vec();
    panels.extend(settled);
    panels.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let value = panels
        .iter()
        .fold(Complex64::new(0.0, 0.0), |acc, p| acc + p.value);
    // Recompute the sum of estimates from scratch so that the running total's
    // cancellation does not leak into the report.
    let abs_err = panels.iter().map(|p| p.err).sum();
    Ok(QuadResult {
        value,
        abs_err,
        evaluations,
    })
}

/// `int_0^1 y^beta h(y) dy` for `Re beta > -1` on dyadic panels
/// `[2^-(k+1), 2^-k]`. The final panel `[0, eps]` is integrated from the
/// Taylor data `taylor = [h(0), h'(0), h''(0), ...]`; its last entry is used
/// only to size `eps`.
pub fn integrate_endpoint_power<F>(
    beta: Complex64,
    h: F,
    taylor: &[Complex64],
    tol: f64,
) -> Result<QuadResult>
where
    F: Fn(f64) -> Complex64,
{
    try_integrate_endpoint_power(beta, |y| Ok(h(y)), taylor, tol)
}

pub fn try_integrate_endpoint_power<F>(
    beta: Complex64,
    h: F,
    taylor: &[Complex64],
    tol: f64,
) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if !(beta.re > -1.0) {
        return Err(Error::Domain {
            what: "integrate_endpoint_power",
            detail: format!("exponent {beta} is not integrable at 0"),
        });
    }
    if taylor.len() < 2 {
        return Err(Error::InvalidParameter(
            "endpoint rule needs at least two Taylor coefficients".into(),
        ));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "quadrature tolerance must be positive, got {tol}"
        )));
    }
    let used = taylor.len() - 1;
    let next = taylor[used].norm() / factorial(used) + 1.0;
    let next_exp = used as f64 + beta.re + 1.0;
    let next_den = (beta + (used + 1) as f64).norm();

    // Smallest number of dyadic panels whose remaining cap error is negligible.
    let mut panels = 1usize;
    loop {
        let eps = 0.5f64.powi(panels as i32);
        if next * eps.powf(next_exp) / next_den < 1e-2 * tol || panels >= 1000 {
            break;
        }
        panels += 1;
    }
    let eps = 0.5f64.powi(panels as i32);

    let mut total = QuadResult::zero();
    let weighted = |y: f64| Ok(h(y)? * (beta * y.ln()).exp());
    let panel_tol = tol / (2.0 * panels as f64);
    // Panels run from [1/2, 1] towards 0, so by the time the small ones are
    // reached the size of the result is known; asking them for less than a
    // few ulps of it would only chase rounding noise.
    let mut scale = 0.0;
    for k in 0..panels {
        let hi = 0.5f64.powi(k as i32);
        let lo = 0.5 * hi;
        let floor = 4.0 * f64::EPSILON * scale / panels as f64;
        let part = try_integrate(weighted, lo, hi, panel_tol.max(floor))?;
        scale += part.value.norm();
        total.absorb(part);
    }

    // int_0^eps y^beta sum_m h_m y^m / m! dy
    let mut cap = Complex64::new(0.0, 0.0);
    let ln_eps = eps.ln();
    for (m, coeff) in taylor.iter().take(used).enumerate() {
        let p = beta + (m + 1) as f64;
        cap += coeff / factorial(m) * (p * ln_eps).exp() / p;
    }
    total.value += cap;
    total.abs_err += next * eps.powf(next_exp) / next_den;
    Ok(total)
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant() {
        let r = integrate_01(|_| c(1.0, 0.0), 1e-12).unwrap();
        assert!((r.value - c(1.0, 0.0)).norm() < 1e-15);
        assert!(r.abs_err < 1e-13);
        assert!(r.evaluations >= RULE_SIZE);
    }

    #[test]
    fn full_period() {
        let r = integrate_01(|y| (Complex64::i() * 2.0 * PI * y).exp(), 1e-12).unwrap();
        assert!(r.value.norm() < 1e-12);
    }

    #[test]
    fn cubic_minus_linear() {
        let r = integrate_01(|y| c(y * y * y, -y), 1e-12).unwrap();
        assert!((r.value - c(0.25, -0.5)).norm() < 1e-15);
    }

    #[test]
    fn non_finite_sample() {
        let r = integrate_01(|y| c(1.0 / (y - 0.5), 0.0), 1e-10);
        assert!(matches!(r, Err(Error::NonFinite { .. })));
    }

    #[test]
    fn budget_exhaustion() {
        let r = integrate_with_budget(|y| c((1.0 / (y + 1e-9)).sin(), 0.0), 0.0, 1.0, 1e-12, 500);
        assert!(matches!(r, Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn noisy_integrand_settles() {
        // Deterministic jitter of relative size 1e-11 on a constant.
        let noisy = |y: f64| {
            let h = (y * 1e6).to_bits().wrapping_mul(0x9e37_79b9_7f4a_7c15) >> 40;
            c(1.0 + 1e-11 * (h as f64 / (1u64 << 24) as f64 - 0.5), 0.0)
        };
        let r = integrate_01(noisy, 1e-15).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-10);
        assert!(r.abs_err > 1e-15 && r.abs_err < 1e-9);
        assert!(r.evaluations < 100_000);
    }

    #[test]
    fn bad_tolerance() {
        assert!(integrate_01(|_| c(1.0, 0.0), 0.0).is_err());
        assert!(integrate_01(|_| c(1.0, 0.0), -1.0).is_err());
    }

    #[test]
    fn endpoint_power_rule() {
        // int_0^1 y^(-1/2) e^y dy = sqrt(pi) erfi(1)
        let beta = c(-0.5, 0.0);
        let taylor = [c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)];
        let r = integrate_endpoint_power(beta, |y| c(y.exp(), 0.0), &taylor, 1e-13).unwrap();
        let erfi_1 = 1.650_425_758_797_542_8;
        assert!(
            (r.value.re - PI.sqrt() * erfi_1).abs() < 1e-12,
            "{}",
            r.value
        );
        assert!(r.value.im.abs() < 1e-14);
    }

    #[test]
    fn endpoint_power_complex_exponent() {
        // int_0^1 y^beta dy = 1/(beta+1)
        let beta = c(-0.3, 1.7);
        let one = c(1.0, 0.0);
        let zero = c(0.0, 0.0);
        let r = integrate_endpoint_power(beta, |_| one, &[one, zero, zero], 1e-13).unwrap();
        assert!((r.value - 1.0 / (beta + 1.0)).norm() < 1e-12);
        assert!(integrate_endpoint_power(c(-1.0, 0.0), |_| one, &[one, zero], 1e-10).is_err());
    }
}
