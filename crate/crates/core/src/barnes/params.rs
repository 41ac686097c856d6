use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{SeriesTruncation, ThetaContext};

/// Reduced coordinates are snapped to a decimal grid about `10^-12` times
/// the period, so that `a` and `a + m c + i n b` reduce to bitwise-identical
/// parameters while short decimal inputs such as `0.3` stay exact.
const SNAP_DIGITS: i32 = 12;

/// Raw parameters of `zeta(s, a, b, c) = sum_{m,n} (a + i b m + c n)^(-s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TorusParams {
    pub a: Complex64,
    pub b: f64,
    pub c: f64,
}

impl TorusParams {
    pub fn new(a: Complex64, b: f64, c: f64) -> Result<Self> {
        let p = Self { a, b, c };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.b > 0.0 && self.b.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "b must be a positive real, got {}",
                self.b
            )));
        }
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "c must be a positive real, got {}",
                self.c
            )));
        }
        if !(self.a.re.is_finite() && self.a.im.is_finite()) {
            return Err(Error::InvalidParameter("a must be finite".into()));
        }
        let (u, v) = (self.a.re / self.c, self.a.im / self.b);
        if u == u.round() && v == v.round() {
            return Err(Error::LatticePoint {
                re: self.a.re,
                im: self.a.im,
            });
        }
        Ok(())
    }
}

/// Parameters with `a` in the open rectangle `0 < Re a < c`, `0 < Im a < b`,
/// together with `A = a / c` and the theta context `q = exp(-pi b / c)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedParams {
    a: Complex64,
    b: f64,
    c: f64,
    a_over_c: Complex64,
    ctx: ThetaContext,
}

impl ReducedParams {
    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `A = a / c`, with `0 < Re A < 1` and `0 < Im A < b / c`.
    pub fn a_over_c(&self) -> Complex64 {
        self.a_over_c
    }

    pub fn ctx(&self) -> &ThetaContext {
        &self.ctx
    }

    pub fn q(&self) -> f64 {
        self.ctx.q()
    }

    pub fn trunc(&self) -> &SeriesTruncation {
        self.ctx.trunc()
    }

    pub fn torus(&self) -> TorusParams {
        TorusParams {
            a: self.a,
            b: self.b,
            c: self.c,
        }
    }
}

/// Canonical representative of `a` modulo the lattice `c Z + i b Z`.
pub fn reduce_parameters(p: &TorusParams) -> Result<ReducedParams> {
    reduce_parameters_with(p, SeriesTruncation::default())
}

pub fn reduce_parameters_with(p: &TorusParams, trunc: SeriesTruncation) -> Result<ReducedParams> {
    p.validate()?;
    let x = snapped_residue(p.a.re, p.c);
    let y = snapped_residue(p.a.im, p.b);
    if x == 0.0 && y == 0.0 {
        return Err(Error::LatticePoint {
            re: p.a.re,
            im: p.a.im,
        });
    }
    let a = Complex64::new(x, y);
    if x == 0.0 || y == 0.0 {
        return Err(Error::Boundary { re: a.re, im: a.im });
    }
    let ratio = p.b / p.c;
    Ok(ReducedParams {
        a,
        b: p.b,
        c: p.c,
        a_over_c: a / p.c,
        ctx: ThetaContext::from_ratio(ratio, trunc)?,
    })
}

/// Residue of `x` modulo `period` in `[0, period)` on the snapping grid.
fn snapped_residue(x: f64, period: f64) -> f64 {
    let scale = 10f64.powi(SNAP_DIGITS - period.log10().floor() as i32);
    let r = x - (x / period).floor() * period;
    let snapped = (r * scale).round() / scale;
    if snapped <= 0.0 || snapped >= period {
        0.0
    } else {
        snapped
    }
}
