//! Argument model, commands and output formatting of `torus-zeta`.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 bad parameters,
//! 3 numerical failure (non-convergence, exhausted series budget).

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use torus_zeta_core::barnes::{
    deriv_at_neg_int, deriv_at_zero_forms, eval_with, reduce_parameters_with, value_at_int, Route,
};
use torus_zeta_core::oracles::{
    default_grid, numeric_s_derivative, run_verification_suite, OracleReport, ToleranceProfile,
    FD_STEP,
};
use torus_zeta_core::specfun::SeriesTruncation;
use torus_zeta_core::{Complex64, Error, ReducedParams, TorusParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Environment variable overriding the term cap of every series.
pub const MAX_TERMS_ENV: &str = "TORUS_ZETA_MAX_TERMS";

const DEFAULT_TOL: f64 = 1e-10;

#[derive(Parser, Debug)]
#[command(
    name = "torus-zeta",
    version,
    about = "Doubly-periodic Barnes zeta function zeta(s, a, b, c) = sum (a + i b m + c n)^(-s)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate zeta(s, a, b, c).
    Eval(EvalArgs),
    /// s-derivative at s = -n, n >= 0.
    Deriv(DerivArgs),
    /// Values at s = 1..n and derivatives at s = 0..-n.
    Table(TableArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ParamArgs {
    /// Shift a, written RE+IMi (e.g. 0.3+0.4i, -1e-2-3i, 2i).
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub a: Complex64,
    /// Imaginary period b > 0.
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    /// Real period c > 0.
    #[arg(long, allow_hyphen_values = true)]
    pub c: f64,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Absolute accuracy requested from the evaluator.
    #[arg(long, default_value_t = DEFAULT_TOL, allow_hyphen_values = true)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// Argument s, same syntax as --a.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub s: Complex64,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[arg(long, value_enum, default_value_t = MethodChoice::Auto)]
    pub method: MethodChoice,
}

#[derive(Args, Debug)]
pub struct DerivArgs {
    /// Order: the derivative is taken at s = -n.
    #[arg(long)]
    pub n: u32,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Also print the central-difference value and the discrepancy.
    #[arg(long)]
    pub check: bool,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Largest positive integer, n >= 2.
    #[arg(long)]
    pub n: u32,
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Use this tolerance for every check instead of the per-class defaults.
    #[arg(long, allow_hyphen_values = true)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// JSON array of {"a": [re, im], "b": .., "c": ..}.
    #[arg(long, conflicts_with_all = ["a", "b", "c"])]
    pub grid_file: Option<PathBuf>,
    /// Verify a single point instead of the built-in grid.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, requires_all = ["b", "c"])]
    pub a: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true, requires = "a")]
    pub b: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "a")]
    pub c: Option<f64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Auto,
    DirectSum,
    Integral,
    Parts,
}

impl From<MethodChoice> for Route {
    fn from(m: MethodChoice) -> Self {
        match m {
            MethodChoice::Auto => Route::Auto,
            MethodChoice::DirectSum => Route::DirectSum,
            MethodChoice::Integral => Route::Integral,
            MethodChoice::Parts => Route::Parts,
        }
    }
}

/// Parses `RE`, `IMi`, `RE+IMi` or `RE-IMi`; no spaces, exponents allowed.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let bad = || format!("cannot parse {text:?} as a complex number (expected RE+IMi)");
    if text.is_empty() || text.chars().any(char::is_whitespace) {
        return Err(bad());
    }
    let Some(body) = text.strip_suffix('i') else {
        return match text.parse::<f64>() {
            Ok(re) if re.is_finite() => Ok(Complex64::new(re, 0.0)),
            _ => Err(bad()),
        };
    };
    // The real and imaginary parts meet at the last sign that does not
    // belong to an exponent or lead the string.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.parse().map_err(|_| bad())?;
    if !(re.is_finite() && im.is_finite()) {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

/// What a command produced: text for standard output and an exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

/// Failure before any result: a message for standard error and an exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub message: String,
    pub code: i32,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_domain() {
            EXIT_DOMAIN
        } else {
            EXIT_NUMERICAL
        };
        Failure {
            message: e.to_string(),
            code,
        }
    }
}

fn domain_failure(message: impl Into<String>) -> Failure {
    Failure {
        message: message.into(),
        code: EXIT_DOMAIN,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParamsDoc {
    pub a: [f64; 2],
    pub b: f64,
    pub c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexDoc {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub finite_difference: ComplexDoc,
    pub step: f64,
    pub abs_diff: f64,
}

/// Document printed by `eval` and `deriv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValueDoc {
    pub command: String,
    pub params: ParamsDoc,
    pub result: ComplexDoc,
    pub method: String,
    pub abs_err: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<CheckDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub k: i64,
    pub re: f64,
    pub im: f64,
    pub method: String,
    pub abs_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableDoc {
    pub command: String,
    pub params: ParamsDoc,
    pub rows: Vec<TableRow>,
}

/// Grid-file entry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub a: [f64; 2],
    pub b: f64,
    pub c: f64,
}

impl From<GridPoint> for TorusParams {
    fn from(g: GridPoint) -> Self {
        TorusParams {
            a: Complex64::new(g.a[0], g.a[1]),
            b: g.b,
            c: g.c,
        }
    }
}

/// Series truncation, with the term cap taken from [`MAX_TERMS_ENV`] if set.
pub fn truncation_from_env() -> Result<SeriesTruncation, Failure> {
    let base = SeriesTruncation::default();
    match std::env::var(MAX_TERMS_ENV) {
        Ok(raw) => {
            let cap: usize = raw.trim().parse().map_err(|_| {
                domain_failure(format!("{MAX_TERMS_ENV}={raw:?} is not a positive integer"))
            })?;
            Ok(base.with_max_terms(cap)?)
        }
        Err(std::env::VarError::NotPresent) => Ok(base),
        Err(e) => Err(domain_failure(format!("{MAX_TERMS_ENV}: {e}"))),
    }
}

fn reduce(p: &ParamArgs) -> Result<ReducedParams, Failure> {
    let torus = TorusParams {
        a: p.a,
        b: p.b,
        c: p.c,
    };
    Ok(reduce_parameters_with(&torus, truncation_from_env()?)?)
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(domain_failure(format!(
            "--tol must be positive and finite, got {tol}"
        )))
    }
}

fn params_doc(rp: &ReducedParams) -> ParamsDoc {
    let a = rp.a();
    ParamsDoc {
        a: [a.re, a.im],
        b: rp.b(),
        c: rp.c(),
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Eval(args) => cmd_eval(args),
        Command::Deriv(args) => cmd_deriv(args),
        Command::Table(args) => cmd_table(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

pub fn cmd_eval(args: &EvalArgs) -> Result<Outcome, Failure> {
    check_tol(args.output.tol)?;
    let rp = reduce(&args.params)?;
    let r = eval_with(args.s, &rp, args.output.tol, args.method.into())?;
    let doc = ValueDoc {
        command: "eval".into(),
        params: params_doc(&rp),
        result: r.value.into(),
        method: r.method.as_str().into(),
        abs_err: r.abs_err,
        check: None,
    };
    Ok(Outcome {
        stdout: render_value(&doc, args.output.format),
        code: EXIT_OK,
    })
}

/// `zeta'(-n)` and an error estimate.
fn derivative(n: u32, rp: &ReducedParams, tol: f64) -> Result<(Complex64, f64), Error> {
    if n == 0 {
        let forms = deriv_at_zero_forms(rp)?;
        Ok((forms.closed, (forms.closed - forms.via_integral).norm()))
    } else {
        let v = deriv_at_neg_int(n, rp, tol)?;
        Ok((v, tol * v.norm().max(1.0)))
    }
}

pub fn cmd_deriv(args: &DerivArgs) -> Result<Outcome, Failure> {
    check_tol(args.output.tol)?;
    let rp = reduce(&args.params)?;
    let (value, abs_err) = derivative(args.n, &rp, args.output.tol)?;
    let check = if args.check {
        let fd = numeric_s_derivative(Complex64::new(-(args.n as f64), 0.0), &rp, FD_STEP)?;
        Some(CheckDoc {
            finite_difference: fd.into(),
            step: FD_STEP,
            abs_diff: (fd - value).norm(),
        })
    } else {
        None
    };
    let doc = ValueDoc {
        command: "deriv".into(),
        params: params_doc(&rp),
        result: value.into(),
        method: "closed_derivative".into(),
        abs_err,
        check,
    };
    Ok(Outcome {
        stdout: render_value(&doc, args.output.format),
        code: EXIT_OK,
    })
}

pub fn cmd_table(args: &TableArgs) -> Result<Outcome, Failure> {
    check_tol(args.output.tol)?;
    if args.n < 2 {
        return Err(domain_failure(format!(
            "table needs --n >= 2, got {}",
            args.n
        )));
    }
    let rp = reduce(&args.params)?;
    let mut rows = Vec::new();
    for k in 1..=args.n {
        let r = value_at_int(k, &rp)?;
        rows.push(TableRow {
            k: k as i64,
            re: r.value.re,
            im: r.value.im,
            method: r.method.as_str().into(),
            abs_err: r.abs_err,
        });
    }
    for k in 0..=args.n {
        let (v, abs_err) = derivative(k, &rp, args.output.tol)?;
        rows.push(TableRow {
            k: -(k as i64),
            re: v.re,
            im: v.im,
            method: "derivative".into(),
            abs_err,
        });
    }
    let doc = TableDoc {
        command: "table".into(),
        params: params_doc(&rp),
        rows,
    };
    Ok(Outcome {
        stdout: render_table(&doc, args.output.format),
        code: EXIT_OK,
    })
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Outcome, Failure> {
    let profile = match args.tol {
        Some(t) => {
            check_tol(t)?;
            ToleranceProfile::uniform(t)
        }
        None => ToleranceProfile::default(),
    };
    let points: Vec<TorusParams> = if let Some(path) = &args.grid_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| domain_failure(format!("cannot read {}: {e}", path.display())))?;
        let grid: Vec<GridPoint> = serde_json::from_str(&text)
            .map_err(|e| domain_failure(format!("bad grid file {}: {e}", path.display())))?;
        grid.into_iter().map(TorusParams::from).collect()
    } else if let (Some(a), Some(b), Some(c)) = (args.a, args.b, args.c) {
        vec![TorusParams { a, b, c }]
    } else {
        default_grid()
    };
    let reports = run_verification_suite(&points, &profile)?;
    let code = if reports.iter().all(|r| r.passed) {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    };
    Ok(Outcome {
        stdout: render_reports(&reports, args.format),
        code,
    })
}

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn render_value(doc: &ValueDoc, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => return to_json(doc),
        Format::Csv => {
            out.push_str("command,a_re,a_im,b,c,re,im,method,abs_err");
            if doc.check.is_some() {
                out.push_str(",fd_re,fd_im,fd_abs_diff");
            }
            out.push('\n');
            let p = &doc.params;
            let _ = write!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                doc.command,
                num(p.a[0]),
                num(p.a[1]),
                num(p.b),
                num(p.c),
                num(doc.result.re),
                num(doc.result.im),
                doc.method,
                num(doc.abs_err)
            );
            if let Some(ch) = &doc.check {
                let _ = write!(
                    out,
                    ",{},{},{}",
                    num(ch.finite_difference.re),
                    num(ch.finite_difference.im),
                    num(ch.abs_diff)
                );
            }
            out.push('\n');
        }
        Format::Plain => {
            let p = &doc.params;
            let _ = writeln!(
                out,
                "a = {}, b = {}, c = {}",
                fmt_complex(p.a[0], p.a[1]),
                num(p.b),
                num(p.c)
            );
            let _ = writeln!(out, "value = {}", fmt_complex(doc.result.re, doc.result.im));
            let _ = writeln!(out, "method = {}", doc.method);
            let _ = writeln!(out, "abs_err = {:e}", doc.abs_err);
            if let Some(ch) = &doc.check {
                let fd = &ch.finite_difference;
                let _ = writeln!(
                    out,
                    "finite difference (h = {:e}) = {}",
                    ch.step,
                    fmt_complex(fd.re, fd.im)
                );
                let _ = writeln!(out, "difference = {:e}", ch.abs_diff);
            }
        }
    }
    out
}

pub fn render_table(doc: &TableDoc, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => return to_json(doc),
        Format::Csv => {
            out.push_str("k,re,im,method,abs_err\n");
            for r in &doc.rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.k,
                    num(r.re),
                    num(r.im),
                    r.method,
                    num(r.abs_err)
                );
            }
        }
        Format::Plain => {
            let p = &doc.params;
            let _ = writeln!(
                out,
                "a = {}, b = {}, c = {}",
                fmt_complex(p.a[0], p.a[1]),
                num(p.b),
                num(p.c)
            );
            for r in &doc.rows {
                let label = if r.method == "derivative" {
                    format!("zeta'({})", r.k)
                } else {
                    format!("zeta({})", r.k)
                };
                let _ = writeln!(
                    out,
                    "{label:>10} = {}  [{}, abs_err {:e}]",
                    fmt_complex(r.re, r.im),
                    r.method,
                    r.abs_err
                );
            }
        }
    }
    out
}

pub fn render_reports(reports: &[OracleReport], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => return to_json(&reports),
        Format::Csv => {
            out.push_str("name,lhs_re,lhs_im,rhs_re,rhs_im,abs_diff,tolerance,passed\n");
            for r in reports {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    r.name,
                    num(r.lhs.re),
                    num(r.lhs.im),
                    num(r.rhs.re),
                    num(r.rhs.im),
                    num(r.abs_diff),
                    num(r.tolerance),
                    r.passed
                );
            }
        }
        Format::Plain => {
            for r in reports {
                let tag = if r.passed { "PASS" } else { "FAIL" };
                let _ = write!(
                    out,
                    "{tag} {} diff={:.3e} tol={:.1e}",
                    r.name, r.abs_diff, r.tolerance
                );
                if let Some(note) = &r.note {
                    let _ = write!(out, " ({note})");
                }
                out.push('\n');
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            let _ = writeln!(out, "{} checks, {} failed", reports.len(), failed);
        }
    }
    out
}

/// Shortest round-trip text of `x`, in scientific notation outside
/// `[1e-4, 1e15)`.
pub fn num(x: f64) -> String {
    let m = x.abs();
    if m == 0.0 || !m.is_finite() || (1e-4..1e15).contains(&m) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn fmt_complex(re: f64, im: f64) -> String {
    if im.is_sign_negative() {
        format!("{}-{}i", num(re), num(-im))
    } else {
        format!("{}+{}i", num(re), num(im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_syntax() {
        let c = |re, im| Complex64::new(re, im);
        assert_eq!(parse_complex("0.3+0.4i"), Ok(c(0.3, 0.4)));
        assert_eq!(parse_complex("-3"), Ok(c(-3.0, 0.0)));
        assert_eq!(parse_complex("1e-2-3i"), Ok(c(0.01, -3.0)));
        assert_eq!(parse_complex("-1.5E+2+2e-3i"), Ok(c(-150.0, 0.002)));
        assert_eq!(parse_complex("2i"), Ok(c(0.0, 2.0)));
        assert_eq!(parse_complex("-i"), Ok(c(0.0, -1.0)));
        assert_eq!(parse_complex("1-i"), Ok(c(1.0, -1.0)));
        assert_eq!(parse_complex("-2e-3i"), Ok(c(0.0, -0.002)));
    }

    #[test]
    fn complex_syntax_rejects() {
        for bad in [
            "",
            "0.3 + 0.4i",
            "0.3+0.4",
            "abc",
            "1+2j",
            "1++2i",
            "nan",
            "inf+1i",
            "i1",
        ] {
            assert!(parse_complex(bad).is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn plain_complex_format() {
        assert_eq!(fmt_complex(1.0, -2.0), "1-2i");
        assert_eq!(fmt_complex(0.5, 0.0), "0.5+0i");
        assert_eq!(fmt_complex(1.5e-13, 2e20), "1.5e-13+2e20i");
    }

    #[test]
    fn numbers_round_trip() {
        for x in [
            0.0,
            -0.0,
            1.0,
            0.1,
            1e-4,
            9.99e-5,
            3.6618175609345417e-13,
            -2.5e17,
            123456.789,
        ] {
            assert_eq!(num(x).parse::<f64>().unwrap().to_bits(), x.to_bits());
        }
    }
}
