//! Argument types and dispatch for the `umbral` binary.

pub mod suites;

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;
use umbral_core::discrete::{bernoulli_maclaurin, newton_expansion};
use umbral_core::hahn::{jackson_integral_exact, jackson_integral_numeric, poly_f64};
use umbral_core::rational::{parse_rational, serde_str, to_f64};
use umbral_core::{
    parse_poly, psi_bernoulli_taylor, taylor_classical, AdmissibleSequence, CalcError,
    ExpansionReport, ParseError, Polynomial, PsiContext, Rational,
};

use crate::suites::{
    required_psi_index, run_suites, SuiteResult, SIGN_VARIANT_NAMES, SUITE_NAMES, SWEEPS,
};

/// A polynomial argument together with the text it was parsed from.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyExpr {
    pub source: String,
    pub poly: Polynomial,
}

fn poly_arg(src: &str) -> Result<PolyExpr, ParseError> {
    Ok(PolyExpr {
        source: src.to_string(),
        poly: parse_poly(src)?,
    })
}

fn psi_arg(src: &str) -> Result<AdmissibleSequence, ParseError> {
    src.parse()
}

#[derive(Debug, Parser)]
#[command(
    name = "umbral",
    version,
    about = "Exact psi-umbral calculus on rational polynomials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand a polynomial with a Taylor-type formula and its exact remainder
    Expand(ExpandArgs),
    /// Run identity suites
    #[command(after_help = SWEEPS)]
    Verify(VerifyArgs),
    /// Exact and truncated-series Jackson integrals from 0 to z
    Jackson(JacksonArgs),
    /// Tabulate n_psi, n_psi! and n!/n_psi!
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Classical Taylor expansion, symbolic in x
    Taylor,
    /// psi-Bernoulli-Taylor expansion evaluated at --x-eval
    Psi,
    /// Newton forward-difference expansion about 0
    Newton,
    /// Bernoulli-Maclaurin formula for f(0) from backward differences at alpha
    Maclaurin,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    /// psi-spec: classical | q:<r> | fib | custom:<r1>,<r2>,...
    #[arg(long, default_value = "classical", value_parser = psi_arg)]
    pub psi: AdmissibleSequence,
    /// Polynomial in x, e.g. "3/2*x^3 - x + 1"
    #[arg(long = "f", value_parser = poly_arg, allow_hyphen_values = true)]
    pub f: PolyExpr,
    #[arg(long, default_value = "0", value_parser = parse_rational, allow_hyphen_values = true)]
    pub alpha: Rational,
    #[arg(long)]
    pub order: usize,
    #[arg(long = "x-eval", value_parser = parse_rational, allow_hyphen_values = true)]
    pub x_eval: Option<Rational>,
    /// Defaults to psi when --x-eval is given and taylor otherwise
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name or `all`
    #[arg(long, default_value = "all", value_parser = suite_arg)]
    pub suite: String,
    #[arg(long, default_value = "classical", value_parser = psi_arg)]
    pub psi: AdmissibleSequence,
    #[arg(long = "max-degree", default_value_t = 32)]
    pub max_degree: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

fn suite_arg(src: &str) -> Result<String, String> {
    if src == "all" || SUITE_NAMES.contains(&src) || SIGN_VARIANT_NAMES.contains(&src) {
        Ok(src.to_string())
    } else {
        Err(format!(
            "expected `all` or one of: {}, {}",
            SUITE_NAMES.join(", "),
            SIGN_VARIANT_NAMES.join(", ")
        ))
    }
}

#[derive(Debug, Args)]
pub struct JacksonArgs {
    #[arg(long = "f", value_parser = poly_arg, allow_hyphen_values = true)]
    pub f: PolyExpr,
    /// Base, 0 < q < 1
    #[arg(long, value_parser = parse_rational)]
    pub q: Rational,
    #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
    pub z: Rational,
    /// Tail tolerance for the truncated series
    #[arg(long, default_value_t = 1e-15)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, default_value = "classical", value_parser = psi_arg)]
    pub psi: AdmissibleSequence,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

/// Why a run did not produce output.
#[derive(Debug)]
pub enum RunError {
    Usage(String),
    Admissibility(String),
    Calc(CalcError),
}

impl From<CalcError> for RunError {
    fn from(e: CalcError) -> Self {
        match e {
            CalcError::Admissibility { .. } => RunError::Admissibility(e.to_string()),
            CalcError::Internal(_) => RunError::Calc(e),
            other => RunError::Usage(other.to_string()),
        }
    }
}

impl RunError {
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Calc(_) => 1,
            RunError::Usage(_) => 2,
            RunError::Admissibility(_) => 3,
        }
    }

    pub fn message(&self) -> String {
        match self {
            RunError::Usage(m) | RunError::Admissibility(m) => m.clone(),
            RunError::Calc(e) => e.to_string(),
        }
    }
}

/// Rendered output and whether every check in it held.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub passed: bool,
}

impl Output {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(if self.passed { 0 } else { 1 })
    }
}

fn admissible(seq: &AdmissibleSequence, up_to: usize) -> Result<PsiContext, RunError> {
    let ctx = PsiContext::new(seq.clone());
    let report = ctx.admissibility_check(up_to);
    match report.first_failure {
        None => Ok(ctx),
        Some(n) => Err(RunError::Admissibility(format!(
            "psi-sequence {seq} is not admissible: n_psi vanishes or is undefined at n = {n} \
             (needed up to n = {up_to})"
        ))),
    }
}

fn render<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn run(cli: &Cli) -> Result<Output, RunError> {
    match &cli.command {
        Command::Expand(a) => expand(a),
        Command::Verify(a) => verify(a),
        Command::Jackson(a) => jackson(a),
        Command::Table(a) => table(a),
    }
}

#[derive(Serialize)]
struct ExpandJson<'a> {
    #[serde(flatten)]
    report: &'a ExpansionReport,
    remainder: String,
}

fn expand(a: &ExpandArgs) -> Result<Output, RunError> {
    let f = &a.f.poly;
    let kind = a.kind.unwrap_or(if a.x_eval.is_some() {
        Kind::Psi
    } else {
        Kind::Taylor
    });
    let classical_only = |name: &str| {
        if a.psi == AdmissibleSequence::Classical {
            Ok(())
        } else {
            Err(RunError::Usage(format!(
                "--kind {name} is a classical expansion; use --kind psi with --x-eval for {}",
                a.psi
            )))
        }
    };
    let no_x_eval = |name: &str| match a.x_eval {
        None => Ok(()),
        Some(_) => Err(RunError::Usage(format!(
            "--kind {name} is symbolic and takes no --x-eval"
        ))),
    };
    let report = match kind {
        Kind::Taylor => {
            classical_only("taylor")?;
            no_x_eval("taylor")?;
            taylor_classical(f, &a.alpha, a.order)
        }
        Kind::Psi => {
            let x = a
                .x_eval
                .as_ref()
                .ok_or_else(|| RunError::Usage("--kind psi needs --x-eval".into()))?;
            let ctx = admissible(&a.psi, f.len().max(1))?;
            psi_bernoulli_taylor(&ctx, f, &a.alpha, x, a.order)?
        }
        Kind::Newton => {
            classical_only("newton")?;
            no_x_eval("newton")?;
            if !a.alpha.is_zero() {
                return Err(RunError::Usage(
                    "--kind newton expands about 0; drop --alpha".into(),
                ));
            }
            newton_expansion(f, a.order)
        }
        Kind::Maclaurin => {
            classical_only("maclaurin")?;
            no_x_eval("maclaurin")?;
            let alpha = a
                .alpha
                .is_integer()
                .then(|| a.alpha.to_integer().to_u64())
                .flatten()
                .ok_or_else(|| {
                    RunError::Usage("--kind maclaurin needs a nonnegative integer --alpha".into())
                })?;
            bernoulli_maclaurin(f, alpha, a.order)
        }
    };
    let text = match a.format {
        Format::Json => render(&ExpandJson {
            report: &report,
            remainder: report.cauchy_remainder.to_string(),
        }),
        Format::Text => expand_text(&report, &a.f.source),
    };
    Ok(Output {
        text,
        passed: report.exact,
    })
}

fn expand_text(r: &ExpansionReport, source: &str) -> String {
    let mut s = String::new();
    let _ = write!(
        s,
        "{} expansion of {source} about alpha = {}, order {}",
        r.label, r.alpha, r.order
    );
    if let Some(x) = &r.x_eval {
        let _ = write!(s, ", at x = {x}");
    }
    s.push('\n');
    for (k, t) in r.terms.iter().enumerate() {
        let _ = writeln!(s, "  term {k}: {t}");
    }
    let _ = writeln!(s, "  partial sum: {}", r.partial_sum);
    let _ = writeln!(s, "  remainder: {}", r.cauchy_remainder);
    let _ = writeln!(s, "  target: {}", r.target);
    if !r.samples.is_empty() {
        let _ = writeln!(
            s,
            "  lattice samples: x = {}..={}",
            r.samples[0].x,
            r.samples[r.samples.len() - 1].x
        );
    }
    let _ = writeln!(s, "  exact: {}", r.exact);
    s
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    psi: String,
    max_degree: usize,
    passed: bool,
    suites: &'a [SuiteResult],
}

fn verify(a: &VerifyArgs) -> Result<Output, RunError> {
    let names: Vec<&str> = if a.suite == "all" {
        SUITE_NAMES.to_vec()
    } else {
        vec![a.suite.as_str()]
    };
    let uses_psi = names
        .iter()
        .any(|n| !matches!(*n, "historical" | "hahn-reduction") && !SIGN_VARIANT_NAMES.contains(n));
    let ctx = if uses_psi {
        admissible(&a.psi, required_psi_index(a.max_degree))?
    } else {
        PsiContext::new(a.psi.clone())
    };
    let results = run_suites(&names, &ctx, a.max_degree)?;
    let passed = results.iter().all(|r| r.passed);
    let text = match a.format {
        Format::Json => render(&VerifyJson {
            psi: a.psi.to_string(),
            max_degree: a.max_degree,
            passed,
            suites: &results,
        }),
        Format::Text => {
            let mut s = String::new();
            for r in &results {
                let cases: usize = r.reports.iter().map(|x| x.cases).sum();
                let verdict = if r.passed { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    s,
                    "{verdict} {} ({} checks, {cases} cases)",
                    r.suite,
                    r.reports.len()
                );
                for failed in r.reports.iter().filter(|x| !x.passed()) {
                    let _ = writeln!(s, "  {failed}");
                }
            }
            let _ = writeln!(
                s,
                "{} psi={} max-degree={}",
                if passed {
                    "all suites passed"
                } else {
                    "some suites failed"
                },
                a.psi,
                a.max_degree
            );
            s
        }
    };
    Ok(Output { text, passed })
}

#[derive(Serialize)]
struct JacksonJson {
    f: String,
    #[serde(with = "serde_str")]
    q: Rational,
    #[serde(with = "serde_str")]
    z: Rational,
    #[serde(with = "serde_str")]
    exact: Rational,
    numeric: f64,
    terms_used: usize,
    abs_error: f64,
    tail_tol: f64,
}

fn jackson(a: &JacksonArgs) -> Result<Output, RunError> {
    if !(a.q.is_positive() && a.q < Rational::from_integer(1.into())) {
        return Err(RunError::Usage(format!(
            "--q must satisfy 0 < q < 1, got {}",
            a.q
        )));
    }
    if !(a.tol > 0.0 && a.tol.is_finite()) {
        return Err(RunError::Usage(format!(
            "--tol must be positive, got {}",
            a.tol
        )));
    }
    let f = &a.f.poly;
    let exact = jackson_integral_exact(f, &a.q, &a.z)?;
    let numeric = jackson_integral_numeric(poly_f64(f), &a.q, &a.z, a.tol)?;
    let out = JacksonJson {
        f: f.to_string(),
        q: a.q.clone(),
        z: a.z.clone(),
        abs_error: (numeric.value - to_f64(&exact)).abs(),
        exact,
        numeric: numeric.value,
        terms_used: numeric.terms_used,
        tail_tol: a.tol,
    };
    let text = match a.format {
        Format::Json => render(&out),
        Format::Text => format!(
            "Jackson integral of {} from 0 to {} with q = {}\n  exact:   {}\n  numeric: {:.17e} (K = {}, tol = {:e})\n  |numeric - exact| = {:e}\n",
            a.f.source, out.z, out.q, out.exact, out.numeric, out.terms_used, out.tail_tol, out.abs_error
        ),
    };
    Ok(Output { text, passed: true })
}

#[derive(Serialize)]
struct TableRow {
    n: usize,
    #[serde(with = "serde_str")]
    n_psi: Rational,
    #[serde(with = "serde_str")]
    n_psi_factorial: Rational,
    #[serde(with = "serde_str")]
    power_coefficient: Rational,
}

fn table(a: &TableArgs) -> Result<Output, RunError> {
    let ctx = admissible(&a.psi, a.n)?;
    let rows = (1..=a.n)
        .map(|n| {
            Ok(TableRow {
                n,
                n_psi: ctx.factor(n)?,
                n_psi_factorial: ctx.factorial(n)?,
                power_coefficient: ctx.power_coefficient(n)?,
            })
        })
        .collect::<Result<Vec<_>, CalcError>>()?;
    let text = match a.format {
        Format::Json => render(&rows),
        Format::Text => {
            let mut s = format!(
                "psi = {}\n{:>4}  {:>16}  {:>16}  {:>16}\n",
                a.psi, "n", "n_psi", "n_psi!", "n!/n_psi!"
            );
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{:>4}  {:>16}  {:>16}  {:>16}",
                    r.n,
                    r.n_psi.to_string(),
                    r.n_psi_factorial.to_string(),
                    r.power_coefficient.to_string()
                );
            }
            s
        }
    };
    Ok(Output { text, passed: true })
}
