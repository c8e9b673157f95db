//! Bernoulli-Taylor expansions with Cauchy-form remainders.
//!
//! Every report carries two remainders: the Cauchy-form one computed from the
//! next derivative (or difference) against a kernel, and the oracle one forced
//! by subtraction. An expansion is exact when they agree.

use num_traits::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::operators::{iterate, psi_antiderivative, psi_derivative, x_hat_psi};
use crate::poly::Polynomial;
use crate::psi::PsiContext;
use crate::rational::{binomial, factorial, pow, sign, Rational};
use crate::report::VerificationReport;

/// Values of an expansion at one lattice point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeSample {
    pub x: i64,
    #[serde(with = "crate::rational::serde_str")]
    pub partial: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub remainder: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub value: Rational,
}

/// A finite expansion `target = sum(terms) + remainder`.
///
/// Polynomial expansions keep `x` symbolic. Pointwise ones (`x_eval` set)
/// store every quantity as a constant polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpansionReport {
    pub label: String,
    #[serde(with = "crate::rational::serde_str")]
    pub alpha: Rational,
    pub order: usize,
    #[serde(serialize_with = "crate::rational::serde_str::option")]
    pub x_eval: Option<Rational>,
    pub target: Polynomial,
    pub terms: Vec<Polynomial>,
    pub partial_sum: Polynomial,
    pub cauchy_remainder: Polynomial,
    pub oracle_remainder: Polynomial,
    /// Lattice sweep for expansions whose remainder is a kernel sum.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub samples: Vec<LatticeSample>,
    pub exact: bool,
}

impl ExpansionReport {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn assemble(
        label: String,
        alpha: Rational,
        order: usize,
        x_eval: Option<Rational>,
        target: Polynomial,
        terms: Vec<Polynomial>,
        cauchy_remainder: Polynomial,
        oracle_remainder: Polynomial,
        samples: Vec<LatticeSample>,
    ) -> Self {
        let partial_sum = Polynomial::sum(&terms);
        let mut report = ExpansionReport {
            label,
            alpha,
            order,
            x_eval,
            target,
            terms,
            partial_sum,
            cauchy_remainder,
            oracle_remainder,
            samples,
            exact: false,
        };
        report.exact = verify_expansion(&report).passed();
        report
    }

    /// The remainder as a single value, for pointwise reports.
    pub fn remainder_value(&self) -> Rational {
        self.cauchy_remainder.coeff(0)
    }
}

/// `f - partial`
pub fn remainder_oracle(f: &Polynomial, partial: &Polynomial) -> Polynomial {
    f - partial
}

/// Recomputes the exactness verdict from the raw report fields.
pub fn verify_expansion(report: &ExpansionReport) -> VerificationReport {
    let mut v = VerificationReport::new(
        "expansion exactness",
        format!(
            "{} alpha={} order={}",
            report.label, report.alpha, report.order
        ),
    );
    v.check(
        || "partial_sum = sum of terms".into(),
        &report.partial_sum,
        &Polynomial::sum(&report.terms),
    );
    v.check(
        || "cauchy remainder = oracle remainder".into(),
        &report.cauchy_remainder,
        &report.oracle_remainder,
    );
    v.check(
        || "partial_sum + cauchy remainder = target".into(),
        &(&report.partial_sum + &report.cauchy_remainder),
        &report.target,
    );
    for s in &report.samples {
        v.check(
            || format!("lattice point x = {}", s.x),
            &(&s.partial + &s.remainder),
            &s.value,
        );
    }
    v
}

/// `(x - alpha)^k`
fn shifted_power(alpha: &Rational, k: usize) -> Polynomial {
    let base = Polynomial::from_coeffs(vec![-alpha.clone(), Rational::from_integer(1.into())]);
    (0..k).fold(Polynomial::one(), |acc, _| &acc * &base)
}

/// Classical Taylor expansion of order `n` about `alpha`, as polynomials in `x`.
///
/// The Cauchy remainder `int_alpha^x (x-t)^n f^(n+1)(t)/n! dt` is integrated
/// exactly: `(x-t)^n` is expanded binomially in `t`, each monomial in `t` is
/// integrated, and the endpoints are substituted.
pub fn taylor_classical(f: &Polynomial, alpha: &Rational, n: usize) -> ExpansionReport {
    let terms: Vec<Polynomial> = (0..=n)
        .map(|k| {
            let c = f.nth_derivative(k).eval(alpha) / factorial(k);
            shifted_power(alpha, k).scale(&c)
        })
        .collect();
    let partial = Polynomial::sum(&terms);

    let next = f.nth_derivative(n + 1);
    let mut remainder = Polynomial::zero();
    for j in 0..=n {
        // C(n, j) x^(n-j) (-t)^j
        let outer = binomial(n, j) * sign(j);
        for (i, d) in next.terms() {
            let m = i + j + 1;
            let m_q = Rational::from_integer(m.into());
            let upper = Polynomial::monomial(Rational::from_integer(1.into()), m);
            let lower = Polynomial::constant(pow(alpha, m));
            let piece = (upper - lower).shift_up(n - j).scale(&(&outer * d / m_q));
            remainder = remainder + piece;
        }
    }
    let remainder = remainder.scale(&(Rational::from_integer(1.into()) / factorial(n)));

    ExpansionReport::assemble(
        "classical".into(),
        alpha.clone(),
        n,
        None,
        f.clone(),
        terms,
        remainder,
        remainder_oracle(f, &partial),
        Vec::new(),
    )
}

/// The psi-Bernoulli-Taylor expansion of `f` about `alpha`, evaluated at `x_eval`.
///
/// Works in the shifted variable `w = t - x_eval`, with `phi(w) = f(x_eval + w)`
/// and `s = alpha - x_eval`:
///
/// ```text
/// term_k    = (1/k!) [(-w_hat_psi)^k d_psi^k phi](s)
/// remainder = (1/n!) int_s^0 (-w_hat_psi)^n d_psi^(n+1) phi  d_psi w
/// ```
///
/// `f(x_eval) = phi(0)` equals the sum of terms plus remainder exactly. For
/// classical psi the terms are `(x_eval - alpha)^k f^(k)(alpha)/k!`.
pub fn psi_bernoulli_taylor(
    ctx: &PsiContext,
    f: &Polynomial,
    alpha: &Rational,
    x_eval: &Rational,
    n: usize,
) -> Result<ExpansionReport> {
    let one = Rational::from_integer(1.into());
    let phi = f.affine_compose(&one, x_eval);
    let s = alpha - x_eval;
    let neg_raise = |g: &Polynomial| Ok(-x_hat_psi(ctx, g)?);

    let mut terms = Vec::with_capacity(n + 1);
    let mut lowered = phi.clone();
    for k in 0..=n {
        if k > 0 {
            lowered = psi_derivative(ctx, &lowered)?;
        }
        let raised = iterate(neg_raise, &lowered, k)?;
        terms.push(Polynomial::constant(raised.eval(&s) / factorial(k)));
    }
    let top = psi_derivative(ctx, &lowered)?;
    let integrand = iterate(neg_raise, &top, n)?;
    let remainder = if integrand.is_zero() {
        Rational::zero()
    } else {
        psi_antiderivative(ctx, &integrand)?.eval_difference(&s, &Rational::zero()) / factorial(n)
    };

    let target = Polynomial::constant(f.eval(x_eval));
    let partial = Polynomial::sum(&terms);
    let oracle = remainder_oracle(&target, &partial);
    Ok(ExpansionReport::assemble(
        format!("psi:{}", ctx.label()),
        alpha.clone(),
        n,
        Some(x_eval.clone()),
        target,
        terms,
        Polynomial::constant(remainder),
        oracle,
        Vec::new(),
    ))
}
