//! Exact verifiers for the operator identities of the psi-calculus.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::discrete::{delta, indefinite_sum, shift};
use crate::error::Result;
use crate::operators::{
    divided_difference_zero, exp_truncated, psi_antiderivative, psi_definite_integral,
    psi_derivative, psi_exp, psi_power, star_psi, umbral_tilde, x_hat_psi,
};
use crate::poly::Polynomial;
use crate::psi::PsiContext;
use crate::rational::{factorial, int, sign, Rational};
use crate::report::VerificationReport;

/// A linear map on polynomials that may fail on inadmissible input.
pub type PolyOp = Arc<dyn Fn(&Polynomial) -> Result<Polynomial> + Send + Sync>;

/// A lowering/raising pair `(p, q)` expected to satisfy `[p, q] = 1`.
#[derive(Clone)]
pub struct GhwPair {
    pub name: String,
    lower: PolyOp,
    raise: PolyOp,
}

impl fmt::Debug for GhwPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GhwPair").field("name", &self.name).finish()
    }
}

impl GhwPair {
    pub fn new(name: impl Into<String>, lower: PolyOp, raise: PolyOp) -> Self {
        GhwPair {
            name: name.into(),
            lower,
            raise,
        }
    }

    /// `D` with `x_hat - y`.
    pub fn derivative(y: Rational) -> Self {
        let name = if y.is_negative() {
            format!("(D, x+{})", -&y)
        } else {
            format!("(D, x-{y})")
        };
        GhwPair::new(
            name,
            Arc::new(|f| Ok(f.derivative())),
            Arc::new(move |f| Ok(f.shift_up(1) - f.scale(&y))),
        )
    }

    /// `Delta` with `x_hat o E^-1`.
    pub fn difference() -> Self {
        GhwPair::new(
            "(Delta, x E^-1)",
            Arc::new(|f| Ok(delta(f))),
            Arc::new(|f| Ok(shift(f, -1).shift_up(1))),
        )
    }

    /// `d_psi` with `x_hat_psi`.
    pub fn psi(ctx: &PsiContext) -> Self {
        let lower_ctx = Arc::new(ctx.clone());
        let raise_ctx = Arc::clone(&lower_ctx);
        GhwPair::new(
            format!("(d_psi, x_hat_psi) psi={}", ctx.label()),
            Arc::new(move |f| psi_derivative(&lower_ctx, f)),
            Arc::new(move |f| x_hat_psi(&raise_ctx, f)),
        )
    }

    pub fn lower(&self, f: &Polynomial) -> Result<Polynomial> {
        (self.lower)(f)
    }

    pub fn raise(&self, f: &Polynomial) -> Result<Polynomial> {
        (self.raise)(f)
    }
}

fn mono(m: usize) -> Polynomial {
    Polynomial::monomial(int(1), m)
}

/// Checks `(p q - q p) x^m = x^m` for `0 <= m <= n_max`.
pub fn verify_commutator(pair: &GhwPair, n_max: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(
        "GHW commutator [p, q] = 1",
        format!("{} m<={n_max}", pair.name),
    );
    for m in 0..=n_max {
        let f = mono(m);
        let pq = pair.lower(&pair.raise(&f)?)?;
        let qp = pair.raise(&pair.lower(&f)?)?;
        report.check(|| format!("m = {m}"), &(pq - qp), &f);
    }
    Ok(report)
}

/// Checks `p sum_{k=0}^{n} (-q)^k p^k f / k! = (-q)^n p^(n+1) f / n!`.
pub fn verify_bernoulli_identity(
    pair: &GhwPair,
    n: usize,
    f: &Polynomial,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(
        "Bernoulli operator identity",
        format!("{} n={n} f={f}", pair.name),
    );
    // lowered[k] = p^k f; the sum is evaluated Horner-style in q.
    let mut lowered = Vec::with_capacity(n + 1);
    lowered.push(f.clone());
    for k in 1..=n {
        let next = pair.lower(&lowered[k - 1])?;
        lowered.push(next);
    }
    let mut sum = Polynomial::zero();
    for k in (0..=n).rev() {
        if k < n {
            sum = pair.raise(&sum)?;
        }
        sum = sum + lowered[k].scale(&(sign(k) / factorial(k)));
    }
    let lhs = pair.lower(&sum)?;
    let mut rhs = pair.lower(&lowered[n])?;
    for _ in 0..n {
        rhs = pair.raise(&rhs)?;
    }
    let rhs = rhs.scale(&(sign(n) / factorial(n)));
    report.check(|| format!("n = {n}, f = {f}"), &lhs, &rhs);
    Ok(report)
}

/// Checks `sum_{k=0}^{n} a^k (1 - ab) b^k f = f - a^(n+1) b^(n+1) f` for an
/// arbitrary pair, plus `(1 - ab) g = g(0)` on every `g = b^k f`.
pub fn verify_telescoping_pair(
    name: &str,
    a: &dyn Fn(&Polynomial) -> Result<Polynomial>,
    b: &dyn Fn(&Polynomial) -> Result<Polynomial>,
    n: usize,
    f: &Polynomial,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("telescoping identity", format!("{name} n={n} f={f}"));
    let mut lhs = Polynomial::zero();
    let mut lowered = f.clone();
    for k in 0..=n {
        if k > 0 {
            lowered = b(&lowered)?;
        }
        let evaluated = &lowered - &a(&b(&lowered)?)?;
        report.check(
            || format!("(1 - ab) b^{k} f = eval at 0"),
            &evaluated,
            &Polynomial::constant(lowered.eval(&Rational::zero())),
        );
        let mut term = evaluated;
        for _ in 0..k {
            term = a(&term)?;
        }
        lhs = lhs + term;
    }
    let mut tail = b(&lowered)?;
    for _ in 0..=n {
        tail = a(&tail)?;
    }
    report.check(|| format!("n = {n}"), &lhs, &(f - &tail));
    Ok(report)
}

/// Telescoping identity with `a = int_psi`, `b = d_psi`.
pub fn verify_telescoping(
    ctx: &PsiContext,
    n: usize,
    f: &Polynomial,
) -> Result<VerificationReport> {
    verify_telescoping_pair(
        &format!("(int_psi, d_psi) psi={}", ctx.label()),
        &|g| psi_antiderivative(ctx, g),
        &|g| psi_derivative(ctx, g),
        n,
        f,
    )
}

/// Telescoping identity with `a` = definite summation, `b = Delta`.
pub fn verify_telescoping_difference(n: usize, f: &Polynomial) -> Result<VerificationReport> {
    verify_telescoping_pair(
        "(sum, Delta)",
        &|g| Ok(indefinite_sum(g)),
        &|g| Ok(delta(g)),
        n,
        f,
    )
}

/// Checks `d_psi (f *_psi g) = (Df) *_psi g + f *_psi (d_psi g)`.
pub fn verify_leibniz(
    ctx: &PsiContext,
    f: &Polynomial,
    g: &Polynomial,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(
        "Leibniz *_psi rule",
        format!("psi={} f={f} g={g}", ctx.label()),
    );
    let lhs = psi_derivative(ctx, &star_psi(ctx, f, g)?)?;
    let rhs = star_psi(ctx, &f.derivative(), g)? + star_psi(ctx, f, &psi_derivative(ctx, g)?)?;
    report.check(|| format!("f = {f}, g = {g}"), &lhs, &rhs);
    Ok(report)
}

/// Checks `exp[alpha x] *_psi exp_psi[beta x] = exp_psi[(alpha + beta) x]`
/// coefficient by coefficient up to degree `n_max`.
pub fn verify_exp_addition(
    ctx: &PsiContext,
    alpha: &Rational,
    beta: &Rational,
    n_max: usize,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(
        "exp addition",
        format!("psi={} alpha={alpha} beta={beta} N={n_max}", ctx.label()),
    );
    let lhs = star_psi(
        ctx,
        &exp_truncated(alpha, n_max),
        &psi_exp(ctx, beta, n_max)?,
    )?;
    let rhs = psi_exp(ctx, &(alpha + beta), n_max)?;
    for m in 0..=n_max {
        report.check(
            || format!("coefficient of x^{m}"),
            &lhs.coeff(m),
            &rhs.coeff(m),
        );
    }
    Ok(report)
}

/// Checks psi-integration by parts on `[a, b]`.
pub fn verify_per_partes(
    ctx: &PsiContext,
    f: &Polynomial,
    g: &Polynomial,
    a: &Rational,
    b: &Rational,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(
        "per partes psi-integration",
        format!("psi={} f={f} g={g} a={a} b={b}", ctx.label()),
    );
    let lhs = psi_definite_integral(ctx, &star_psi(ctx, f, &psi_derivative(ctx, g)?)?, a, b)?;
    let boundary = star_psi(ctx, f, g)?.eval_difference(a, b);
    let rhs = boundary - psi_definite_integral(ctx, &star_psi(ctx, &f.derivative(), g)?, a, b)?;
    report.check(|| format!("[{a}, {b}]"), &lhs, &rhs);
    Ok(report)
}

/// Checks `d_psi int_psi f = f`.
pub fn verify_fundamental_theorem(ctx: &PsiContext, f: &Polynomial) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(
        "fundamental theorem d_psi int_psi = id",
        format!("psi={} f={f}", ctx.label()),
    );
    let back = psi_derivative(ctx, &psi_antiderivative(ctx, f)?)?;
    report.check(|| format!("f = {f}"), &back, f);
    Ok(report)
}

/// Sign convention for the divided-difference series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesSigns {
    /// `(-1)^(n-1)` on the n-th term; the form that holds.
    Alternating,
    /// All terms positive. Fails from `f = x^2` on.
    Unsigned,
}

/// Checks the two expansions of `d_0 f` and `f(0)` in terms of `x^n f^(n)(x)/n!`.
pub fn verify_historical_series(f: &Polynomial) -> VerificationReport {
    verify_historical_series_with(f, SeriesSigns::Alternating)
}

pub fn verify_historical_series_with(f: &Polynomial, signs: SeriesSigns) -> VerificationReport {
    let label = match signs {
        SeriesSigns::Alternating => "alternating",
        SeriesSigns::Unsigned => "unsigned",
    };
    let mut report = VerificationReport::new("historical series", format!("{label} f={f}"));
    let top = f.len();

    let mut divided = Polynomial::zero();
    for n in 1..=top {
        let s = match signs {
            SeriesSigns::Alternating => sign(n - 1),
            SeriesSigns::Unsigned => int(1),
        };
        let term = f
            .nth_derivative(n)
            .shift_up(n - 1)
            .scale(&(s / factorial(n)));
        divided = divided + term;
    }
    report.check(
        || "d_0 f = sum x^(n-1) f^(n) / n!".into(),
        &divided_difference_zero(f),
        &divided,
    );

    let mut at_zero = Polynomial::zero();
    for n in 0..=top {
        let term = f
            .nth_derivative(n)
            .shift_up(n)
            .scale(&(sign(n) / factorial(n)));
        at_zero = at_zero + term;
    }
    report.check(
        || "f(0) = sum (-1)^n x^n f^(n) / n!".into(),
        &Polynomial::constant(f.eval(&Rational::zero())),
        &at_zero,
    );
    report
}

/// Checks `d_psi x^(n*psi) = n x^((n-1)*psi)` for `1 <= n <= n_max`.
pub fn verify_psi_power_derivative(ctx: &PsiContext, n_max: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(
        "d_psi of psi-powers",
        format!("psi={} n<={n_max}", ctx.label()),
    );
    for n in 1..=n_max {
        let lhs = psi_derivative(ctx, &psi_power(ctx, n)?)?;
        let rhs = psi_power(ctx, n - 1)?.scale(&int(n as i64));
        report.check(|| format!("n = {n}"), &lhs, &rhs);
    }
    Ok(report)
}

/// Checks `x^(n*psi) *_psi x^(k*psi) = (n!/n_psi!) x^((n+k)*psi)` for `n, k <= n_max`.
pub fn verify_psi_power_product(ctx: &PsiContext, n_max: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(
        "psi-power product rule",
        format!("psi={} n,k<={n_max}", ctx.label()),
    );
    for n in 0..=n_max {
        for k in 0..=n_max {
            let lhs = star_psi(ctx, &psi_power(ctx, n)?, &psi_power(ctx, k)?)?;
            let rhs = psi_power(ctx, n + k)?.scale(&ctx.power_coefficient(n)?);
            report.check(|| format!("n = {n}, k = {k}"), &lhs, &rhs);
        }
    }
    Ok(report)
}

/// Checks `f(x_hat_psi) g(x_hat_psi) 1 = f *_psi g~` with `g~ = g(x_hat_psi) 1`.
pub fn verify_umbral_product(
    ctx: &PsiContext,
    f: &Polynomial,
    g: &Polynomial,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(
        "umbral product f(x_hat) g(x_hat) 1 = f *_psi g~",
        format!("psi={} f={f} g={g}", ctx.label()),
    );
    let lhs = star_psi(ctx, &(f * g), &Polynomial::one())?;
    let rhs = star_psi(ctx, f, &umbral_tilde(ctx, g)?)?;
    report.check(|| format!("f = {f}, g = {g}"), &lhs, &rhs);
    Ok(report)
}
