//! The psi-calculus operator algebra on polynomials.
//!
//! `d_psi` lowers `x^n` to `n_psi x^(n-1)`, `x_hat_psi` raises `x^n` to
//! `(n+1)/(n+1)_psi x^(n+1)`, and together they satisfy `[d_psi, x_hat_psi] = 1`.
//! The `*_psi` product substitutes `x_hat_psi` for the variable of its left
//! factor: `f *_psi g = f(x_hat_psi) g`.

use num_traits::Zero;

use crate::error::Result;
use crate::poly::Polynomial;
use crate::psi::PsiContext;
use crate::rational::{factorial, pow, Rational};

/// `d_psi x^n = n_psi x^(n-1)`
pub fn psi_derivative(ctx: &PsiContext, f: &Polynomial) -> Result<Polynomial> {
    let mut out = vec![Rational::zero(); f.len().saturating_sub(1)];
    for (n, c) in f.terms().filter(|(n, _)| *n >= 1) {
        out[n - 1] = c * ctx.factor(n)?;
    }
    Ok(Polynomial::from_coeffs(out))
}

/// `x_hat_psi x^n = (n+1)/(n+1)_psi x^(n+1)`
pub fn x_hat_psi(ctx: &PsiContext, f: &Polynomial) -> Result<Polynomial> {
    let mut out = vec![Rational::zero(); f.len() + 1];
    for (n, c) in f.terms() {
        out[n + 1] = c * Rational::from_integer((n + 1).into()) / ctx.factor(n + 1)?;
    }
    Ok(Polynomial::from_coeffs(out))
}

/// `int_psi x^n = x^(n+1) / (n+1)_psi`, zero constant term.
pub fn psi_antiderivative(ctx: &PsiContext, f: &Polynomial) -> Result<Polynomial> {
    let mut out = vec![Rational::zero(); f.len() + 1];
    for (n, c) in f.terms() {
        out[n + 1] = c / ctx.factor(n + 1)?;
    }
    Ok(Polynomial::from_coeffs(out))
}

/// `F(b) - F(a)` with `F = int_psi f`.
pub fn psi_definite_integral(
    ctx: &PsiContext,
    f: &Polynomial,
    a: &Rational,
    b: &Rational,
) -> Result<Rational> {
    if a == b {
        return Ok(Rational::zero());
    }
    Ok(psi_antiderivative(ctx, f)?.eval_difference(a, b))
}

/// `f *_psi g = f(x_hat_psi) g`, with operator powers applied one at a time.
pub fn star_psi(ctx: &PsiContext, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    let mut acc = Polynomial::zero();
    let mut power = g.clone();
    for (k, c) in f.coeffs().iter().enumerate() {
        if k > 0 {
            power = x_hat_psi(ctx, &power)?;
        }
        if !c.is_zero() {
            acc = acc + power.scale(c);
        }
    }
    Ok(acc)
}

/// The psi-power `x^(n*psi) = (n!/n_psi!) x^n`.
pub fn psi_power(ctx: &PsiContext, n: usize) -> Result<Polynomial> {
    Ok(Polynomial::monomial(ctx.power_coefficient(n)?, n))
}

/// The umbral map `g -> g(x_hat_psi) 1`, i.e. `x^n -> x^(n*psi)`.
pub fn umbral_tilde(ctx: &PsiContext, g: &Polynomial) -> Result<Polynomial> {
    let mut out = vec![Rational::zero(); g.len()];
    for (n, c) in g.terms() {
        out[n] = c * ctx.power_coefficient(n)?;
    }
    Ok(Polynomial::from_coeffs(out))
}

/// Degree-`n_max` truncation of `exp_psi[alpha x] = sum alpha^n x^n / n_psi!`.
pub fn psi_exp(ctx: &PsiContext, alpha: &Rational, n_max: usize) -> Result<Polynomial> {
    let coeffs = (0..=n_max)
        .map(|n| Ok(pow(alpha, n) / ctx.factorial(n)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::from_coeffs(coeffs))
}

/// Degree-`n_max` truncation of the ordinary `exp[alpha x]`.
pub fn exp_truncated(alpha: &Rational, n_max: usize) -> Polynomial {
    Polynomial::from_coeffs((0..=n_max).map(|n| pow(alpha, n) / factorial(n)).collect())
}

/// `d_0 x^n = x^(n-1)`, constants to zero; equals `(f(x) - f(0)) / x`.
pub fn divided_difference_zero(f: &Polynomial) -> Polynomial {
    Polynomial::from_coeffs(f.coeffs().iter().skip(1).cloned().collect())
}

/// Applies `op` to `f` repeatedly.
pub fn iterate<F>(mut op: F, f: &Polynomial, times: usize) -> Result<Polynomial>
where
    F: FnMut(&Polynomial) -> Result<Polynomial>,
{
    (0..times).try_fold(f.clone(), |acc, _| op(&acc))
}
