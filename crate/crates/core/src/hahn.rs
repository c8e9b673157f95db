//! q-derivatives, the Hahn `(q, h)`-derivative and Jackson q-integration.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{CalcError, Result};
use crate::operators::{psi_antiderivative, psi_derivative};
use crate::poly::Polynomial;
use crate::psi::PsiContext;
use crate::rational::{int, to_f64, Rational};
use crate::report::VerificationReport;

/// Parameters of the Hahn operator `(f(x) - f(qx + h)) / ((1 - q)x - h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HahnParams {
    pub q: Rational,
    pub h: Rational,
}

impl HahnParams {
    pub fn new(q: Rational, h: Rational) -> Self {
        HahnParams { q, h }
    }

    /// The conjugating shift `h / (1 - q)`; `None` when `q = 1`.
    pub fn center(&self) -> Option<Rational> {
        let gap = Rational::one() - &self.q;
        (!gap.is_zero()).then(|| &self.h / gap)
    }
}

/// Hard cap on the number of Jackson series terms.
pub const JACKSON_MAX_TERMS: usize = 100_000;

/// Consecutive small terms required before the Jackson series stops. A single
/// small term can be an isolated root of the integrand.
pub const JACKSON_STABLE_RUN: usize = 8;

/// `d_q x^n = n_q x^(n-1)`; the classical derivative at `q = 1`.
pub fn q_derivative(f: &Polynomial, q: &Rational) -> Result<Polynomial> {
    psi_derivative(&PsiContext::gauss_q(q.clone()), f)
}

/// Exact quotient `(f(x) - f(qx + h)) / ((1 - q)x - h)`.
pub fn hahn_derivative(f: &Polynomial, p: &HahnParams) -> Result<Polynomial> {
    let denominator = Polynomial::from_coeffs(vec![-p.h.clone(), Rational::one() - &p.q]);
    if denominator.is_zero() {
        return Err(CalcError::DegenerateParams);
    }
    let numerator = f - &f.affine_compose(&p.q, &p.h);
    let (quotient, rem) = numerator
        .div_rem(&denominator)
        .ok_or(CalcError::DegenerateParams)?;
    if !rem.is_zero() {
        return Err(CalcError::Internal(format!(
            "Hahn quotient of {f} left remainder {rem}"
        )));
    }
    Ok(quotient)
}

/// Checks `d_{q,h} = E_{1,-c} d_q E_{1,c}` with `c = h/(1-q)` on `x^n`, `n <= n_max`.
pub fn verify_hahn_reduction(p: &HahnParams, n_max: usize) -> Result<VerificationReport> {
    let c = p
        .center()
        .ok_or_else(|| CalcError::Domain("the Hahn reduction needs q != 1".into()))?;
    let mut report = VerificationReport::new(
        "Hahn reduction to q-calculus",
        format!("q={} h={} n<={n_max}", p.q, p.h),
    );
    let one = Rational::one();
    for n in 0..=n_max {
        let f = Polynomial::monomial(one.clone(), n);
        let lhs = hahn_derivative(&f, p)?;
        let rhs = q_derivative(&f.affine_compose(&one, &c), &p.q)?.affine_compose(&one, &-&c);
        report.check(|| format!("n = {n}"), &lhs, &rhs);
    }
    Ok(report)
}

/// Antiderivative `sum c_n z^(n+1) / (n+1)_q` as a polynomial in `z`.
pub fn jackson_antiderivative(f: &Polynomial, q: &Rational) -> Result<Polynomial> {
    psi_antiderivative(&PsiContext::gauss_q(q.clone()), f)
}

/// Exact Jackson integral of a polynomial from 0 to `z`.
pub fn jackson_integral_exact(f: &Polynomial, q: &Rational, z: &Rational) -> Result<Rational> {
    Ok(jackson_antiderivative(f, q)?.eval(z))
}

/// Checks `d_q` undoes the Jackson antiderivative.
pub fn verify_jackson_inverse(f: &Polynomial, q: &Rational) -> Result<VerificationReport> {
    let mut report =
        VerificationReport::new("Jackson inverse d_q int_q = id", format!("q={q} f={f}"));
    let back = q_derivative(&jackson_antiderivative(f, q)?, q)?;
    report.check(|| format!("f = {f}"), &back, f);
    Ok(report)
}

/// Result of the truncated Jackson series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JacksonNumeric {
    pub value: f64,
    /// Index of the last term summed.
    pub terms_used: usize,
    /// `q` and `z` after the one-time conversion to `f64`.
    pub q: f64,
    pub z: f64,
    pub tail_tol: f64,
    pub max_terms: usize,
}

/// Truncated Jackson series `(1-q) z sum_{k=0}^{K} f(q^k z) q^k` for `0 < q < 1`.
///
/// A term is small when `|z| |f(q^k z) q^k| < tail_tol`, i.e. its geometric
/// tail estimate `(1-q)|z| |term| / (1-q)` is below the tolerance. `K` is the
/// first index closing a run of [`JACKSON_STABLE_RUN`] small terms. Summation
/// is compensated.
pub fn jackson_integral_numeric<F>(
    f: F,
    q: &Rational,
    z: &Rational,
    tail_tol: f64,
) -> Result<JacksonNumeric>
where
    F: Fn(f64) -> f64,
{
    if *q <= Rational::zero() || *q >= Rational::one() {
        return Err(CalcError::Domain(format!(
            "the Jackson series needs 0 < q < 1, got q = {q}"
        )));
    }
    if tail_tol.is_nan() || tail_tol <= 0.0 {
        return Err(CalcError::Domain(format!(
            "tail tolerance must be positive, got {tail_tol}"
        )));
    }
    let qf = to_f64(q);
    let zf = to_f64(z);
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut run = 0;
    for k in 0..JACKSON_MAX_TERMS {
        let qk = qf.powi(k as i32);
        let term = f(qk * zf) * qk;
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        if zf.abs() * term.abs() < tail_tol {
            run += 1;
        } else {
            run = 0;
        }
        if run == JACKSON_STABLE_RUN {
            return Ok(JacksonNumeric {
                value: (1.0 - qf) * zf * (sum + comp),
                terms_used: k,
                q: qf,
                z: zf,
                tail_tol,
                max_terms: JACKSON_MAX_TERMS,
            });
        }
    }
    Err(CalcError::Convergence {
        cap: JACKSON_MAX_TERMS,
    })
}

/// Evaluates a polynomial in `f64`, for feeding the numeric Jackson path.
pub fn poly_f64(f: &Polynomial) -> impl Fn(f64) -> f64 + '_ {
    let coeffs: Vec<f64> = f.coeffs().iter().map(to_f64).collect();
    move |x| coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// `(q, h) = (1, 1)`, where the Hahn operator is the forward difference.
pub fn forward_difference_params() -> HahnParams {
    HahnParams::new(int(1), int(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discrete::delta;
    use crate::rational::ratio;

    fn mono(n: usize) -> Polynomial {
        Polynomial::monomial(int(1), n)
    }

    #[test]
    fn q_derivative_examples() {
        assert_eq!(
            q_derivative(&mono(3), &int(1)).unwrap(),
            Polynomial::monomial(int(3), 2)
        );
        assert_eq!(
            q_derivative(&mono(3), &int(2)).unwrap(),
            Polynomial::monomial(int(7), 2)
        );
        assert_eq!(
            q_derivative(&mono(2), &ratio(1, 2)).unwrap(),
            Polynomial::monomial(ratio(3, 2), 1)
        );
        assert!(matches!(
            q_derivative(&mono(2), &int(-1)),
            Err(CalcError::Admissibility { n: 2, .. })
        ));
    }

    #[test]
    fn q_derivative_is_difference_quotient() {
        let q = ratio(2, 5);
        let f = Polynomial::from_ints(&[3, -1, 4, 1, -5]);
        let num = &f - &f.affine_compose(&q, &Rational::zero());
        let den = Polynomial::monomial(Rational::one() - &q, 1);
        let (quot, rem) = num.div_rem(&den).unwrap();
        assert!(rem.is_zero());
        assert_eq!(q_derivative(&f, &q).unwrap(), quot);
    }

    #[test]
    fn hahn_examples() {
        let p = HahnParams::new(int(2), int(3));
        assert_eq!(
            hahn_derivative(&Polynomial::x(), &p).unwrap(),
            Polynomial::one()
        );
        assert_eq!(
            hahn_derivative(&mono(2), &p).unwrap(),
            Polynomial::from_ints(&[3, 3])
        );
        let f = Polynomial::from_ints(&[1, -2, 0, 3]);
        assert_eq!(
            hahn_derivative(&f, &forward_difference_params()).unwrap(),
            delta(&f)
        );
    }

    #[test]
    fn hahn_degenerate() {
        let p = HahnParams::new(int(1), int(0));
        assert_eq!(
            hahn_derivative(&mono(2), &p),
            Err(CalcError::DegenerateParams)
        );
    }

    #[test]
    fn reduction_examples() {
        assert!(verify_hahn_reduction(&HahnParams::new(int(2), int(3)), 2)
            .unwrap()
            .passed());
        assert!(
            verify_hahn_reduction(&HahnParams::new(ratio(3, 2), int(0)), 10)
                .unwrap()
                .passed()
        );
        assert!(
            verify_hahn_reduction(&HahnParams::new(ratio(1, 2), int(1)), 32)
                .unwrap()
                .passed()
        );
        assert!(verify_hahn_reduction(&HahnParams::new(int(1), int(1)), 3).is_err());
    }

    #[test]
    fn jackson_exact_examples() {
        assert_eq!(
            jackson_integral_exact(&mono(2), &int(1), &int(1)).unwrap(),
            ratio(1, 3)
        );
        assert_eq!(
            jackson_integral_exact(&mono(1), &int(2), &int(1)).unwrap(),
            ratio(1, 3)
        );
        assert_eq!(
            jackson_integral_exact(&Polynomial::zero(), &ratio(1, 2), &int(5)).unwrap(),
            int(0)
        );
    }

    #[test]
    fn jackson_inverse_examples() {
        assert!(verify_jackson_inverse(&mono(3), &int(2)).unwrap().passed());
        let f = Polynomial::from_ints(&[2, 0, -7, 1]);
        assert!(verify_jackson_inverse(&f, &int(1)).unwrap().passed());
        assert!(verify_jackson_inverse(&Polynomial::zero(), &int(3))
            .unwrap()
            .passed());
    }

    #[test]
    fn jackson_numeric_examples() {
        let r = jackson_integral_numeric(|t| t, &ratio(9, 10), &int(1), 1e-16).unwrap();
        assert!((r.value - 1.0 / 1.9).abs() < 1e-12, "{}", r.value);
        let r = jackson_integral_numeric(|t| t * t, &ratio(999, 1000), &int(1), 1e-16).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-3);
        let r = jackson_integral_numeric(|_| 1.0, &ratio(1, 2), &int(1), 1e-17).unwrap();
        assert!((r.value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn jackson_numeric_survives_isolated_root() {
        // t - 1 vanishes at the first sample point z = 1
        let q = ratio(1, 2);
        let r = jackson_integral_numeric(|t| t - 1.0, &q, &int(1), 1e-16).unwrap();
        let exact = jackson_integral_exact(&Polynomial::from_ints(&[-1, 1]), &q, &int(1)).unwrap();
        assert!((r.value - to_f64(&exact)).abs() < 1e-14);
        assert!(r.terms_used >= JACKSON_STABLE_RUN);
    }

    #[test]
    fn jackson_numeric_errors() {
        assert!(matches!(
            jackson_integral_numeric(|t| t, &int(2), &int(1), 1e-12),
            Err(CalcError::Domain(_))
        ));
        assert!(matches!(
            jackson_integral_numeric(|t| t, &int(0), &int(1), 1e-12),
            Err(CalcError::Domain(_))
        ));
        // a growing integrand never meets the tail criterion
        assert!(matches!(
            jackson_integral_numeric(|t| 1.0 / (t * t), &ratio(1, 2), &int(1), 1e-12),
            Err(CalcError::Convergence { .. })
        ));
    }
}
