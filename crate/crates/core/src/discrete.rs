//! Difference calculus on the integer lattice.

use num_traits::{One, Zero};

use crate::error::{CalcError, Result};
use crate::expansion::{ExpansionReport, LatticeSample};
use crate::poly::Polynomial;
use crate::rational::{factorial, int, sign, Rational};

/// A function on (a subset of) the integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeFunction {
    /// Defined everywhere by a polynomial.
    Poly(Polynomial),
    /// `values[i]` is the value at `start + i`; undefined elsewhere.
    Table { start: i64, values: Vec<Rational> },
}

impl LatticeFunction {
    /// A table on `{0, 1, ..., values.len() - 1}`.
    pub fn table(values: Vec<Rational>) -> Self {
        LatticeFunction::Table { start: 0, values }
    }

    pub fn eval(&self, x: i64) -> Result<Rational> {
        match self {
            LatticeFunction::Poly(p) => Ok(p.eval(&int(x))),
            LatticeFunction::Table { start, values } => x
                .checked_sub(*start)
                .and_then(|i| usize::try_from(i).ok())
                .and_then(|i| values.get(i))
                .cloned()
                .ok_or_else(|| CalcError::Range {
                    arg: x,
                    range: self.range_label(),
                }),
        }
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        match self {
            LatticeFunction::Poly(p) => Some(p),
            LatticeFunction::Table { .. } => None,
        }
    }

    fn range_label(&self) -> String {
        match self {
            LatticeFunction::Poly(_) => "Z".into(),
            LatticeFunction::Table { start, values } => {
                format!("[{start}, {}]", start + values.len() as i64 - 1)
            }
        }
    }
}

impl From<Polynomial> for LatticeFunction {
    fn from(p: Polynomial) -> Self {
        LatticeFunction::Poly(p)
    }
}

/// `E^h f (x) = f(x + h)`
pub fn shift(f: &Polynomial, h: i64) -> Polynomial {
    f.affine_compose(&Rational::one(), &int(h))
}

/// `(Delta f)(x) = f(x+1) - f(x)` on polynomials.
pub fn delta(f: &Polynomial) -> Polynomial {
    shift(f, 1) - f
}

/// `(nabla f)(x) = f(x) - f(x-1)` on polynomials.
pub fn nabla(f: &Polynomial) -> Polynomial {
    f - shift(f, -1)
}

fn successive_differences(
    f: &LatticeFunction,
    poly_op: fn(&Polynomial) -> Polynomial,
    start_shift: i64,
) -> Result<LatticeFunction> {
    match f {
        LatticeFunction::Poly(p) => Ok(LatticeFunction::Poly(poly_op(p))),
        LatticeFunction::Table { start, values } => {
            if values.len() < 2 {
                return Err(CalcError::Range {
                    arg: *start,
                    range: "difference of a table needs at least two entries".into(),
                });
            }
            Ok(LatticeFunction::Table {
                start: start + start_shift,
                values: values.windows(2).map(|w| &w[1] - &w[0]).collect(),
            })
        }
    }
}

/// Forward difference. A table on `[s, s+M]` maps to one on `[s, s+M-1]`.
pub fn forward_difference(f: &LatticeFunction) -> Result<LatticeFunction> {
    successive_differences(f, delta, 0)
}

/// Backward difference. A table on `[s, s+M]` maps to one on `[s+1, s+M]`.
pub fn backward_nabla(f: &LatticeFunction) -> Result<LatticeFunction> {
    successive_differences(f, nabla, 1)
}

/// `sum_{k=0}^{x-1} f(k)`; zero for `x = 0`.
pub fn definite_sum(f: &LatticeFunction, x: u64) -> Result<Rational> {
    (0..x as i64).try_fold(Rational::zero(), |acc, k| Ok(acc + f.eval(k)?))
}

/// Ordinary falling factorial `x (x-1) ... (x-k+1)` at an integer.
pub fn falling_factorial(x: i64, k: usize) -> Rational {
    (0..k as i64).fold(Rational::one(), |acc, j| acc * int(x - j))
}

/// The polynomial `x (x-1) ... (x-k+1)`.
pub fn falling_factorial_poly(k: usize) -> Polynomial {
    (0..k as i64).fold(Polynomial::one(), |acc, j| {
        acc * Polynomial::from_ints(&[-j, 1])
    })
}

/// `(a^k f)(x)` through the single-sum kernel
/// `sum_{r=0}^{x-1} (x-r-1)^(k-1 falling) / (k-1)! f(r)`.
pub fn iterated_sum(f: &LatticeFunction, k: usize, x: u64) -> Result<Rational> {
    if k == 0 {
        return Err(CalcError::Domain("iterated_sum needs k >= 1".into()));
    }
    let norm = factorial(k - 1);
    let x = x as i64;
    (0..x).try_fold(Rational::zero(), |acc, r| {
        Ok(acc + falling_factorial(x - r - 1, k - 1) / &norm * f.eval(r)?)
    })
}

/// Newton interpolation through `values[i]` at `x = i`.
pub fn interpolate_lattice(values: &[Rational]) -> Polynomial {
    let mut diffs = values.to_vec();
    let mut out = Polynomial::zero();
    for k in 0..values.len() {
        out = out + falling_factorial_poly(k).scale(&(&diffs[0] / factorial(k)));
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    out
}

/// The summation polynomial `S(x) = sum_{k=0}^{x-1} f(k)`, a left inverse of `Delta`.
pub fn indefinite_sum(f: &Polynomial) -> Polynomial {
    // f = sum_k Delta^k f(0) x^(k falling)/k!, and sum of r^(k falling) over r < x is x^(k+1 falling)/(k+1)
    let mut out = Polynomial::zero();
    let mut d = f.clone();
    for k in 0..f.len() {
        let at0 = d.eval(&Rational::zero());
        out = out + falling_factorial_poly(k + 1).scale(&(at0 / factorial(k + 1)));
        d = delta(&d);
    }
    out
}

/// Remainder of the Newton expansion of order `n` at integer `x >= 0`:
/// `sum_{r=0}^{x-1} (x-r-1)^(n falling)/n! (Delta^(n+1) f)(r)`.
pub fn newton_remainder_at(f: &Polynomial, n: usize, x: u64) -> Rational {
    let d = (0..=n).fold(f.clone(), |g, _| delta(&g));
    let norm = factorial(n);
    let x = x as i64;
    (0..x)
        .map(|r| falling_factorial(x - r - 1, n) / &norm * d.eval(&int(r)))
        .sum()
}

/// Newton expansion checked on the default sweep `x in [0, 16]`.
pub fn newton_expansion(f: &Polynomial, n: usize) -> ExpansionReport {
    newton_expansion_on(f, n, 16)
}

/// Newton (Delta-Bernoulli-Taylor) expansion of order `n` about 0.
///
/// Terms are `x^(k falling)/k! (Delta^k f)(0)`. The Cauchy remainder is the
/// lattice kernel sum; the report carries it at every `x in [0, sweep_max]`
/// and as the polynomial interpolating its values on `[0, deg f + 1]`.
pub fn newton_expansion_on(f: &Polynomial, n: usize, sweep_max: u64) -> ExpansionReport {
    let mut terms = Vec::with_capacity(n + 1);
    let mut d = f.clone();
    for k in 0..=n {
        let at0 = d.eval(&Rational::zero());
        terms.push(falling_factorial_poly(k).scale(&(at0 / factorial(k))));
        d = delta(&d);
    }
    let partial_sum = Polynomial::sum(&terms);

    let support = f.len() as u64 + 1;
    let kernel: Vec<Rational> = (0..support).map(|x| newton_remainder_at(f, n, x)).collect();
    let cauchy_remainder = interpolate_lattice(&kernel);
    let oracle_remainder = f - &partial_sum;

    let samples: Vec<LatticeSample> = (0..=sweep_max)
        .map(|x| {
            let at = int(x as i64);
            LatticeSample {
                x: x as i64,
                partial: partial_sum.eval(&at),
                remainder: newton_remainder_at(f, n, x),
                value: f.eval(&at),
            }
        })
        .collect();

    ExpansionReport::assemble(
        "newton".into(),
        Rational::zero(),
        n,
        None,
        f.clone(),
        terms,
        cauchy_remainder,
        oracle_remainder,
        samples,
    )
}

/// Sign convention for [`bernoulli_maclaurin`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaclaurinSigns {
    /// `(-1)^k` on the terms and `(-1)^(n+1)` on the remainder: the form that
    /// follows from the Bernoulli identity and holds for every `f`.
    Corrected,
    /// `(-1)^(k+1)` on the terms and `(-1)^n` on the remainder, which only
    /// balances when `f(0) = 0`.
    Flipped,
}

/// Bernoulli-Maclaurin formula for `f(0)` from backward differences at `alpha`:
///
/// ```text
/// f(0) = sum_{k=0}^{n} (-1)^k alpha^(k falling)/k! (nabla^k f)(alpha) + R
/// R    = (-1)^(n+1) sum_{r=0}^{alpha-1} r^(n falling)/n! (nabla^(n+1) f)(r+1)
/// ```
pub fn bernoulli_maclaurin(f: &Polynomial, alpha: u64, n: usize) -> ExpansionReport {
    bernoulli_maclaurin_with(f, alpha, n, MaclaurinSigns::Corrected)
}

pub fn bernoulli_maclaurin_with(
    f: &Polynomial,
    alpha: u64,
    n: usize,
    signs: MaclaurinSigns,
) -> ExpansionReport {
    let a = alpha as i64;
    let at_alpha = int(a);
    let flip = match signs {
        MaclaurinSigns::Corrected => Rational::one(),
        MaclaurinSigns::Flipped => -Rational::one(),
    };
    let mut terms = Vec::with_capacity(n + 1);
    let mut d = f.clone();
    for k in 0..=n {
        let value = falling_factorial(a, k) / factorial(k) * sign(k) * &flip * d.eval(&at_alpha);
        terms.push(Polynomial::constant(value));
        d = nabla(&d);
    }
    // d is now nabla^(n+1) f
    let norm = factorial(n);
    let kernel_sum: Rational = (0..a)
        .map(|r| falling_factorial(r, n) / &norm * d.eval(&int(r + 1)))
        .sum();
    let remainder = -(sign(n) * &flip * kernel_sum);

    let target = Polynomial::constant(f.eval(&Rational::zero()));
    let partial = Polynomial::sum(&terms);
    let oracle = &target - &partial;
    let label = match signs {
        MaclaurinSigns::Corrected => "maclaurin",
        MaclaurinSigns::Flipped => "maclaurin-flipped",
    };
    ExpansionReport::assemble(
        label.into(),
        at_alpha,
        n,
        Some(Rational::zero()),
        target,
        terms,
        Polynomial::constant(remainder),
        oracle,
        Vec::new(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn forward_difference_examples() {
        let sq = LatticeFunction::Poly(Polynomial::from_ints(&[0, 0, 1]));
        assert_eq!(
            forward_difference(&sq).unwrap(),
            LatticeFunction::Poly(Polynomial::from_ints(&[1, 2]))
        );
        let c = LatticeFunction::Poly(Polynomial::from_ints(&[4]));
        assert_eq!(
            forward_difference(&c).unwrap(),
            LatticeFunction::Poly(Polynomial::zero())
        );
        let t = LatticeFunction::table(ints(&[0, 1, 4, 9]));
        assert_eq!(
            forward_difference(&t).unwrap(),
            LatticeFunction::table(ints(&[1, 3, 5]))
        );
        assert!(matches!(
            forward_difference(&LatticeFunction::table(ints(&[3]))),
            Err(CalcError::Range { .. })
        ));
    }

    #[test]
    fn backward_nabla_examples() {
        let sq = LatticeFunction::Poly(Polynomial::from_ints(&[0, 0, 1]));
        assert_eq!(
            backward_nabla(&sq).unwrap(),
            LatticeFunction::Poly(Polynomial::from_ints(&[-1, 2]))
        );
        let id = LatticeFunction::Poly(Polynomial::x());
        assert_eq!(
            backward_nabla(&id).unwrap(),
            LatticeFunction::Poly(Polynomial::one())
        );
        let t = backward_nabla(&LatticeFunction::table(ints(&[0, 1, 4, 9]))).unwrap();
        assert_eq!(t.eval(1).unwrap(), int(1));
        assert_eq!(t.eval(3).unwrap(), int(5));
        assert!(matches!(t.eval(0), Err(CalcError::Range { arg: 0, .. })));
    }

    #[test]
    fn definite_sum_examples() {
        let id = LatticeFunction::Poly(Polynomial::x());
        assert_eq!(definite_sum(&id, 4).unwrap(), int(6));
        assert_eq!(definite_sum(&id, 0).unwrap(), int(0));
        let one = LatticeFunction::Poly(Polynomial::one());
        assert_eq!(definite_sum(&one, 7).unwrap(), int(7));
        let t = LatticeFunction::table(ints(&[1, 2, 3]));
        assert_eq!(definite_sum(&t, 3).unwrap(), int(6));
        assert!(matches!(
            definite_sum(&t, 4),
            Err(CalcError::Range { arg: 3, .. })
        ));
    }

    #[test]
    fn iterated_sum_examples() {
        let id = LatticeFunction::Poly(Polynomial::x());
        for x in 0..8 {
            assert_eq!(
                iterated_sum(&id, 1, x).unwrap(),
                definite_sum(&id, x).unwrap()
            );
        }
        let one = LatticeFunction::Poly(Polynomial::one());
        assert_eq!(iterated_sum(&one, 2, 3).unwrap(), int(3));
        // sum_{r<4} (3 - r) r = 0 + 2 + 2 + 0
        assert_eq!(iterated_sum(&id, 2, 4).unwrap(), int(4));
        assert!(iterated_sum(&id, 0, 4).is_err());
    }

    #[test]
    fn falling_factorial_paths_agree() {
        for k in 0..8 {
            let p = falling_factorial_poly(k);
            for x in -5..12 {
                assert_eq!(p.eval(&int(x)), falling_factorial(x, k));
            }
        }
    }

    #[test]
    fn indefinite_sum_matches_brute_force() {
        let f = Polynomial::from_ints(&[3, -1, 0, 2, 1]);
        let s = indefinite_sum(&f);
        let lf = LatticeFunction::Poly(f.clone());
        for x in 0..15u64 {
            assert_eq!(s.eval(&int(x as i64)), definite_sum(&lf, x).unwrap());
        }
        assert_eq!(delta(&s), f);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = Polynomial::from_ints(&[1, -4, 0, 2]);
        let vals: Vec<_> = (0..6).map(|x| f.eval(&int(x))).collect();
        assert_eq!(interpolate_lattice(&vals), f);
    }

    #[test]
    fn newton_examples() {
        let sq = Polynomial::from_ints(&[0, 0, 1]);
        let r = newton_expansion(&sq, 2);
        assert_eq!(r.terms[0], Polynomial::zero());
        assert_eq!(r.terms[1], Polynomial::x());
        assert_eq!(r.terms[2], Polynomial::from_ints(&[0, -1, 1]));
        assert_eq!(r.partial_sum, sq);
        assert!(r.cauchy_remainder.is_zero());
        assert!(r.exact);

        let cube = Polynomial::monomial(int(1), 3);
        let r = newton_expansion(&cube, 1);
        assert_eq!(r.partial_sum.eval(&int(2)), int(2));
        assert_eq!(newton_remainder_at(&cube, 1, 2), int(6));
        assert!(r.exact);
        assert_eq!(r.samples[2].remainder, int(6));
    }

    #[test]
    fn maclaurin_examples() {
        // f = x, alpha = 2, n = 1: terms f(2) = 2 and -2 (nabla f)(2) = -2
        let r = bernoulli_maclaurin(&Polynomial::x(), 2, 1);
        assert_eq!(
            r.terms,
            vec![Polynomial::from_ints(&[2]), Polynomial::from_ints(&[-2])]
        );
        assert!(r.cauchy_remainder.is_zero());
        assert!(r.exact);

        let r = bernoulli_maclaurin(&Polynomial::from_ints(&[0, 0, 1]), 3, 2);
        assert_eq!(r.partial_sum + r.cauchy_remainder, Polynomial::zero());
        assert!(r.exact);
    }

    #[test]
    fn maclaurin_order_zero() {
        // f(0) = f(alpha) - sum_{r<alpha} (nabla f)(r+1)
        let c = Polynomial::constant(int(5));
        let r = bernoulli_maclaurin(&c, 3, 0);
        assert_eq!(r.terms, vec![Polynomial::constant(int(5))]);
        assert!(r.cauchy_remainder.is_zero());
        assert!(r.exact);
        let f = Polynomial::from_ints(&[2, -1, 3]);
        assert!(bernoulli_maclaurin(&f, 4, 0).exact);
    }

    #[test]
    fn maclaurin_flipped_needs_vanishing_constant() {
        let r = bernoulli_maclaurin_with(&Polynomial::x(), 2, 1, MaclaurinSigns::Flipped);
        assert_eq!(
            r.terms,
            vec![Polynomial::from_ints(&[-2]), Polynomial::from_ints(&[2])]
        );
        assert!(r.exact);
        let shifted = Polynomial::from_ints(&[1, 1]);
        let r = bernoulli_maclaurin_with(&shifted, 2, 1, MaclaurinSigns::Flipped);
        assert!(!r.exact);
        let c = Polynomial::constant(int(5));
        assert!(!bernoulli_maclaurin_with(&c, 3, 0, MaclaurinSigns::Flipped).exact);
    }
}
