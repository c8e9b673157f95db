//! Dense univariate polynomials over [`Rational`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// A polynomial `c_0 + c_1 x + ... + c_d x^d` stored densely.
///
/// The coefficient list is always trimmed so that the last entry is
/// nonzero; the zero polynomial has no coefficients and degree `-1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^n`
    pub fn monomial(c: Rational, n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = c;
        Self::from_coeffs(coeffs)
    }

    /// Builds a polynomial from coefficients in ascending degree order.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| crate::rational::int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^n`, zero beyond the degree.
    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    /// Number of stored coefficients, i.e. `degree + 1`.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Iterates `(n, c_n)` over the nonzero coefficients.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Evaluation functional `f -> f(a)` (Horner).
    pub fn eval(&self, a: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * a + c)
    }

    /// `f(b) - f(a)`
    pub fn eval_difference(&self, a: &Rational, b: &Rational) -> Rational {
        self.eval(b) - self.eval(a)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// `x^k * f`
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// The polynomial `g(x) = f(q x + h)`.
    pub fn affine_compose(&self, q: &Rational, h: &Rational) -> Self {
        if q.is_integer() && h.is_integer() {
            return self.affine_compose_integral(q.numer(), h.numer());
        }
        // Horner in (q x + h): acc <- acc (q x + h) + c_n, from the top down.
        let mut acc: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        for c in self.coeffs.iter().rev() {
            acc.push(Rational::zero());
            for j in (0..acc.len()).rev() {
                let mut v = if h.is_zero() {
                    Rational::zero()
                } else {
                    &acc[j] * h
                };
                if j > 0 && !acc[j - 1].is_zero() {
                    v += &acc[j - 1] * q;
                }
                acc[j] = v;
            }
            acc[0] += c;
        }
        Self::from_coeffs(acc)
    }

    /// Same Horner scheme over a common denominator, in integers.
    fn affine_compose_integral(&self, q: &BigInt, h: &BigInt) -> Self {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let mut acc: Vec<BigInt> = Vec::with_capacity(self.coeffs.len());
        for c in self.coeffs.iter().rev() {
            acc.push(BigInt::zero());
            for j in (1..acc.len()).rev() {
                acc[j] = &acc[j] * h + &acc[j - 1] * q;
            }
            acc[0] = &acc[0] * h + c.numer() * (&den / c.denom());
        }
        Self::from_coeffs(
            acc.into_iter()
                .map(|a| Rational::new(a, den.clone()))
                .collect(),
        )
    }

    /// Classical derivative `D`.
    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, c)| c * Rational::from_integer(n.into()))
                .collect(),
        )
    }

    /// `D^k f`
    pub fn nth_derivative(&self, k: usize) -> Self {
        (0..k).fold(self.clone(), |f, _| f.derivative())
    }

    /// Classical antiderivative with zero constant term.
    pub fn integral(&self) -> Self {
        let mut coeffs = vec![Rational::zero()];
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c / Rational::from_integer((n + 1).into())),
        );
        Self::from_coeffs(coeffs)
    }

    /// Euclidean division by a nonzero divisor: `self = q * divisor + r`
    /// with `deg r < deg divisor`. Returns `None` for a zero divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> Option<(Polynomial, Polynomial)> {
        let lead = divisor.coeffs.last()?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Some((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Sum of a sequence of polynomials.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Polynomial>) -> Polynomial {
        items.into_iter().fold(Self::zero(), |acc, p| &acc + p)
    }
}

fn combine(
    a: &[Rational],
    b: &[Rational],
    op: impl Fn(&Rational, &Rational) -> Rational,
) -> Polynomial {
    let zero = Rational::zero();
    let n = a.len().max(b.len());
    Polynomial::from_coeffs(
        (0..n)
            .map(|i| op(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
            .collect(),
    )
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        combine(&self.coeffs, &rhs.coeffs, |x, y| x + y)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        combine(&self.coeffs, &rhs.coeffs, |x, y| x - y)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                out[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $trait<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

/// Prints in the expression grammar accepted by [`crate::parse::parse_poly`],
/// highest degree first, e.g. `3/2*x^3 - x + 1`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (n, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let var = match n {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{n}"),
            };
            match (mag.is_one(), n) {
                (_, 0) => write!(f, "{mag}")?,
                (true, _) => f.write_str(&var)?,
                (false, _) => write!(f, "{mag}*{var}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{binomial, int, pow, ratio};

    #[test]
    fn eval_examples() {
        let f = Polynomial::from_ints(&[-1, 0, 1]);
        assert_eq!(f.eval(&int(3)), int(8));
        assert_eq!(Polynomial::zero().eval(&ratio(7, 2)), int(0));
        let g = Polynomial::from_coeffs(vec![int(0), int(1), int(0), ratio(2, 3)]);
        assert_eq!(g.eval(&ratio(3, 2)), ratio(15, 4));
    }

    #[test]
    fn eval_matches_power_sum() {
        // independent route: sum c_i a^i with explicit powers
        let g = Polynomial::from_coeffs(vec![int(0), int(1), int(0), ratio(2, 3)]);
        let a = ratio(3, 2);
        let direct: Rational = g
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c * pow(&a, i))
            .sum();
        assert_eq!(direct, g.eval(&a));
    }

    #[test]
    fn affine_compose_examples() {
        let sq = Polynomial::monomial(int(1), 2);
        assert_eq!(sq.affine_compose(&int(1), &int(0)), sq);
        assert_eq!(
            sq.affine_compose(&int(1), &int(-3)),
            Polynomial::from_ints(&[9, -6, 1])
        );
        assert_eq!(
            Polynomial::x().affine_compose(&int(2), &int(3)),
            Polynomial::from_ints(&[3, 2])
        );
    }

    #[test]
    fn affine_compose_matches_binomial_expansion() {
        let f = Polynomial::from_coeffs(vec![ratio(1, 3), int(-2), int(0), ratio(5, 4), int(7)]);
        for (q, h) in [
            (int(1), int(-1)),
            (int(-2), int(3)),
            (ratio(1, 2), ratio(-7, 5)),
            (int(3), ratio(2, 3)),
        ] {
            let mut expect = vec![Rational::zero(); f.len()];
            for (n, c) in f.terms() {
                for (j, slot) in expect.iter_mut().enumerate().take(n + 1) {
                    *slot += c * binomial(n, j) * pow(&q, j) * pow(&h, n - j);
                }
            }
            assert_eq!(f.affine_compose(&q, &h), Polynomial::from_coeffs(expect));
        }
    }

    #[test]
    fn eval_difference_examples() {
        let cube = Polynomial::monomial(int(1), 3);
        assert_eq!(cube.eval_difference(&int(0), &int(1)), int(1));
        let c = Polynomial::constant(int(5));
        assert_eq!(c.eval_difference(&int(-4), &ratio(9, 7)), int(0));
        let f = Polynomial::from_ints(&[0, -1, 1]);
        assert_eq!(f.eval_difference(&int(1), &int(3)), int(6));
    }

    #[test]
    fn zero_has_degree_minus_one() {
        assert_eq!(Polynomial::zero().degree(), -1);
        assert_eq!(Polynomial::from_ints(&[0, 0, 0]).degree(), -1);
        assert_eq!(Polynomial::from_ints(&[1, 2, 0]).degree(), 1);
    }

    #[test]
    fn exact_division() {
        // (-3x^2 - 12x - 9) / (-x - 3) = 3x + 3
        let n = Polynomial::from_ints(&[-9, -12, -3]);
        let d = Polynomial::from_ints(&[-3, -1]);
        let (q, r) = n.div_rem(&d).unwrap();
        assert_eq!(q, Polynomial::from_ints(&[3, 3]));
        assert!(r.is_zero());
        assert!(n.div_rem(&Polynomial::zero()).is_none());
        let (q, r) = Polynomial::from_ints(&[1, 0, 1])
            .div_rem(&Polynomial::from_ints(&[1, 1]))
            .unwrap();
        assert_eq!(q, Polynomial::from_ints(&[-1, 1]));
        assert_eq!(r, Polynomial::from_ints(&[2]));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::from_ints(&[-1, 0, 1]).to_string(), "x^2 - 1");
        let f = Polynomial::from_coeffs(vec![int(1), int(-1), int(0), ratio(3, 2)]);
        assert_eq!(f.to_string(), "3/2*x^3 - x + 1");
        assert_eq!(Polynomial::from_ints(&[0, -1]).to_string(), "-x");
        assert_eq!(
            Polynomial::from_coeffs(vec![ratio(-1, 2), ratio(-2, 3)]).to_string(),
            "-2/3*x - 1/2"
        );
    }

    #[test]
    fn derivative_and_integral() {
        let f = Polynomial::from_ints(&[5, 3, 0, 4]);
        assert_eq!(f.derivative(), Polynomial::from_ints(&[3, 0, 12]));
        assert_eq!(f.integral().derivative(), f);
        assert_eq!(f.nth_derivative(4), Polynomial::zero());
    }
}
