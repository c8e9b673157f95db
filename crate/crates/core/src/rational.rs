//! Exact rational scalars.
//!
//! [`Rational`] is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator; zero is `0/1`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q` in lowest terms. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Rational::from_integer(acc)
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Rational::from_integer(acc)
}

pub fn pow(base: &Rational, exp: usize) -> Rational {
    num_traits::pow(base.clone(), exp)
}

/// `(-1)^k`
pub fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Parses `p` or `p/q` with an optional leading minus; `q` must be nonzero.
pub fn parse_rational(src: &str) -> Result<Rational, ParseError> {
    let s = src.trim();
    let offset = src.len() - src.trim_start().len();
    let (neg, body, body_off) = match s.strip_prefix('-') {
        Some(rest) => (true, rest, offset + 1),
        None => (false, s, offset),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |text: &str, at: usize| -> Result<BigInt, ParseError> {
        if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
            let bad = text.bytes().position(|b| !b.is_ascii_digit()).unwrap_or(0);
            return Err(ParseError::new(at + bad, "decimal digits"));
        }
        Ok(text.parse::<BigInt>().expect("validated digits"))
    };
    let mut p = digits(num, body_off)?;
    if neg {
        p = -p;
    }
    let q = match den {
        Some(d) => {
            let at = body_off + num.len() + 1;
            let q = digits(d, at)?;
            if q.is_zero() {
                return Err(ParseError::new(at, "nonzero denominator"));
            }
            q
        }
        None => BigInt::one(),
    };
    Ok(Rational::new(p, q))
}

/// Serde helpers writing rationals as `p/q` strings.
pub mod serde_str {
    use super::Rational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn option<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.collect_str(r),
            None => s.serialize_none(),
        }
    }
}

/// Lossy conversion used only on the numeric Jackson path.
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}
