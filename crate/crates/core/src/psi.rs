//! Admissible sequences and the "upside-down" psi-numbers.
//!
//! A sequence is described by its factors `n_psi` (`n >= 1`). Everything else
//! (`n_psi!`, falling psi-factorials, psi-powers) is derived from them.

use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use num_traits::{One, Zero};

use crate::error::{CalcError, ParseError, Result};
use crate::rational::{parse_rational, Rational};

/// The supported families of admissible sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdmissibleSequence {
    /// `n_psi = n`
    Classical,
    /// `n_psi = 1 + q + ... + q^(n-1)`; equals `n` at `q = 1`.
    GaussQ(Rational),
    /// `n_psi = F_n` with `F_1 = F_2 = 1`.
    Fibonomial,
    /// `n_psi = factors[n - 1]`, given directly.
    Custom(Vec<Rational>),
}

impl AdmissibleSequence {
    pub fn gauss_q(q: Rational) -> Self {
        AdmissibleSequence::GaussQ(q)
    }
}

impl fmt::Display for AdmissibleSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdmissibleSequence::Classical => f.write_str("classical"),
            AdmissibleSequence::GaussQ(q) => write!(f, "q:{q}"),
            AdmissibleSequence::Fibonomial => f.write_str("fib"),
            AdmissibleSequence::Custom(xs) => {
                f.write_str("custom:")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

/// Parses `classical | q:<rational> | fib | custom:<r1>,<r2>,...`.
impl FromStr for AdmissibleSequence {
    type Err = ParseError;

    fn from_str(src: &str) -> std::result::Result<Self, ParseError> {
        let shift = |e: ParseError, by: usize| ParseError::new(e.offset + by, e.expected);
        match src {
            "classical" => Ok(AdmissibleSequence::Classical),
            "fib" => Ok(AdmissibleSequence::Fibonomial),
            _ => {
                if let Some(q) = src.strip_prefix("q:") {
                    return parse_rational(q)
                        .map(AdmissibleSequence::GaussQ)
                        .map_err(|e| shift(e, 2));
                }
                if let Some(list) = src.strip_prefix("custom:") {
                    let mut factors = Vec::new();
                    let mut at = 7;
                    for item in list.split(',') {
                        factors.push(parse_rational(item).map_err(|e| shift(e, at))?);
                        at += item.len() + 1;
                    }
                    return Ok(AdmissibleSequence::Custom(factors));
                }
                Err(ParseError::new(
                    0,
                    "one of `classical`, `q:<rational>`, `fib`, `custom:<r1>,<r2>,...`",
                ))
            }
        }
    }
}

#[derive(Debug, Default, Clone)]
struct Memo {
    /// `factors[i] = (i + 1)_psi`, possibly zero.
    factors: Vec<Rational>,
    /// `factorials[i] = i_psi!`; only extended through nonzero factors.
    factorials: Vec<Rational>,
}

/// An admissible sequence together with a grow-only table of `n_psi` and
/// `n_psi!`. Safe to share between threads.
#[derive(Debug)]
pub struct PsiContext {
    sequence: AdmissibleSequence,
    memo: RwLock<Memo>,
}

impl Clone for PsiContext {
    fn clone(&self) -> Self {
        PsiContext {
            sequence: self.sequence.clone(),
            memo: RwLock::new(self.memo.read().expect("memo poisoned").clone()),
        }
    }
}

impl From<AdmissibleSequence> for PsiContext {
    fn from(sequence: AdmissibleSequence) -> Self {
        PsiContext::new(sequence)
    }
}

/// Outcome of [`PsiContext::admissibility_check`].
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct AdmissibilityReport {
    pub checked_up_to: usize,
    pub first_failure: Option<usize>,
}

impl AdmissibilityReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

impl PsiContext {
    pub fn new(sequence: AdmissibleSequence) -> Self {
        PsiContext {
            sequence,
            memo: RwLock::new(Memo {
                factors: Vec::new(),
                factorials: vec![Rational::one()],
            }),
        }
    }

    pub fn classical() -> Self {
        Self::new(AdmissibleSequence::Classical)
    }

    pub fn gauss_q(q: Rational) -> Self {
        Self::new(AdmissibleSequence::GaussQ(q))
    }

    pub fn fibonomial() -> Self {
        Self::new(AdmissibleSequence::Fibonomial)
    }

    pub fn custom(factors: Vec<Rational>) -> Self {
        Self::new(AdmissibleSequence::Custom(factors))
    }

    pub fn sequence(&self) -> &AdmissibleSequence {
        &self.sequence
    }

    /// The psi-spec string this context was built from.
    pub fn label(&self) -> String {
        self.sequence.to_string()
    }

    /// Raw value of `n_psi` (may be zero), or `None` when the sequence is
    /// undefined at `n`. Extends the memo as needed.
    fn raw_factor(&self, n: usize) -> Option<Rational> {
        debug_assert!(n >= 1);
        if let Some(v) = self.memo.read().expect("memo poisoned").factors.get(n - 1) {
            return Some(v.clone());
        }
        let mut memo = self.memo.write().expect("memo poisoned");
        while memo.factors.len() < n {
            let k = memo.factors.len() + 1;
            let next = match &self.sequence {
                AdmissibleSequence::Classical => Rational::from_integer(k.into()),
                AdmissibleSequence::GaussQ(q) => match k {
                    1 => Rational::one(),
                    _ => Rational::one() + q * &memo.factors[k - 2],
                },
                AdmissibleSequence::Fibonomial => match k {
                    1 | 2 => Rational::one(),
                    _ => &memo.factors[k - 2] + &memo.factors[k - 3],
                },
                AdmissibleSequence::Custom(xs) => {
                    let v = xs.get(k - 1)?;
                    v.clone()
                }
            };
            memo.factors.push(next);
        }
        Some(memo.factors[n - 1].clone())
    }

    /// `n_psi` for `n >= 1`.
    pub fn factor(&self, n: usize) -> Result<Rational> {
        if n == 0 {
            return Err(CalcError::Domain("n_psi is defined for n >= 1".into()));
        }
        match self.raw_factor(n) {
            Some(v) if v.is_zero() => Err(CalcError::Admissibility {
                n,
                detail: format!("n_psi = 0 for psi = {}", self.sequence),
            }),
            Some(v) => Ok(v),
            None => Err(CalcError::Admissibility {
                n,
                detail: format!("n_psi undefined for psi = {}", self.sequence),
            }),
        }
    }

    /// `n_psi! = n_psi * (n-1)_psi!`, `0_psi! = 1`.
    pub fn factorial(&self, n: usize) -> Result<Rational> {
        if let Some(v) = self.memo.read().expect("memo poisoned").factorials.get(n) {
            return Ok(v.clone());
        }
        let start = self.memo.read().expect("memo poisoned").factorials.len();
        for k in start..=n {
            let f = self.factor(k)?;
            let mut memo = self.memo.write().expect("memo poisoned");
            if memo.factorials.len() == k {
                let next = &memo.factorials[k - 1] * f;
                memo.factorials.push(next);
            }
        }
        Ok(self.memo.read().expect("memo poisoned").factorials[n].clone())
    }

    /// `x_psi (x-1)_psi ... (x-k+1)_psi` for integer `x`.
    pub fn falling_factorial(&self, x: &Rational, k: usize) -> Result<Rational> {
        if !x.is_integer() {
            return Err(CalcError::Domain(format!(
                "x_psi is only defined for integer x, got {x}"
            )));
        }
        if k == 0 {
            return Ok(Rational::one());
        }
        let low = x - Rational::from_integer((k - 1).into());
        if low < Rational::one() {
            return Err(CalcError::Domain(format!(
                "falling psi-factorial of {x} with k = {k} needs index {low} < 1"
            )));
        }
        let top: usize = x
            .to_integer()
            .try_into()
            .map_err(|_| CalcError::Domain(format!("x = {x} too large")))?;
        (0..k).try_fold(Rational::one(), |acc, j| Ok(acc * self.factor(top - j)?))
    }

    /// Checks `n_psi != 0` for all `1 <= n <= up_to`.
    pub fn admissibility_check(&self, up_to: usize) -> AdmissibilityReport {
        let first_failure = (1..=up_to).find(|&n| self.factor(n).is_err());
        AdmissibilityReport {
            checked_up_to: up_to,
            first_failure,
        }
    }

    /// `n! / n_psi!`, the coefficient of the psi-power `x^(n*psi)`.
    pub fn power_coefficient(&self, n: usize) -> Result<Rational> {
        Ok(crate::rational::factorial(n) / self.factorial(n)?)
    }
}
