//! Recursive-descent parser for polynomial expressions in `x`.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := '-'? factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := rational | 'x' | '(' expr ')'
//! rational := uint ('/' uint)?
//! ```
//!
//! Whitespace is insignificant. A leading `-` on a term negates it, so the
//! output of `Polynomial`'s `Display` always parses back.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::ParseError;
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Largest exponent accepted, to keep dense storage bounded.
pub const MAX_EXPONENT: usize = 4096;

pub fn parse_poly(src: &str) -> Result<Polynomial, ParseError> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("an operator or end of input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn error(&mut self, expected: &str) -> ParseError {
        self.skip_ws();
        ParseError::new(self.pos, expected)
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let negate = self.eat(b'-');
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc * self.factor()?;
        }
        Ok(if negate { -acc } else { acc })
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.base()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let at = {
            self.skip_ws();
            self.pos
        };
        let exp = self.uint("a nonnegative integer exponent")?;
        let exp = exp
            .to_usize()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| ParseError::new(at, format!("an exponent at most {MAX_EXPONENT}")))?;
        Ok((0..exp).fold(Polynomial::one(), |acc, _| &acc * &base))
    }

    fn base(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(Polynomial::x())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("`)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.rational().map(Polynomial::constant),
            _ => Err(self.error("a number, `x` or `(`")),
        }
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let num = self.uint("a number")?;
        if !self.eat(b'/') {
            return Ok(Rational::from_integer(num));
        }
        self.skip_ws();
        let at = self.pos;
        let den = self.uint("a denominator")?;
        if den.is_zero() {
            return Err(ParseError::new(at, "a nonzero denominator"));
        }
        Ok(Rational::new(num, den))
    }

    fn uint(&mut self, expected: &str) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::new(start, expected));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().unwrap_or_else(|_| BigInt::one()))
    }
}
