//! Reader for the textual polynomial form produced by `Display for SymPoly`.
//!
//! Accepts sums of products of integers, fractions `p/q`, symbols with
//! optional `^n` powers, and parenthesised sub-expressions, so hand
//! transcriptions such as `-12*(B - C - 1)^2` parse as well as canonical
//! renderings.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::symbol::Symbol;
use super::{Rational, SymPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unexpected character `{ch}` at offset {pos}")]
    UnexpectedChar { ch: char, pos: usize },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown symbol `{name}` at offset {pos}")]
    UnknownSymbol { name: String, pos: usize },
    #[error("division by zero at offset {pos}")]
    ZeroDenominator { pos: usize },
    #[error("trailing input at offset {pos}")]
    Trailing { pos: usize },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == ch => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(ParseError::UnexpectedChar { ch: c as char, pos: self.pos }),
            None => Err(ParseError::UnexpectedEnd),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return match self.src.get(self.pos) {
                Some(&c) => Err(ParseError::UnexpectedChar { ch: c as char, pos: self.pos }),
                None => Err(ParseError::UnexpectedEnd),
            };
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit run parses"))
    }

    fn exponent(&mut self) -> Result<u32, ParseError> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let pos = self.pos;
            let e = self.integer()?;
            u32::try_from(e).map_err(|_| ParseError::UnexpectedChar { ch: '^', pos })
        } else {
            Ok(1)
        }
    }

    fn sum(&mut self) -> Result<SymPoly, ParseError> {
        let mut acc = SymPoly::zero();
        let mut negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.product()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn product(&mut self) -> Result<SymPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SymPoly, ParseError> {
        match self.peek() {
            None => Err(ParseError::UnexpectedEnd),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                self.expect(b')')?;
                let e = self.exponent()?;
                Ok(inner.pow(e))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let pos = self.pos;
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(ParseError::ZeroDenominator { pos });
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                Ok(SymPoly::constant(Rational::new(num, den)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let sym: Symbol = name.parse().map_err(|_| ParseError::UnknownSymbol {
                    name: name.to_string(),
                    pos: start,
                })?;
                let e = self.exponent()?;
                Ok(SymPoly::var(sym).pow(e))
            }
            Some(c) => Err(ParseError::UnexpectedChar { ch: c as char, pos: self.pos }),
        }
    }
}

impl FromStr for SymPoly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s.as_bytes(), pos: 0 };
        let out = p.sum()?;
        match p.peek() {
            None => Ok(out),
            Some(_) => Err(ParseError::Trailing { pos: p.pos }),
        }
    }
}
