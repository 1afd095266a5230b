//! Text grammar for surreal literals.
//!
//! ```text
//! expr  := ['-'] term (('+'|'-') term)*
//! term  := coeff ['*' atom] | atom
//! atom  := 'w' ['^' exp] | 'w_' nat
//! exp   := int | '(' expr ')'
//! coeff := int | int '/' posint | decimal
//! ```
//!
//! `w_k` is sugar for `w^(w^k)`. Decimals parse exactly (`0.9` = `9/10`).
//! Formatting emits reduced fractional coefficients with terms in
//! decreasing exponent order, e.g. `1/10*w^2 + 1/10*w`; parsing a formatted
//! value round-trips it unchanged, and formatting a parsed literal
//! canonicalizes it.

use std::fmt;

use num::bigint::BigInt;
use num::Zero;

use crate::error::SurrealError;
use crate::rational::Rational;
use crate::surreal::{Surreal, DEFAULT_DEPTH_BOUND};

/// Knobs for the literal parser.
#[derive(Debug, Clone)]
pub struct ParseOptions {
    /// Exponent nesting bound applied while building `w^...` towers.
    pub depth_bound: usize,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            depth_bound: DEFAULT_DEPTH_BOUND,
        }
    }
}

/// Parses a surreal literal with default options.
pub fn parse(text: &str) -> Result<Surreal, SurrealError> {
    parse_with(text, &ParseOptions::default())
}

/// Parses a surreal literal, canonicalizing as it goes.
pub fn parse_with(text: &str, options: &ParseOptions) -> Result<Surreal, SurrealError> {
    let mut scanner = Scanner::new(text, options.depth_bound);
    let value = scanner.expr()?;
    scanner.skip_ws();
    if !scanner.at_end() {
        return Err(scanner.error("unexpected trailing input"));
    }
    Ok(value)
}

/// Parses `123`, `-4/5`, or an exact decimal like `2.50`.
pub fn parse_rational(text: &str) -> Result<Rational, SurrealError> {
    let mut scanner = Scanner::new(text, DEFAULT_DEPTH_BOUND);
    scanner.skip_ws();
    let negative = scanner.eat(b'-');
    let value = scanner.number()?;
    scanner.skip_ws();
    if !scanner.at_end() {
        return Err(scanner.error("unexpected trailing input"));
    }
    Ok(if negative { -value } else { value })
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
    depth_bound: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str, depth_bound: usize) -> Self {
        Scanner {
            bytes: text.as_bytes(),
            pos: 0,
            depth_bound,
        }
    }

    fn error(&self, message: &str) -> SurrealError {
        SurrealError::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.bytes.len()
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, byte: u8) -> bool {
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t')) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> Result<Surreal, SurrealError> {
        self.skip_ws();
        let negate = self.eat(b'-');
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            self.skip_ws();
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Surreal, SurrealError> {
        self.skip_ws();
        match self.peek() {
            Some(b'w') => self.atom(),
            Some(b'0'..=b'9') => {
                let coeff = self.number()?;
                self.skip_ws();
                if self.eat(b'*') {
                    let atom = self.atom()?;
                    Ok(&Surreal::from_rational(coeff) * &atom)
                } else {
                    Ok(Surreal::from_rational(coeff))
                }
            }
            _ => Err(self.error("expected a coefficient or 'w'")),
        }
    }

    fn atom(&mut self) -> Result<Surreal, SurrealError> {
        self.skip_ws();
        if !self.eat(b'w') {
            return Err(self.error("expected 'w'"));
        }
        if self.eat(b'_') {
            let k = self.natural()?;
            let level = Surreal::from_rational(Rational::from(BigInt::from(k)));
            let inner = Surreal::omega_power_bounded(&level, self.depth_bound)?;
            return Surreal::omega_power_bounded(&inner, self.depth_bound);
        }
        if self.eat(b'^') {
            let exponent = self.exponent()?;
            return Surreal::omega_power_bounded(&exponent, self.depth_bound);
        }
        Ok(Surreal::omega())
    }

    fn exponent(&mut self) -> Result<Surreal, SurrealError> {
        self.skip_ws();
        if self.eat(b'(') {
            let value = self.expr()?;
            self.skip_ws();
            if !self.eat(b')') {
                return Err(self.error("expected ')'"));
            }
            return Ok(value);
        }
        let negative = self.eat(b'-');
        let digits = self.integer()?;
        let value = Rational::from(if negative { -digits } else { digits });
        Ok(Surreal::from_rational(value))
    }

    /// Unsigned number: integer, fraction, or exact decimal.
    fn number(&mut self) -> Result<Rational, SurrealError> {
        let int_part = self.integer()?;
        match self.peek() {
            Some(b'/') => {
                self.pos += 1;
                let denom = self.integer()?;
                if denom.is_zero() {
                    return Err(self.error("zero denominator"));
                }
                Ok(Rational::new(int_part, denom))
            }
            Some(b'.') => {
                self.pos += 1;
                let start = self.pos;
                let frac = self.integer()?;
                let places = (self.pos - start) as u32;
                let scale = BigInt::from(10).pow(places);
                Ok(Rational::new(int_part * &scale + frac, scale))
            }
            _ => Ok(Rational::from(int_part)),
        }
    }

    fn integer(&mut self) -> Result<BigInt, SurrealError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digit run parses"))
    }

    fn natural(&mut self) -> Result<u64, SurrealError> {
        let value = self.integer()?;
        u64::try_from(value).map_err(|_| self.error("subscript too large"))
    }
}

impl fmt::Display for Surreal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (index, (exponent, coefficient)) in self.terms().enumerate() {
            if index == 0 {
                if coefficient.is_negative() {
                    f.write_str("-")?;
                }
            } else if coefficient.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            write_term(f, &coefficient.abs(), exponent)?;
        }
        Ok(())
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, magnitude: &Rational, exponent: &Surreal) -> fmt::Result {
    if exponent.is_zero() {
        return write!(f, "{magnitude}");
    }
    if magnitude != &Rational::one() {
        write!(f, "{magnitude}*")?;
    }
    f.write_str("w")?;
    if exponent == &Surreal::one() {
        return Ok(());
    }
    match exponent.to_rational() {
        Some(q) if q.is_integer() => write!(f, "^{q}"),
        _ => write!(f, "^({exponent})"),
    }
}
