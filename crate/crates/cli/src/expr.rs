//! Expression language for `eval`: the surreal literal grammar extended
//! with parenthesized subexpressions and `/` as a division operator.
//!
//! ```text
//! expr    := ['-'] product (('+'|'-') product)*
//! product := factor (('*'|'/') factor)*
//! factor  := number | 'w' ['^' exp | '_' nat] | '(' expr ')'
//! exp     := ['-'] integer | '(' expr ')'
//! ```
//!
//! Division is exact by default and errors when the quotient has no finite
//! normal form; an explicit truncation budget turns that error into a
//! flagged approximation.

use surreal_core::{parse_rational, Rational, Surreal, SurrealError};

#[derive(Debug, Clone)]
pub struct EvalOptions {
    pub depth_bound: usize,
    /// Quotient terms attempted before declaring a division inexact.
    pub term_budget: usize,
    /// When set, inexact divisions return the truncated quotient instead
    /// of an error, and the outcome is flagged.
    pub truncate: Option<usize>,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            depth_bound: surreal_core::DEFAULT_DEPTH_BOUND,
            term_budget: surreal_core::DEFAULT_TERM_BUDGET,
            truncate: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalOutcome {
    pub value: Surreal,
    /// True when any division was truncated, so the value is inexact.
    pub truncated: bool,
}

pub fn eval(text: &str, options: &EvalOptions) -> Result<EvalOutcome, SurrealError> {
    let mut parser = Parser {
        bytes: text.as_bytes(),
        pos: 0,
        options,
        truncated: false,
    };
    let value = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.bytes.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(EvalOutcome {
        value,
        truncated: parser.truncated,
    })
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    options: &'a EvalOptions,
    truncated: bool,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> SurrealError {
        SurrealError::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
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
        let first = self.product()?;
        let mut acc = if negate { -first } else { first };
        loop {
            self.skip_ws();
            if self.eat(b'+') {
                acc = &acc + &self.product()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.product()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Surreal, SurrealError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.eat(b'*') {
                acc = &acc * &self.factor()?;
            } else if self.eat(b'/') {
                let divisor = self.factor()?;
                acc = self.divide(&acc, &divisor)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn divide(&mut self, dividend: &Surreal, divisor: &Surreal) -> Result<Surreal, SurrealError> {
        match self.options.truncate {
            None => dividend.div_exact(divisor, self.options.term_budget),
            Some(max_terms) => {
                let division = dividend.long_division(divisor, max_terms)?;
                if !division.is_exact() {
                    self.truncated = true;
                }
                Ok(division.quotient)
            }
        }
    }

    fn factor(&mut self) -> Result<Surreal, SurrealError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let value = self.expr()?;
                self.skip_ws();
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(value)
            }
            Some(b'w') => {
                self.pos += 1;
                self.omega_tail()
            }
            Some(b'0'..=b'9') => Ok(Surreal::from_rational(self.number()?)),
            _ => Err(self.error("expected a number, 'w', or '('")),
        }
    }

    fn omega_tail(&mut self) -> Result<Surreal, SurrealError> {
        if self.eat(b'_') {
            let start = self.pos;
            let digits = self.digits()?;
            let k: u64 = digits
                .parse()
                .map_err(|_| SurrealError::Syntax {
                    position: start,
                    message: "subscript too large".to_string(),
                })?;
            let level = Surreal::from_rational(parse_rational(&k.to_string())?);
            let inner = Surreal::omega_power_bounded(&level, self.options.depth_bound)?;
            return Surreal::omega_power_bounded(&inner, self.options.depth_bound);
        }
        if self.eat(b'^') {
            self.skip_ws();
            let exponent = if self.eat(b'(') {
                let value = self.expr()?;
                self.skip_ws();
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                value
            } else {
                let negative = self.eat(b'-');
                let digits = self.digits()?;
                let magnitude = parse_rational(&digits)?;
                Surreal::from_rational(if negative { -magnitude } else { magnitude })
            };
            return Surreal::omega_power_bounded(&exponent, self.options.depth_bound);
        }
        Ok(Surreal::omega())
    }

    /// Integer or exact decimal.
    fn number(&mut self) -> Result<Rational, SurrealError> {
        let start = self.pos;
        self.digits()?;
        if self.peek() == Some(b'.') {
            self.pos += 1;
            self.digits()?;
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii number");
        parse_rational(text)
    }

    fn digits(&mut self) -> Result<String, SurrealError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits"));
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii digits")
            .to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(text: &str) -> Surreal {
        eval(text, &EvalOptions::default()).unwrap().value
    }

    fn lit(text: &str) -> Surreal {
        text.parse().unwrap()
    }

    #[test]
    fn literals_evaluate_to_themselves() {
        for text in ["0", "4/5*w", "w_137", "w - 1", "2 - 100*w^(-w^137)"] {
            assert_eq!(ev(text), lit(text));
        }
    }

    #[test]
    fn arithmetic_with_parens_and_division() {
        assert_eq!(ev("0.9*w - 0.1*w"), lit("4/5*w"));
        assert_eq!(ev("w - w"), lit("0"));
        assert_eq!(ev("(w + 1) * (w - 1)"), lit("w^2 - 1"));
        assert_eq!(ev("(w^2 + w) / w"), lit("w + 1"));
        assert_eq!(ev("w_5 / w_137"), lit("w^(w^5 - w^137)"));
        assert_eq!(ev("1/2*w"), lit("1/2*w"));
        assert_eq!(ev("3/4/2"), lit("3/8"));
    }

    #[test]
    fn inexact_division_errors_by_default() {
        let err = eval("1/(w+1)", &EvalOptions::default()).unwrap_err();
        assert!(matches!(err, SurrealError::ExactQuotientUnavailable { .. }));
    }

    #[test]
    fn truncation_flags_the_outcome() {
        let options = EvalOptions {
            truncate: Some(3),
            ..EvalOptions::default()
        };
        let outcome = eval("1/(w+1)", &options).unwrap();
        assert!(outcome.truncated);
        assert_eq!(outcome.value, lit("w^-1 - w^-2 + w^-3"));
        // exact divisions under the same options stay unflagged
        let outcome = eval("w/w", &options).unwrap();
        assert!(!outcome.truncated);
        assert_eq!(outcome.value, lit("1"));
    }

    #[test]
    fn division_by_zero_diagnoses() {
        assert!(matches!(
            eval("1/(w - w)", &EvalOptions::default()),
            Err(SurrealError::ZeroDivision)
        ));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        for text in ["", "1 +", "(w", "w^", "q", "1 2"] {
            assert!(matches!(
                eval(text, &EvalOptions::default()),
                Err(SurrealError::Syntax { .. })
            ), "expected syntax error for {text:?}");
        }
    }
}
