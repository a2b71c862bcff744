//! Text syntax for algebra elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | atom
//! atom   := int | 't' ['^' exp] | ('p' | 'q') digits | '(' expr ')'
//! exp    := ['-'] int | '(' ['-'] int ['/' '2'] ')'
//! ```
//!
//! Products are evaluated left to right and never commuted. Generator
//! letters and `t` are case-insensitive. Columns in errors are 1-based
//! character positions.

use num_bigint::BigInt;
use thiserror::Error;

use crate::heisenberg::{Generator, HExpr};
use crate::series::{LaurentPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

/// Parses an expression such as `p3*q2*p1 + (1+t)*q1` into an unnormalized [`HExpr`].
pub fn parse_expression(text: &str) -> Result<HExpr, ParseError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0 };
    let expr = p.expr()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        let message = if starts_factor(c) {
            format!("expected '*' before {c:?}")
        } else {
            format!("unexpected {c:?}")
        };
        return Err(p.error_here(message));
    }
    Ok(expr)
}

fn starts_factor(c: char) -> bool {
    c.is_ascii_digit() || c == '(' || matches!(c.to_ascii_lowercase(), 'p' | 'q' | 't')
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        ParseError { column: self.pos + 1, message: message.into() }
    }

    fn describe_here(&self) -> String {
        self.peek().map_or_else(|| "end of input".to_string(), |c| format!("{c:?}"))
    }

    fn eat(&mut self, want: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        if self.eat(want) {
            Ok(())
        } else {
            Err(self.error_here(format!("expected {want:?}, found {}", self.describe_here())))
        }
    }

    fn expr(&mut self) -> Result<HExpr, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<HExpr, ParseError> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<HExpr, ParseError> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<HExpr, ParseError> {
        self.skip_ws();
        let Some(c) = self.peek() else {
            return Err(self.error_here("unexpected end of input"));
        };
        match c.to_ascii_lowercase() {
            '(' => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            d if d.is_ascii_digit() => {
                let n = self.digits()?;
                Ok(HExpr::scalar(LaurentPoly::constant(Rational::from_integer(n))))
            }
            't' => {
                self.pos += 1;
                let s_exp = if self.eat('^') { self.exponent()? } else { 2 };
                Ok(HExpr::scalar(LaurentPoly::s_pow(s_exp)))
            }
            kind @ ('p' | 'q') => {
                self.pos += 1;
                if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    return Err(self.error_here(format!(
                        "expected a nonnegative generator index, found {}",
                        self.describe_here()
                    )));
                }
                let start = self.pos;
                let index = u32::try_from(self.digits()?).map_err(|_| ParseError {
                    column: start + 1,
                    message: "generator index out of range".into(),
                })?;
                Ok(HExpr::generator(if kind == 'p' { Generator::p(index) } else { Generator::q(index) }))
            }
            _ => Err(self.error_here(format!("unexpected {c:?}"))),
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error_here(format!("expected digits, found {}", self.describe_here())));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn small_int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let negative = self.eat('-');
        self.skip_ws();
        let n = self.digits()?;
        let n = i64::try_from(n).ok().filter(|n| *n < i64::MAX / 4).ok_or(ParseError {
            column: start + 1,
            message: "exponent out of range".into(),
        })?;
        Ok(if negative { -n } else { n })
    }

    /// Exponent of `t`, returned in half units.
    fn exponent(&mut self) -> Result<i64, ParseError> {
        if !self.eat('(') {
            return Ok(2 * self.small_int()?);
        }
        let k = self.small_int()?;
        let halves = if self.eat('/') {
            self.skip_ws();
            let at = self.pos;
            if self.digits()? != BigInt::from(2) {
                return Err(ParseError { column: at + 1, message: "only halves are allowed in exponents".into() });
            }
            k
        } else {
            2 * k
        };
        self.expect(')')?;
        Ok(halves)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heisenberg::{normal_order, Word};

    #[test]
    fn examples() {
        let e = parse_expression("q1*p1").unwrap();
        assert_eq!(e, HExpr::word([Generator::q(1), Generator::p(1)]));
        let e = parse_expression("(1+t)*q1 + p1*q2").unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.coeff(&Word::new([Generator::q(1)])), &LaurentPoly::one() + &LaurentPoly::t_pow(1));
    }

    #[test]
    fn negative_index_fails_at_column_two() {
        let err = parse_expression("p-1").unwrap_err();
        assert_eq!(err.column, 2);
    }

    #[test]
    fn juxtaposition_is_rejected() {
        let err = parse_expression("p1 q2").unwrap_err();
        assert_eq!(err.column, 4);
        assert!(parse_expression("2p1").is_err());
        assert!(parse_expression("(1+t)(1-t)").is_err());
    }

    #[test]
    fn index_zero_is_unit() {
        assert_eq!(parse_expression("p0*q0").unwrap(), HExpr::one());
        assert_eq!(parse_expression("p0*q3").unwrap(), parse_expression("q3").unwrap());
    }

    #[test]
    fn t_literals() {
        let t = |s: &str| parse_expression(s).unwrap();
        assert_eq!(t("t^-1"), HExpr::scalar(LaurentPoly::t_pow(-1)));
        assert_eq!(t("t^(-2)"), HExpr::scalar(LaurentPoly::t_pow(-2)));
        assert_eq!(t("T^3"), HExpr::scalar(LaurentPoly::t_pow(3)));
        assert_eq!(t("t^(1/2)"), HExpr::scalar(LaurentPoly::s_pow(1)));
        assert!(parse_expression("t^(1/3)").is_err());
    }

    #[test]
    fn case_and_whitespace() {
        assert_eq!(parse_expression(" P3 * q2*p1 ").unwrap(), parse_expression("p3*q2*p1").unwrap());
        assert_eq!(parse_expression("- p1 + 2 * p1").unwrap(), parse_expression("p1").unwrap());
    }

    #[test]
    fn order_is_preserved() {
        assert_ne!(parse_expression("q1*p1").unwrap(), parse_expression("p1*q1").unwrap());
        let nf = normal_order(&parse_expression("q1*p1").unwrap());
        assert_eq!(nf, parse_expression("p1*q1 + 1 + t").unwrap());
    }

    #[test]
    fn errors_report_position() {
        assert_eq!(parse_expression("p1 +").unwrap_err().column, 5);
        assert_eq!(parse_expression("(p1").unwrap_err().column, 4);
        assert_eq!(parse_expression("p1 $").unwrap_err().column, 4);
        assert_eq!(parse_expression("").unwrap_err().column, 1);
    }

    #[test]
    fn print_parse_roundtrip() {
        for text in ["q2*p3 - t^-1*q1*p1 + 3", "(1+t)*q1 + p1*q2", "t^(1/2)*p2 - 5*t^2", "0"] {
            let once = parse_expression(text).unwrap();
            let again = parse_expression(&once.to_string()).unwrap();
            assert_eq!(once, again, "{text}");
            let nf = normal_order(&once);
            assert_eq!(parse_expression(&nf.to_string()).unwrap(), nf);
        }
    }
}
