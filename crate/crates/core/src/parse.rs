//! Text syntax for scalars and polynomials.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! list   := expr ("," expr)*
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := ("-" | "+") unary | power
//! power  := atom ("^" "-"? integer)?
//! atom   := integer | "E(" integer ")" | "i" | "x" integer | "(" expr ")"
//! ```
//!
//! `E(m)` is ζ_m = e^(2πi/m), `i` abbreviates `E(4)` and `x1 … xn` are the
//! polynomial variables. Division and negative powers are only allowed
//! with nonzero constant operands.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::cyclotomic::{Cyclotomic, CyclotomicError, DEFAULT_MAX_ORDER};
use crate::field::Rational;
use crate::poly::{Monomial, Poly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl core::error::Error for ParseError {}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    nvars: usize,
}

impl Parser {
    fn new(source: &str, nvars: usize) -> Self {
        Parser {
            chars: source.chars().collect(),
            pos: 0,
            nvars,
        }
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        let mut line = 1;
        let mut column = 1;
        for &c in self.chars.iter().take(pos) {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{c}'")))
        }
    }

    fn unexpected(&mut self, wanted: &str) -> ParseError {
        let pos = {
            self.skip_ws();
            self.pos
        };
        match self.chars.get(pos) {
            Some(c) => self.error_at(pos, format!("expected {wanted}, found '{c}'")),
            None => self.error_at(pos, format!("expected {wanted}, found end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(char::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected("an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn small_integer(&mut self, what: &str) -> Result<(usize, i64), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let value = self.integer()?;
        let v: i64 = value
            .try_into()
            .map_err(|_| self.error_at(start, format!("{what} is too large")))?;
        Ok((start, v))
    }

    fn list(&mut self) -> Result<Vec<Poly>, ParseError> {
        let mut out = alloc::vec![self.expr()?];
        while self.eat(',') {
            out.push(self.expr()?);
        }
        Ok(out)
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.peek() == Some('/') {
                let at = self.pos;
                self.pos += 1;
                let divisor = self.unary()?;
                let inv = self.constant_inverse(&divisor, at)?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn constant_inverse(&self, p: &Poly, at: usize) -> Result<Cyclotomic, ParseError> {
        if p.degree().is_some_and(|d| d > 0) {
            return Err(self.error_at(at, "division by a non-constant polynomial"));
        }
        p.constant_term()
            .inverse()
            .map_err(|_| self.error_at(at, "division by zero"))
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let at = self.pos;
        let negative = self.eat('-');
        let (_, e) = self.small_integer("exponent")?;
        if e > u32::MAX as i64 {
            return Err(self.error_at(at, "exponent is too large"));
        }
        if negative {
            let inv = self.constant_inverse(&base, at)?;
            let c = inv
                .pow(e)
                .map_err(|err| self.error_at(at, format!("{err}")))?;
            Ok(Poly::constant(self.nvars, c))
        } else {
            Ok(base.pow(e as u32))
        }
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                Ok(self.constant(Cyclotomic::from_rational(Rational::from_integer(v))))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some('E') => {
                self.pos += 1;
                self.expect('(')?;
                let (at, m) = self.small_integer("cyclotomic order")?;
                if m <= 0 || m > DEFAULT_MAX_ORDER as i64 {
                    return Err(self.error_at(at, format!("invalid cyclotomic order {m}")));
                }
                self.expect(')')?;
                let z = Cyclotomic::root_of_unity(m as u32, 1).map_err(|e| {
                    let msg = match e {
                        CyclotomicError::ZeroOrder => String::from("cyclotomic order must be positive"),
                        other => format!("{other}"),
                    };
                    self.error_at(at, msg)
                })?;
                Ok(self.constant(z))
            }
            Some('i') => {
                self.pos += 1;
                Ok(self.constant(Cyclotomic::i()))
            }
            Some('x') => {
                let at = self.pos;
                self.pos += 1;
                let (_, idx) = self.small_integer("variable index")?;
                if idx < 1 || idx as usize > self.nvars {
                    return Err(self.error_at(
                        at,
                        if self.nvars == 0 {
                            String::from("variables are not allowed here")
                        } else {
                            format!("variable x{idx} out of range x1..x{}", self.nvars)
                        },
                    ));
                }
                Ok(Poly::monomial(
                    Monomial::var(self.nvars, idx as usize - 1),
                    Cyclotomic::one(),
                ))
            }
            _ => Err(self.unexpected("a number, E(m), i, a variable or '('")),
        }
    }

    fn constant(&self, c: Cyclotomic) -> Poly {
        Poly::constant(self.nvars, c)
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.peek().is_some() {
            return Err(self.unexpected("end of input"));
        }
        Ok(())
    }
}

/// Parses one exact scalar such as `-1/2 - 1/2*E(5)^2` or `i*3`.
pub fn parse_scalar(text: &str) -> Result<Cyclotomic, ParseError> {
    let mut p = Parser::new(text, 0);
    let v = p.expr()?;
    p.finish()?;
    Ok(v.constant_term())
}

/// Parses a comma separated list of scalars, e.g. a weight `i*1, i*2`.
pub fn parse_scalar_list(text: &str) -> Result<Vec<Cyclotomic>, ParseError> {
    let mut p = Parser::new(text, 0);
    let v = p.list()?;
    p.finish()?;
    Ok(v.iter().map(Poly::constant_term).collect())
}

/// Parses a polynomial in `x1 … x{nvars}`.
pub fn parse_poly(text: &str, nvars: usize) -> Result<Poly, ParseError> {
    let mut p = Parser::new(text, nvars);
    let v = p.expr()?;
    p.finish()?;
    Ok(v)
}
