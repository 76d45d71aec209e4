//! Recursive-descent parser for cyclotomic literals.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := rational | 'E(' uint ')' ('^' int)? | '(' expr ')' | '-' factor
//! rational := int ('/' uint)?
//! ```
//!
//! Whitespace is insignificant. Subexpressions of different conductors are
//! combined in the least common conductor.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::CycNum;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub message: Option<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}", self.offset)?;
        if let Some(msg) = &self.message {
            write!(f, ": {msg}")?;
        }
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

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

    fn fail(&self, expected: &[&'static str]) -> ParseError {
        ParseError {
            offset: self.pos,
            expected: expected.to_vec(),
            message: None,
        }
    }

    fn fail_msg(&self, offset: usize, msg: impl Into<String>) -> ParseError {
        ParseError {
            offset,
            expected: Vec::new(),
            message: Some(msg.into()),
        }
    }

    fn expect(&mut self, c: u8, name: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.fail(&[name]))
        }
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.fail(&["digit"]));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn small_uint(&mut self) -> Result<u32, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let v = self.uint()?;
        u32::try_from(&v).map_err(|_| self.fail_msg(start, "integer too large"))
    }

    fn expr(&mut self) -> Result<CycNum, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    let (a, b) = CycNum::lift_common(&acc, &rhs);
                    acc = a + b;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    let (a, b) = CycNum::lift_common(&acc, &rhs);
                    acc = a - b;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<CycNum, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.factor()?;
            let (a, b) = CycNum::lift_common(&acc, &rhs);
            acc = a * b;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<CycNum, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')', "')'")?;
                Ok(v)
            }
            Some(b'E') => {
                self.pos += 1;
                self.expect(b'(', "'('")?;
                self.skip_ws();
                let at = self.pos;
                let m = self.small_uint()?;
                if m == 0 {
                    return Err(self.fail_msg(at, "conductor must be positive"));
                }
                self.expect(b')', "')'")?;
                let mut k: i64 = 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let neg = if self.peek() == Some(b'-') {
                        self.pos += 1;
                        true
                    } else {
                        false
                    };
                    let e = i64::from(self.small_uint()?);
                    k = if neg { -e } else { e };
                }
                Ok(CycNum::root_of_unity(m, k))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.uint()?;
                let mut den = BigInt::from(1);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    den = self.uint()?;
                    if den.is_zero() {
                        return Err(self.fail_msg(at, "zero denominator"));
                    }
                }
                Ok(CycNum::from_rational(BigRational::new(num, den)))
            }
            _ => Err(self.fail(&["integer", "'E('", "'('", "'-'"])),
        }
    }
}

/// Parses a cyclotomic literal such as `"1 - 2*E(3)^2"` or `"(1/2)*E(8)"`.
pub fn parse_cyc(text: &str) -> Result<CycNum, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.fail(&["'+'", "'-'", "'*'", "end of input"]));
    }
    Ok(v)
}
