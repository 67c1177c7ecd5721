//! Expression grammar for cyclotomic literals on the wire.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | base ('^' ['-'] INTEGER)?
//! base   := INTEGER | 'i' | 'zeta24' | 'sqrt2' | 'sqrt3' | '(' expr ')'
//! ```
//!
//! Rationals come for free via '/', e.g. `3/4`, and `zeta24^-4` is accepted.
//! [`CycNum`]'s `Display` output stays inside this grammar, so every value
//! the reports emit parses back exactly.

use crate::exactnum::{CycMatrix, CycNum};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unexpected end of input in `{0}`")]
    UnexpectedEnd(String),
    #[error("unexpected character `{ch}` at offset {at} in `{input}`")]
    UnexpectedChar { ch: char, at: usize, input: String },
    #[error("division by zero in expression `{0}`")]
    DivisionByZero(String),
    #[error("exponent out of range in `{0}`")]
    BadExponent(String),
    #[error("matrix literal `{0}` must have two rows of two entries (rows ';', entries ',')")]
    BadMatrixShape(String),
    #[error("form literal must have at least one coefficient")]
    EmptyForm,
}

struct Parser<'a> {
    input: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser {
            input,
            bytes: input.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn err_here(&mut self) -> ParseError {
        match self.peek() {
            Some(c) => ParseError::UnexpectedChar {
                ch: c as char,
                at: self.pos,
                input: self.input.to_string(),
            },
            None => ParseError::UnexpectedEnd(self.input.to_string()),
        }
    }

    fn expr(&mut self) -> Result<CycNum, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<CycNum, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let divisor = self.factor()?;
                    let inv = divisor
                        .inverse()
                        .map_err(|_| ParseError::DivisionByZero(self.input.to_string()))?;
                    acc = acc * inv;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<CycNum, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.factor()?);
        }
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let negative = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let exp = self.integer()?;
            let exp_u32: u32 = exp
                .try_into()
                .map_err(|_| ParseError::BadExponent(self.input.to_string()))?;
            let powered = base.pow(exp_u32);
            if negative {
                return powered
                    .inverse()
                    .map_err(|_| ParseError::DivisionByZero(self.input.to_string()));
            }
            return Ok(powered);
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<CycNum, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.bump() != Some(b')') {
                    return Err(self.err_here());
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(CycNum::from_int(n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && (self.bytes[self.pos].is_ascii_alphanumeric())
                {
                    self.pos += 1;
                }
                match &self.input[start..self.pos] {
                    "i" => Ok(CycNum::i()),
                    "zeta24" => Ok(CycNum::zeta(1)),
                    "sqrt2" => Ok(CycNum::sqrt2()),
                    "sqrt3" => Ok(CycNum::sqrt3()),
                    _ => {
                        self.pos = start;
                        Err(self.err_here())
                    }
                }
            }
            _ => Err(self.err_here()),
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err_here());
        }
        self.input[start..self.pos]
            .parse()
            .map_err(|_| ParseError::BadExponent(self.input.to_string()))
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.peek().is_some() {
            Err(self.err_here())
        } else {
            Ok(())
        }
    }
}

/// Parses one cyclotomic expression.
pub fn parse_cyc(input: &str) -> Result<CycNum, ParseError> {
    let mut p = Parser::new(input);
    let value = p.expr()?;
    p.finish()?;
    Ok(value)
}

/// Parses a 2×2 matrix literal `a,b;c,d` with cyclotomic entries.
pub fn parse_matrix2(input: &str) -> Result<CycMatrix, ParseError> {
    let rows: Vec<&str> = input.split(';').collect();
    if rows.len() != 2 {
        return Err(ParseError::BadMatrixShape(input.to_string()));
    }
    let mut m = CycMatrix::zeros(2, 2);
    for (i, row) in rows.iter().enumerate() {
        let entries: Vec<&str> = row.split(',').collect();
        if entries.len() != 2 {
            return Err(ParseError::BadMatrixShape(input.to_string()));
        }
        for (j, e) in entries.iter().enumerate() {
            m[(i, j)] = parse_cyc(e)?;
        }
    }
    Ok(m)
}

/// Parses a comma-separated coefficient list; degree is the length minus one.
pub fn parse_form_coeffs(input: &str) -> Result<Vec<CycNum>, ParseError> {
    let entries: Vec<&str> = input.split(',').collect();
    if entries.is_empty() || (entries.len() == 1 && entries[0].trim().is_empty()) {
        return Err(ParseError::EmptyForm);
    }
    entries.iter().map(|e| parse_cyc(e)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    #[test]
    fn literals() {
        assert_eq!(parse_cyc("i").unwrap(), CycNum::i());
        assert_eq!(parse_cyc("zeta24^6").unwrap(), CycNum::i());
        assert_eq!(parse_cyc("sqrt2*sqrt3").unwrap(), CycNum::sqrt6());
        assert_eq!(
            parse_cyc("3/4").unwrap(),
            CycNum::from_rational(Rational::new(3, 4))
        );
        assert_eq!(parse_cyc("zeta24^-4").unwrap(), CycNum::zeta(-4));
        assert_eq!(parse_cyc(" 1 - 1/2*zeta24^4 ").unwrap(), {
            CycNum::one() - CycNum::zeta(4).scale_rational(&Rational::new(1, 2))
        });
        assert_eq!(parse_cyc("(1+sqrt2)^2").unwrap(), {
            let x = CycNum::one() + CycNum::sqrt2();
            &x * &x
        });
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_cyc("").is_err());
        assert!(parse_cyc("zeta25").is_err());
        assert!(parse_cyc("1 +").is_err());
        assert!(parse_cyc("1/0").is_err());
        assert!(parse_cyc("2^").is_err());
        assert!(parse_cyc("(1").is_err());
    }

    #[test]
    fn matrices_and_forms() {
        let m = parse_matrix2("zeta24^4, 0; 0, zeta24^-4").unwrap();
        assert_eq!(m[(0, 0)], CycNum::zeta(4));
        assert_eq!(m[(1, 1)], CycNum::zeta(20));
        assert!(parse_matrix2("1,0;0").is_err());
        let f = parse_form_coeffs("1, 0, 0, 1").unwrap();
        assert_eq!(f.len(), 4);
        assert!(parse_form_coeffs("").is_err());
    }
}
