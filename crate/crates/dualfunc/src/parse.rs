//! Text format for polynomials: `c0 + c1*x + c2*x^2`, and `f1 ; f2` for
//! `f1 + α·f2`. Whitespace is ignored, coefficients are decimal integers
//! of any size and are reduced modulo `m` as they are read.

use std::fmt;

use dualfunc_core::{DualPoly, Poly};

/// Largest exponent accepted, to keep dense storage bounded.
pub const MAX_EXPONENT: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based character column in the input.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
    m: u64,
}

impl Parser {
    fn new(src: &str, offset: usize, m: u64) -> Self {
        let chars: Vec<(usize, char)> = src
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i + offset, c))
            .collect();
        let len = offset + src.chars().count();
        Parser { chars, pos: 0, len, m }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn column(&self) -> usize {
        self.chars.get(self.pos).map_or(self.len, |&(i, _)| i) + 1
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { column: self.column(), message: message.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Decimal digits, reduced modulo `modulus` (or saturated if `None`).
    fn number(&mut self, modulus: Option<u64>) -> Option<u64> {
        let mut seen = false;
        let mut acc: u128 = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            seen = true;
            acc = match modulus {
                Some(m) => (acc * 10 + d as u128) % m as u128,
                None => (acc * 10 + d as u128).min(u64::MAX as u128),
            };
            self.pos += 1;
        }
        seen.then_some(acc as u64)
    }

    /// One signed term, added into `coeffs`.
    fn term(&mut self, negative: bool, coeffs: &mut Vec<u64>) -> Result<(), ParseError> {
        let m = self.m;
        let c = self.number(Some(m));
        let has_x = if c.is_some() && self.eat('*') {
            if self.peek() != Some('x') {
                return self.fail("expected 'x' after '*'");
            }
            self.eat('x')
        } else {
            self.eat('x')
        };
        if c.is_none() && !has_x {
            return match self.peek() {
                Some(ch) => self.fail(format!("unexpected '{ch}'")),
                None => self.fail("expected a term"),
            };
        }
        let mut k = 0usize;
        if has_x {
            k = 1;
            if self.eat('^') {
                let at = self.column();
                match self.number(None) {
                    Some(e) if e as usize <= MAX_EXPONENT => k = e as usize,
                    Some(_) => {
                        return Err(ParseError {
                            column: at,
                            message: format!("exponent above {MAX_EXPONENT}"),
                        })
                    }
                    None => return self.fail("expected an exponent after '^'"),
                }
            }
        }
        let c = c.unwrap_or(1 % m);
        let c = if negative { (m - c) % m } else { c };
        if coeffs.len() <= k {
            coeffs.resize(k + 1, 0);
        }
        coeffs[k] = ((coeffs[k] as u128 + c as u128) % m as u128) as u64;
        Ok(())
    }

    fn poly(&mut self) -> Result<Poly, ParseError> {
        if self.peek().is_none() {
            return self.fail("empty polynomial");
        }
        let mut coeffs = Vec::new();
        let mut negative = self.eat('-');
        if !negative {
            self.eat('+');
        }
        loop {
            self.term(negative, &mut coeffs)?;
            match self.peek() {
                None => break,
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(ch) => return self.fail(format!("unexpected '{ch}'")),
            }
            self.pos += 1;
        }
        Ok(Poly::new(coeffs, self.m))
    }
}

/// Parses a polynomial over `Z_m`.
pub fn parse_poly(src: &str, m: u64) -> Result<Poly, ParseError> {
    parse_at(src, 0, m)
}

fn parse_at(src: &str, offset: usize, m: u64) -> Result<Poly, ParseError> {
    Parser::new(src, offset, m).poly()
}

/// Parses `f1 ; f2` (or just `f1`) into `f1 + α·f2` over `Z_m`.
pub fn parse_dual(src: &str, m: u64) -> Result<DualPoly, ParseError> {
    let mut parts = src.splitn(3, ';');
    let first = parts.next().unwrap_or("");
    let f1 = parse_at(first, 0, m)?;
    let f2 = match parts.next() {
        Some(second) => parse_at(second, first.chars().count() + 1, m)?,
        None => Poly::zero(m),
    };
    if parts.next().is_some() {
        let col = src.char_indices().filter(|&(_, c)| c == ';').nth(1).map(|(i, _)| src[..i].chars().count());
        return Err(ParseError { column: col.unwrap_or(0) + 1, message: "more than one ';'".into() });
    }
    Ok(DualPoly::from_parts(&f1, &f2).expect("same modulus"))
}
