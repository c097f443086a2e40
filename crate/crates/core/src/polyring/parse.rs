//! Reader for the polynomial text format.
//!
//! The canonical output grammar (`3/4*x^2*y-z+1`) is a subset of what is
//! accepted here: parentheses, implicit products (`2(x+1)(x-1)`, `2 x`),
//! whitespace and line breaks are also allowed so that formulas copied from
//! text can be pasted verbatim.

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::{Polynomial, Rational};
use super::ring::Ring;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn position(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map(|i| offset - i).unwrap_or(offset + 1);
    (line, column)
}

fn error_at(src: &str, offset: usize, message: impl Into<String>) -> Error {
    let (line, column) = position(src, offset);
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>> {
    let mut toks = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().unwrap();
                toks.push((Tok::Num(n), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((Tok::Ident(src[start..i].to_string()), start));
                continue;
            }
            other => {
                return Err(error_at(
                    src,
                    start,
                    format!("unexpected character `{other}`"),
                ))
            }
        };
        toks.push((tok, start));
        i += 1;
    }
    Ok(toks)
}

struct Parser<'a> {
    src: &'a str,
    ring: &'a Ring,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn offset(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|t| t.1)
            .unwrap_or(self.src.len())
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        error_at(self.src, self.offset(), msg)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -self.term()?
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.offset();
                    let d = self.power()?;
                    let Some(c) = d.as_constant() else {
                        return Err(error_at(self.src, at, "division by a non-constant"));
                    };
                    if c.is_zero() {
                        return Err(error_at(self.src, at, "division by zero"));
                    }
                    acc = acc.scale(&c.recip());
                }
                // implicit multiplication
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.ring, Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => match self.ring.var_index(&name) {
                Some(i) => {
                    self.pos += 1;
                    Ok(Polynomial::variable(self.ring, i))
                }
                None => Err(self.err(format!("unknown variable `{name}`"))),
            },
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

pub fn parse_polynomial(ring: &Ring, text: &str) -> Result<Polynomial> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(error_at(text, 0, "empty polynomial"));
    }
    let mut p = Parser {
        src: text,
        ring,
        toks,
        pos: 0,
    };
    let result = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(result)
}

/// Parses a list of polynomials separated by newlines, commas or semicolons.
pub fn parse_polynomial_list(ring: &Ring, text: &str) -> Result<Vec<Polynomial>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(['\n', ',', ';']) {
        let trimmed = piece.trim();
        if !trimmed.is_empty() && !trimmed.starts_with('#') {
            match parse_polynomial(ring, piece) {
                Ok(p) => out.push(p),
                Err(Error::Parse {
                    column, message, ..
                }) => {
                    // rebase onto the whole input
                    let (line, col0) = position(text, offset);
                    return Err(Error::Parse {
                        line,
                        column: col0 + column - 1,
                        message,
                    });
                }
                Err(e) => return Err(e),
            }
        }
        offset += piece.len() + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_multiline_forms() {
        let r = Ring::grevlex(&["x0", "x1"]);
        let f = parse_polynomial(
            &r,
            "2 (x0^4+2 x0^2 x1^2+x1^4-2 x0^3 x1+2 x0 x1^3) (x0^2+x1^2)",
        )
        .unwrap();
        assert_eq!(f.total_degree(), 6);
        let g = parse_polynomial(&r, "(x0-x1)(x0+x1)").unwrap();
        assert_eq!(g.to_string(), "x0^2-x1^2");
    }

    #[test]
    fn error_positions() {
        let r = Ring::grevlex(&["x", "y"]);
        match parse_polynomial(&r, "x +\n  2*w") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_polynomial(&r, "x^").is_err());
        assert!(parse_polynomial(&r, "x/y").is_err());
        assert!(parse_polynomial(&r, "(x").is_err());
    }

    #[test]
    fn rational_coefficients() {
        let r = Ring::grevlex(&["x"]);
        let f = parse_polynomial(&r, "3/4*x - 1/2").unwrap();
        assert_eq!(f.to_string(), "3/4*x-1/2");
    }

    #[test]
    fn list_parsing() {
        let r = Ring::grevlex(&["x", "y"]);
        let v = parse_polynomial_list(&r, "x+y\n# comment\nx*y, y^2\n").unwrap();
        assert_eq!(v.len(), 3);
    }
}
