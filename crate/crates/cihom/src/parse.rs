//! Text form of polynomials: `3*x^2*y + y^3 - 2`, with `*` optional
//! between juxtaposed factors and `-` both unary and binary.

use crate::error::{Error, Result};
use crate::poly::{PolyRing, Polynomial};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str, line: usize) -> Self {
        Lexer { chars: src.chars().peekable(), line, col: 1 }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn tokens(mut self) -> Result<Vec<Spanned>> {
        let mut out = Vec::new();
        while let Some(&c) = self.chars.peek() {
            let (line, col) = (self.line, self.col);
            if c.is_whitespace() {
                self.bump();
                continue;
            }
            let tok = match c {
                '+' => {
                    self.bump();
                    Tok::Plus
                }
                '-' => {
                    self.bump();
                    Tok::Minus
                }
                '*' => {
                    self.bump();
                    Tok::Star
                }
                '^' => {
                    self.bump();
                    Tok::Caret
                }
                '(' => {
                    self.bump();
                    Tok::LParen
                }
                ')' => {
                    self.bump();
                    Tok::RParen
                }
                '0'..='9' => {
                    let mut n: u64 = 0;
                    while let Some(&d) = self.chars.peek() {
                        if let Some(v) = d.to_digit(10) {
                            n = n
                                .checked_mul(10)
                                .and_then(|n| n.checked_add(v as u64))
                                .ok_or(Error::SyntaxError {
                                    line,
                                    col,
                                    msg: "integer literal too large".into(),
                                })?;
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    Tok::Int(n)
                }
                c if c.is_alphabetic() || c == '_' => {
                    let mut s = String::new();
                    while let Some(&d) = self.chars.peek() {
                        if d.is_alphanumeric() || d == '_' {
                            s.push(d);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    Tok::Ident(s)
                }
                other => {
                    return Err(Error::SyntaxError {
                        line,
                        col,
                        msg: format!("unexpected character '{}'", other),
                    })
                }
            };
            out.push(Spanned { tok, line, col });
        }
        Ok(out)
    }
}

struct Parser<'r> {
    ring: &'r PolyRing,
    toks: Vec<Spanned>,
    pos: usize,
    end_line: usize,
}

impl<'r> Parser<'r> {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn err_here(&self, msg: impl Into<String>) -> Error {
        match self.peek() {
            Some(s) => Error::SyntaxError { line: s.line, col: s.col, msg: msg.into() },
            None => Error::SyntaxError { line: self.end_line, col: 0, msg: msg.into() },
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek().map(|s| &s.tok) == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = if self.eat(&Tok::Minus) {
            self.ring.neg(&self.term()?)
        } else {
            self.eat(&Tok::Plus);
            self.term()?
        };
        loop {
            if self.eat(&Tok::Plus) {
                let t = self.term()?;
                acc = self.ring.add(&acc, &t);
            } else if self.eat(&Tok::Minus) {
                let t = self.term()?;
                acc = self.ring.sub(&acc, &t);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(&Tok::Star) {
                let f = self.factor()?;
                acc = self.ring.mul(&acc, &f)?;
            } else if matches!(
                self.peek().map(|s| &s.tok),
                Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::LParen)
            ) {
                let f = self.factor()?;
                acc = self.ring.mul(&acc, &f)?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            let e = match self.peek().map(|s| s.tok.clone()) {
                Some(Tok::Int(n)) => {
                    self.pos += 1;
                    n
                }
                _ => return Err(self.err_here("expected integer exponent after '^'")),
            };
            let e: u32 = e
                .try_into()
                .map_err(|_| self.err_here("exponent too large"))?;
            return self.ring.pow(&base, e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let s = self.peek().ok_or_else(|| self.err_here("unexpected end of input"))?.clone();
        match s.tok {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(self.ring.constant(n))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                match self.ring.var_index(&name) {
                    Some(i) => Ok(self.ring.var(i)),
                    None => Err(Error::SyntaxError {
                        line: s.line,
                        col: s.col,
                        msg: format!("unknown variable '{}'", name),
                    }),
                }
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.err_here("expected ')'"));
                }
                Ok(inner)
            }
            Tok::Minus => {
                self.pos += 1;
                Ok(self.ring.neg(&self.atom()?))
            }
            _ => Err(Error::SyntaxError {
                line: s.line,
                col: s.col,
                msg: "expected number, variable or '('".into(),
            }),
        }
    }
}

/// Parse one polynomial. `line` seeds error positions when the source is a
/// slice of a larger file.
pub fn parse_polynomial(ring: &PolyRing, src: &str, line: usize) -> Result<Polynomial> {
    let toks = Lexer::new(src, line).tokens()?;
    if toks.is_empty() {
        return Err(Error::SyntaxError { line, col: 1, msg: "empty polynomial".into() });
    }
    let end_line = toks.last().map(|s| s.line).unwrap_or(line);
    let mut p = Parser { ring, toks, pos: 0, end_line };
    let poly = p.expr()?;
    if let Some(s) = p.peek() {
        return Err(Error::SyntaxError {
            line: s.line,
            col: s.col,
            msg: "trailing input after polynomial".into(),
        });
    }
    Ok(poly)
}

/// Parse a comma-separated list of polynomials.
pub fn parse_poly_list(ring: &PolyRing, src: &str, line: usize) -> Result<Vec<Polynomial>> {
    src.split(',')
        .map(|part| parse_polynomial(ring, part, line))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::Fp;
    use crate::monomial::MonomialOrder;

    fn ring() -> PolyRing {
        PolyRing::new(
            Fp::new(101).unwrap(),
            vec!["x".into(), "y".into(), "z".into()],
            MonomialOrder::Grevlex,
        )
        .unwrap()
    }

    #[test]
    fn parses_canonical_form() {
        let r = ring();
        let p = parse_polynomial(&r, "3*x^2*y + y^3 + 100", 1).unwrap();
        assert_eq!(r.format(&p), "3*x^2*y + y^3 + 100");
    }

    #[test]
    fn negatives_fold_into_field() {
        let r = ring();
        let p = parse_polynomial(&r, "x - y", 1).unwrap();
        assert_eq!(r.format(&p), "x + 100*y");
        let q = parse_polynomial(&r, "-x", 1).unwrap();
        assert_eq!(r.format(&q), "100*x");
    }

    #[test]
    fn juxtaposition_multiplies() {
        let r = ring();
        let a = parse_polynomial(&r, "2x y^2", 1).unwrap();
        let b = parse_polynomial(&r, "2*x*y^2", 1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parens_group() {
        let r = ring();
        let a = parse_polynomial(&r, "(x + y)^2", 1).unwrap();
        let b = parse_polynomial(&r, "x^2 + 2*x*y + y^2", 1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn error_carries_position() {
        let r = ring();
        match parse_polynomial(&r, "x + w", 7) {
            Err(Error::SyntaxError { line, col, msg }) => {
                assert_eq!(line, 7);
                assert_eq!(col, 5);
                assert!(msg.contains('w'));
            }
            other => panic!("expected syntax error, got {:?}", other),
        }
    }

    #[test]
    fn rejects_garbage() {
        let r = ring();
        assert!(parse_polynomial(&r, "x +", 1).is_err());
        assert!(parse_polynomial(&r, "", 1).is_err());
        assert!(parse_polynomial(&r, "x ^ y", 1).is_err());
        assert!(parse_polynomial(&r, "(x", 1).is_err());
        assert!(parse_polynomial(&r, "x @ y", 1).is_err());
    }

    #[test]
    fn list_parsing() {
        let r = ring();
        let ps = parse_poly_list(&r, "x^2, y^2 - x*z, z", 1).unwrap();
        assert_eq!(ps.len(), 3);
        assert_eq!(r.format(&ps[2]), "z");
    }
}
